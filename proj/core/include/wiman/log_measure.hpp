#pragma once

#include <functional>
#include <string>

#include "wiman/radius.hpp"

namespace wiman {

// Axis-aligned box [lo, hi] inside [0,1)^p.
struct Box {
    RadiusVector lo;
    RadiusVector hi;

    Box(RadiusVector l, RadiusVector h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo.dim() != hi.dim()) throw Error("Box: dimension mismatch");
        for (int j = 0; j < lo.dim(); ++j)
            if (lo.radius(j) > hi.radius(j)) throw Error("Box: lo > hi on axis");
    }

    int dim() const { return lo.dim(); }
};

enum class MeasureMethod { ClosedForm, Grid, Quadrature };

struct LogMeasureEstimate {
    double value = 0.0;
    MeasureMethod method = MeasureMethod::ClosedForm;
    std::int64_t grid_cells = 0;
    double lower_bound_witness = 0.0;

    std::string to_json() const;
};

// Exact logarithmic measure of a box: prod_j ln((1-lo_j)/(1-hi_j)).
double box_log_measure(const Box& b);

// Midpoint-rule estimate of the logarithmic measure of {r : predicate(r)}
// inside the domain box.  Cells are uniform in ln(1/(1-r)) per axis (the
// measure density is 1/(1-r), so uniform-in-r grids waste cells away
// from 1).
LogMeasureEstimate
region_log_measure(const std::function<bool(const RadiusVector&)>& predicate,
                   const Box& domain, int cells_per_axis);

} // namespace wiman
