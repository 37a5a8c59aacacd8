#include "wiman/log_measure.hpp"

#include <cmath>
#include <vector>

#include <nlohmann/json.hpp>

namespace wiman {

double box_log_measure(const Box& b) {
    double m = 1.0;
    for (int j = 0; j < b.dim(); ++j)
        m *= b.hi.log_inv_gap(j) - b.lo.log_inv_gap(j);
    return m;
}

LogMeasureEstimate
region_log_measure(const std::function<bool(const RadiusVector&)>& predicate,
                   const Box& domain, int cells_per_axis) {
    if (cells_per_axis < 2) throw Error("region_log_measure: cells_per_axis must be >= 2");
    const int p = domain.dim();

    // per-axis cell edges, uniform in u = ln(1/(1-r))
    std::vector<double> u_lo(static_cast<std::size_t>(p)), du(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
        u_lo[static_cast<std::size_t>(j)] = domain.lo.log_inv_gap(j);
        du[static_cast<std::size_t>(j)] =
            (domain.hi.log_inv_gap(j) - u_lo[static_cast<std::size_t>(j)]) / cells_per_axis;
    }
    const double cell_measure = [&] {
        double m = 1.0;
        for (int j = 0; j < p; ++j) m *= du[static_cast<std::size_t>(j)];
        return m;
    }();

    LogMeasureEstimate est;
    est.method = MeasureMethod::Grid;

    std::vector<int> cell(static_cast<std::size_t>(p), 0);
    std::vector<double> mid(static_cast<std::size_t>(p));
    for (;;) {
        for (int j = 0; j < p; ++j) {
            double u = u_lo[static_cast<std::size_t>(j)] +
                       (cell[static_cast<std::size_t>(j)] + 0.5) * du[static_cast<std::size_t>(j)];
            mid[static_cast<std::size_t>(j)] = 1.0 - std::exp(-u);
        }
        ++est.grid_cells;
        try {
            if (predicate(RadiusVector(mid))) est.value += cell_measure;
        } catch (const std::exception& e) {
            std::string where;
            for (int j = 0; j < p; ++j)
                where += (j ? "," : "(") + std::to_string(mid[static_cast<std::size_t>(j)]);
            throw Error("region_log_measure: predicate failed at " + where + "): " + e.what());
        }
        int axis = p - 1;
        for (; axis >= 0; --axis) {
            if (++cell[static_cast<std::size_t>(axis)] < cells_per_axis) break;
            cell[static_cast<std::size_t>(axis)] = 0;
        }
        if (axis < 0) break;
    }
    return est;
}

std::string LogMeasureEstimate::to_json() const {
    nlohmann::json j;
    j["value"] = value;
    j["method"] = method == MeasureMethod::ClosedForm ? "closed_form"
                  : method == MeasureMethod::Grid     ? "grid"
                                                      : "quadrature";
    j["cells"] = grid_cells;
    j["witness"] = lower_bound_witness;
    return j.dump();
}

} // namespace wiman
