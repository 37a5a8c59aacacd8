#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wiman/bounds.hpp"
#include "wiman/coefficient_rule.hpp"
#include "wiman/numeric.hpp"
#include "wiman/signs.hpp"
#include "wiman/torus.hpp"

namespace wiman {

// Radius sweep along the dyadic schedule r = 1 - 2^{-k}, diagonal in the
// rule's dimension.
struct SweepConfig {
    CoefficientRule rule = CoefficientRule::sqrt_half();
    SignModel sign_model;
    double delta = 0.25;
    int k_min = 4;
    int k_max = 10;
    int realizations = 1;
    TorusGridSpec grid;      // carries the padded-array memory budget
    std::string output_path; // empty: no file written

    void validate() const;
};

struct SweepRow {
    int k = 0;
    double r = 0.0;
    double abscissa = 0.0; // sum_j ln(1/(1-r_j))
    double ln_mu = 0.0;
    double ln_M_median = 0.0;
    double ln_M_min = 0.0;
    double ln_M_max = 0.0;
    double ln_bound_det = 0.0;    // disc-det (p=1) or poly-det
    double ln_ratio_det = 0.0;    // median ln_M - ln_bound_det
    double ln_bound_random = 0.0; // disc-random (p=1) or poly-random
    double ln_ratio_random = 0.0;
    double tail_log_bound = kNegInf;
    bool clamped = false;   // inner logarithm clamped in a bound form
    bool truncated = false; // budget cut live coefficient mass

    std::vector<double> ln_M_all; // per-realization maxima; not serialized
};

struct SweepResult {
    std::vector<SweepRow> rows;
    bool truncated = false; // any row truncated by the budget
};

SweepResult run_sweep(const SweepConfig& cfg);

// Largest per-axis truncation cap whose zero-padded grid still fits the
// budget in grid.max_padded_entries.
std::int64_t axis_cap_budget(int p, const TorusGridSpec& grid);

// Fixed header:
// k,r,abscissa,ln_mu,ln_M_median,ln_M_min,ln_M_max,ln_bound_det,
// ln_ratio_det,ln_bound_random,ln_ratio_random,tail_log_bound,clamped,truncated
std::string sweep_rows_to_csv(const std::vector<SweepRow>& rows);

// Ordinary least squares of response(row) against row.abscissa; returns
// (slope, standard error).  Needs >= 4 rows and a non-degenerate abscissa.
std::pair<double, double>
fit_slope(const std::vector<SweepRow>& rows,
          const std::function<double(const SweepRow&)>& response);

} // namespace wiman
