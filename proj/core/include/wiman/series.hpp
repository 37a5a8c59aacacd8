#pragma once

#include <cstdint>
#include <vector>

#include "wiman/coefficient_rule.hpp"
#include "wiman/multi_index.hpp"
#include "wiman/numeric.hpp"
#include "wiman/radius.hpp"

namespace wiman {

// Hard cap on terms evaluated per series operation; exceeding it is an
// error, never silent truncation.
inline constexpr std::int64_t kTermScanCap = 100'000'000;

struct MaximalTerm {
    double ln_mu = 0.0;
    MultiIndex argmax;
};

// ln mu_f(r) = max_n { ln|a_n| + sum_j n_j ln r_j } and its argmax.
// Ties break toward the lexicographically smallest index.
MaximalTerm maximal_term(const CoefficientRule& rule, const RadiusVector& r);

// ln of sum_{|n|} |a_n| r^n via shell-wise log-sum-exp accumulation.
double sum_modulus(const CoefficientRule& rule, const RadiusVector& r, double rel_tol);

struct TruncationSpec {
    double total_degree_d = 0.0;   // d(r)
    double total_degree_d1 = 0.0;  // d_1(r): same display with e^2 mu inside the log
    std::vector<std::int64_t> per_axis_caps; // ceil(2 d_1) per axis
    double tail_log_estimate = kNegInf;      // filled by callers after clamping
    bool clamped_log = false;      // logarithm argument fell below e
    bool zero_delta = false;       // delta == 0 accepted with a warning
};

// The explicit total-degree cutoff d(r) (and d_1) past which the series
// tail is at most mu_f(r).
TruncationSpec truncation_degree(double ln_mu, const RadiusVector& r, double delta);

// ln of sum_{||n|| >= d} |a_n| r^n.  Exact shell summation where the scan
// is feasible; beyond the integer range it switches to a locally-geometric
// closed form (the decay per shell is essentially constant there).
double tail_sum(const CoefficientRule& rule, const RadiusVector& r, double d);

// ln of the shell sum sum_{||n||=s} |a_n| r^n, s real.  Exact enumeration
// for small shells, concave-exponent quadrature estimate for huge ones
// (product-form rules, p == 2 only).
double shell_log_sum(const CoefficientRule& rule, const RadiusVector& r, double s);

} // namespace wiman
