#pragma once

#include <utility>
#include <vector>

#include "wiman/log_measure.hpp"
#include "wiman/radius.hpp"

namespace wiman {

struct Check2sResult {
    bool holds = false;
    double lhs = 0.0; // g^{-1}(3 g(t)) - g^{-1}(g(t)/3)
    double rhs = 0.0; // 1 - g^{-1}(3 g(t))
};

// The sharpness construction around f0(tau) = sum e^{sqrt(k)/2} tau^k:
// g(t) = ln(mu_{f0}(t) / (1-t)) on (1/2, 1), its inverse, the near-diagonal
// band (x(r1), y(r1)), and the log-measure of the witness set E*.
//
// g is tabulated once on a grid geometric in 1-t; all queries afterwards
// are read-only.
class SharpnessProfile {
public:
    explicit SharpnessProfile(double inverse_tol = 1e-10);

    double inverse_tol() const { return inverse_tol_; }

    // t in (1/2, 1)
    double g(double t) const;

    // monotone bisection; throws on bracket failure (v below/above range)
    double g_inverse(double v, double tol) const;
    double g_inverse(double v) const { return g_inverse(v, inverse_tol_); }

    Check2sResult check_2s(double t) const;

    // x(r1) = g^{-1}(g(r1)/3), y(r1) = g^{-1}(3 g(r1)); x < r1 < y
    std::pair<double, double> estar_slice(double t_star, double r1) const;

    // integral over r1 in (t_star, upper) of
    // (ln((1-x)/(1-y)))^{p-1} dr1/(1-r1), by Simpson on the ln(1/(1-r1))
    // scale; the witness is the paper-style floor (ln 2)^{p-1} per unit of
    // ln(1/(1-r1))
    LogMeasureEstimate estar_log_measure(int p, double t_star, double upper, int cells) const;

    // smallest t = 1 - 2^{-k} (k ascending) where (2s) holds
    double default_t_star() const;

private:
    double inverse_tol_;
    std::vector<double> u_grid_; // u = ln(1/(1-t))
    std::vector<double> g_grid_;
};

} // namespace wiman
