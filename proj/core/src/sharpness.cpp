#include "wiman/sharpness.hpp"

#include <algorithm>
#include <cmath>

#include "wiman/series.hpp"

namespace wiman {

namespace {

const CoefficientRule& f0_rule() {
    static const CoefficientRule rule = CoefficientRule::sqrt_half();
    return rule;
}

double g_direct(double t) {
    if (!(t > 0.5 && t < 1.0)) throw Error("g: t must lie in (1/2, 1)");
    RadiusVector r({t});
    return maximal_term(f0_rule(), r).ln_mu + r.log_inv_gap(0);
}

constexpr double kUMin = 0.7985076962177716; // u(0.55)
constexpr double kUMax = 18.0218257740;      // u(1 - 2^-26)
constexpr double kUStep = 0.005;

} // namespace

SharpnessProfile::SharpnessProfile(double inverse_tol) : inverse_tol_(inverse_tol) {
    if (!(inverse_tol > 0.0)) throw Error("SharpnessProfile: inverse_tol must be > 0");
    const int n = static_cast<int>((kUMax - kUMin) / kUStep) + 2;
    u_grid_.reserve(static_cast<std::size_t>(n));
    g_grid_.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double u = std::min(kUMin + i * kUStep, kUMax);
        u_grid_.push_back(u);
        g_grid_.push_back(g_direct(1.0 - std::exp(-u)));
        if (u == kUMax) break;
    }
}

double SharpnessProfile::g(double t) const { return g_direct(t); }

double SharpnessProfile::g_inverse(double v, double tol) const {
    if (!(tol > 0.0)) throw Error("g_inverse: tol must be > 0");
    if (v < g_grid_.front())
        throw Error("g_inverse: value " + std::to_string(v) + " below range (bracket failure)");
    if (v > g_grid_.back())
        throw Error("g_inverse: value " + std::to_string(v) + " above tabulated range");

    auto it = std::lower_bound(g_grid_.begin(), g_grid_.end(), v);
    std::size_t hi_i = static_cast<std::size_t>(it - g_grid_.begin());
    std::size_t lo_i = hi_i == 0 ? 0 : hi_i - 1;

    double ulo = u_grid_[lo_i], uhi = u_grid_[hi_i];
    for (int i = 0; i < 200; ++i) {
        double um = 0.5 * (ulo + uhi);
        if (um == ulo || um == uhi) break;
        double gm = g_direct(1.0 - std::exp(-um));
        if (std::abs(gm - v) <= tol) return 1.0 - std::exp(-um);
        (gm < v ? ulo : uhi) = um;
    }
    return 1.0 - std::exp(-0.5 * (ulo + uhi));
}

Check2sResult SharpnessProfile::check_2s(double t) const {
    const double gt = g(t);
    const double y = g_inverse(3.0 * gt);
    double x;
    try {
        x = g_inverse(gt / 3.0);
    } catch (const Error&) {
        // g(t)/3 below the attained range of g; read g^{-1} on all of R_+
        // as its left endpoint so far-from-1 queries still report values
        x = 1.0 - std::exp(-u_grid_.front());
    }
    Check2sResult res;
    res.lhs = y - x;
    res.rhs = 1.0 - y;
    res.holds = res.lhs > res.rhs;
    return res;
}

std::pair<double, double> SharpnessProfile::estar_slice(double t_star, double r1) const {
    if (!(t_star < r1 && r1 < 1.0))
        throw Error("estar_slice: need t_star < r1 < 1");
    const double gr = g(r1);
    double x = g_inverse(gr / 3.0);
    double y = g_inverse(3.0 * gr);
    if (!(x < r1 && r1 < y))
        throw Error("estar_slice: ordering violated (x < r1 < y expected)");
    return {x, y};
}

LogMeasureEstimate SharpnessProfile::estar_log_measure(int p, double t_star, double upper,
                                                       int cells) const {
    if (p < 1) throw Error("estar_log_measure: p must be >= 1");
    if (!(t_star < upper && upper < 1.0))
        throw Error("estar_log_measure: need t_star < upper < 1");
    if (cells < 2) throw Error("estar_log_measure: cells must be >= 2");
    if (cells % 2) ++cells;

    const double ua = -std::log1p(-t_star);
    const double ub = -std::log1p(-upper);
    const double step = (ub - ua) / cells;

    // integrand in u: (u(y) - u(x))^{p-1}, with the band taken directly so
    // the endpoints u(t_star), u(upper) are admissible
    auto w = [&](double u) {
        double r1 = 1.0 - std::exp(-u);
        const double gr = g(r1);
        double x;
        try {
            x = g_inverse(gr / 3.0);
        } catch (const Error&) {
            x = 1.0 - std::exp(-u_grid_.front());
        }
        double y = g_inverse(3.0 * gr);
        double band = -std::log1p(-y) + std::log1p(-x);
        return std::pow(band, p - 1);
    };

    double integral = w(ua) + w(ub);
    for (int i = 1; i < cells; ++i)
        integral += (i % 2 ? 4.0 : 2.0) * w(ua + step * i);
    integral *= step / 3.0;

    LogMeasureEstimate est;
    est.value = integral;
    est.method = MeasureMethod::Quadrature;
    est.grid_cells = cells;
    est.lower_bound_witness = std::pow(std::log(2.0), p - 1) * (ub - ua);
    return est;
}

double SharpnessProfile::default_t_star() const {
    for (int k = 2; k <= 24; ++k) {
        double t = 1.0 - std::ldexp(1.0, -k);
        try {
            g_inverse(g(t) / 3.0); // require a genuine bracket, not the clamp
            if (check_2s(t).holds) return t;
        } catch (const Error&) {
            // g(t)/3 below the tabulated range; keep moving toward 1
        }
    }
    throw Error("default_t_star: (2s) never held on the dyadic grid");
}

} // namespace wiman
