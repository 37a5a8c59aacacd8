#include "wiman/bounds.hpp"

#include <cmath>

#include "wiman/numeric.hpp"
#include "wiman/series.hpp"

namespace wiman {

BoundForm bound_form_from_name(const std::string& name) {
    if (name == "disc-det") return BoundForm::DiscDet;
    if (name == "disc-det-lower") return BoundForm::DiscDetLower;
    if (name == "disc-random") return BoundForm::DiscRandom;
    if (name == "disc-random-lower") return BoundForm::DiscRandomLower;
    if (name == "poly-det") return BoundForm::PolyDet;
    if (name == "poly-random") return BoundForm::PolyRandom;
    if (name == "poly-random-lower") return BoundForm::PolyRandomLower;
    throw Error("unknown bound form '" + name + "'");
}

std::string bound_form_name(BoundForm f) {
    switch (f) {
        case BoundForm::DiscDet: return "disc-det";
        case BoundForm::DiscDetLower: return "disc-det-lower";
        case BoundForm::DiscRandom: return "disc-random";
        case BoundForm::DiscRandomLower: return "disc-random-lower";
        case BoundForm::PolyDet: return "poly-det";
        case BoundForm::PolyRandom: return "poly-random";
        case BoundForm::PolyRandomLower: return "poly-random-lower";
    }
    return "?";
}

bool is_lower_form(BoundForm f) {
    return f == BoundForm::DiscDetLower || f == BoundForm::DiscRandomLower ||
           f == BoundForm::PolyRandomLower;
}

bool is_disc_form(BoundForm f) {
    return f == BoundForm::DiscDet || f == BoundForm::DiscDetLower ||
           f == BoundForm::DiscRandom || f == BoundForm::DiscRandomLower;
}

double wiman_functional(BoundForm form, const BoundParams& params, double ln_mu,
                        const RadiusVector& r, bool* clamped) {
    if (params.delta < 0.0) throw Error("wiman_functional: delta must be >= 0");
    if (is_lower_form(form) && !(params.lower_constant_C > 0.0))
        throw Error("wiman_functional: C must be > 0");
    if (is_disc_form(form) && r.dim() != 1)
        throw Error("wiman_functional: disc form requires p = 1");

    const int p = r.dim();
    const double d = params.delta;
    const double sum_gaps = r.total_log_inv_gap();

    // ln L with L = ln{mu prod 1/(1-r_j)}, clamped to 1 below e
    double L = ln_mu + sum_gaps;
    bool flag = false;
    if (L < 1.0) { L = 1.0; flag = true; }
    if (clamped) *clamped = flag;
    const double lnL = std::log(L);
    const double lnC = is_lower_form(form) ? std::log(params.lower_constant_C) : 0.0;

    switch (form) {
        case BoundForm::DiscDet:
            return ln_mu + (1.0 + d) * sum_gaps + (0.5 + d) * lnL;
        case BoundForm::DiscDetLower:
            return lnC + ln_mu + sum_gaps + 0.5 * lnL;
        case BoundForm::DiscRandom:
            return ln_mu + (0.25 + d) * (2.0 * sum_gaps + lnL);
        case BoundForm::DiscRandomLower:
            return lnC + ln_mu + 0.25 * (2.0 * sum_gaps + lnL);
        case BoundForm::PolyDet:
            return ln_mu + (1.0 + d) * (sum_gaps + (p / 2.0) * lnL);
        case BoundForm::PolyRandom:
            return ln_mu + (1.0 + d) * (0.5 * sum_gaps + (p / 4.0) * lnL);
        case BoundForm::PolyRandomLower:
            return lnC + ln_mu + 0.5 * sum_gaps + (p / 4.0) * lnL;
    }
    throw Error("wiman_functional: bad form");
}

BoundReport ratio_report(BoundForm form, const BoundParams& params, double ln_mu,
                         double ln_M, const RadiusVector& r) {
    BoundReport rep;
    rep.form = form;
    rep.delta = params.delta;
    rep.C = params.lower_constant_C;
    rep.ln_mu = ln_mu;
    rep.ln_M = ln_M;
    rep.ln_bound = wiman_functional(form, params, ln_mu, r, &rep.clamp_flag);
    rep.ln_ratio = ln_M - rep.ln_bound;
    return rep;
}

DerivativeCheck log_derivative_check(const CoefficientRule& rule, const RadiusVector& r,
                                     int axis, double delta, double h) {
    const int p = r.dim();
    if (axis < 0 || axis >= p) throw Error("log_derivative_check: axis out of range");
    double min_gap = 1.0;
    for (int j = 0; j < p; ++j) min_gap = std::min(min_gap, 1.0 - r.radius(j));
    if (!(h > 0.0) || h >= min_gap / 4.0)
        throw Error("log_derivative_check: need 0 < h < min_j(1-r_j)/4");

    auto shifted = [&](double dr) {
        std::vector<double> rr = r.radii();
        rr[static_cast<std::size_t>(axis)] += dr;
        return RadiusVector(std::move(rr));
    };
    constexpr double tol = 1e-13;
    const double up = sum_modulus(rule, shifted(+h), tol);
    const double dn = sum_modulus(rule, shifted(-h), tol);

    DerivativeCheck out;
    out.lhs = (up - dn) / (2.0 * h);
    const double lnM = sum_modulus(rule, r, tol);
    double rhs = std::pow(lnM, 1.0 + delta) / (1.0 - r.radius(axis));
    for (int j = 0; j < p; ++j)
        if (j != axis) rhs *= std::pow(1.0 / (1.0 - r.radius(j)), delta);
    out.rhs = rhs;
    out.holds = out.lhs <= out.rhs;
    return out;
}

} // namespace wiman
