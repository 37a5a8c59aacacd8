#pragma once

#include <string>

#include "wiman/coefficient_rule.hpp"
#include "wiman/radius.hpp"

namespace wiman {

// The seven displayed Wiman-type functionals, all evaluated in log-space.
// Disc forms require p = 1; Poly forms take any p.
enum class BoundForm {
    DiscDet,         // mu/(1-r)^{1+d} * ln^{1/2+d}(mu/(1-r))
    DiscDetLower,    // mu/(1-r) * ln^{1/2}(mu/(1-r))
    DiscRandom,      // mu * ((1-r)^{-2} ln(mu/(1-r)))^{1/4+d}
    DiscRandomLower, // C * mu * ((1-r)^{-2} ln(mu/(1-r)))^{1/4}
    PolyDet,         // mu * (prod 1/(1-r_j) * ln^{p/2}{mu prod 1/(1-r_j)})^{1+d}
    PolyRandom,      // mu * (prod (1-r_j)^{-1/2} * ln^{p/4}{mu prod 1/(1-r_j)})^{1+d}
    PolyRandomLower, // C * mu * prod (1-r_j)^{-1/2} * ln^{p/4}{mu prod 1/(1-r_j)}
};

BoundForm bound_form_from_name(const std::string& name);
std::string bound_form_name(BoundForm f);
bool is_lower_form(BoundForm f);
bool is_disc_form(BoundForm f);

struct BoundParams {
    double delta = 0.0;          // >= 0
    double lower_constant_C = 1.0; // > 0, lower forms only
};

struct BoundReport {
    BoundForm form = BoundForm::DiscDet;
    double delta = 0.0;
    double C = 1.0;
    double ln_mu = 0.0;
    double ln_M = 0.0;     // measured maximum
    double ln_bound = 0.0;
    double ln_ratio = 0.0; // ln_M - ln_bound; > 0 witnesses a lower bound
    bool clamp_flag = false;
};

// ln of the chosen functional.  The inner logarithm ln{mu prod 1/(1-r_j)}
// is clamped to 1 (with a flag) when mu prod 1/(1-r_j) < e.
double wiman_functional(BoundForm form, const BoundParams& params, double ln_mu,
                        const RadiusVector& r, bool* clamped = nullptr);

BoundReport ratio_report(BoundForm form, const BoundParams& params, double ln_mu,
                         double ln_M, const RadiusVector& r);

struct DerivativeCheck {
    double lhs = 0.0; // finite-difference d/dr_s ln Mfrak
    double rhs = 0.0; // (ln Mfrak)^{1+d} / (1-r_s) * prod_{j!=s} (1-r_j)^{-d}
    bool holds = false;
};

// Finite-difference check of the log-derivative inequality along one axis.
DerivativeCheck log_derivative_check(const CoefficientRule& rule, const RadiusVector& r,
                                     int axis, double delta, double h);

} // namespace wiman
