#pragma once

#include <cstddef>
#include <vector>

#include "wiman/coefficient_rule.hpp"
#include "wiman/radius.hpp"
#include "wiman/series.hpp"
#include "wiman/signs.hpp"

namespace wiman {

struct TorusGridSpec {
    int oversample = 4;        // grid points per axis per polynomial degree
    int refine_steps = 20;     // coordinate-ascent rounds after the grid max
    double refine_tol = 1e-10;
    std::size_t max_padded_entries = std::size_t{1} << 26;

    void validate() const {
        if (oversample < 2) throw Error("TorusGridSpec: oversample must be >= 2");
        if (refine_steps < 0) throw Error("TorusGridSpec: refine_steps must be >= 0");
        if (!(refine_tol > 0.0)) throw Error("TorusGridSpec: refine_tol must be > 0");
    }
};

struct TorusMaxResult {
    double ln_max = 0.0;             // ln of the refined torus maximum
    std::vector<double> argmax_psi;  // angles in [0, 2pi)
    double grid_ln_max = 0.0;        // before refinement
    double tail_log_bound = kNegInf; // truncation spec's tail plus dropped-term bound
};

// Truncation spec covering a finite Table rule exactly.
TruncationSpec table_truncation(const CoefficientRule& rule);

// Maximum of |sum_{n} a_n X_n r^n e^{i n.psi}| over the p-torus, via a
// zero-padded multidimensional FFT followed by per-axis golden-section
// coordinate ascent.  Coefficients are normalized by mu_f(r) before the
// transform; the result is reassembled in log-space.
TorusMaxResult torus_max(const CoefficientRule& rule, const SignRealization& signs,
                         const RadiusVector& r, const TruncationSpec& trunc,
                         const TorusGridSpec& grid);

// |Q - S| / S where S = sum |a_n|^2 r^{2n} (truncated) and Q is the exact
// quadrature of |f(r e^{i theta})|^2 over an equispaced grid (p = 1,
// unit-modulus signs).
double parseval_residual(const CoefficientRule& rule, const SignRealization& signs,
                         const RadiusVector& r, const TruncationSpec& trunc);

} // namespace wiman
