#include "wiman/torus.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "wiman/fft.hpp"
#include "wiman/numeric.hpp"

namespace wiman {

namespace {

constexpr double kSupportDropNats = 50.0; // per-axis amplitude support cutoff

struct AxisSupport {
    std::vector<double> log_terms; // phi_j(n) + n ln r_j for n = 0..cap_e
    double max_log = kNegInf;
    double tail_log = kNegInf;     // bound on sum of the cut-off axis terms
};

// Per-axis log-magnitude profiles truncated where they fall 50 nats below
// their peak (or at the caller's cap, whichever is first).
AxisSupport axis_support(const CoefficientRule& rule, int axis, double log_r,
                         std::int64_t cap) {
    AxisSupport s;
    if (log_r == kNegInf) {
        s.log_terms = {rule.axis_log_coeff(axis, 0.0)};
        s.max_log = s.log_terms[0];
        return s;
    }
    auto term = [&](std::int64_t n) {
        return rule.axis_log_coeff(axis, static_cast<double>(n)) +
               static_cast<double>(n) * log_r;
    };
    // peak first so the cutoff is relative to it
    std::int64_t peak = 0;
    {
        std::int64_t hi = 1;
        while (term(hi * 2) > term(hi)) {
            hi *= 2;
            if (hi > (std::int64_t{1} << 61))
                throw ConvergenceError("torus_max: axis terms do not decay");
        }
        hi = std::min(hi * 2, cap);
        std::int64_t lo = 0;
        while (hi - lo > 32) {
            std::int64_t m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            if (term(m1) < term(m2)) lo = m1 + 1;
            else hi = m2;
        }
        double best = kNegInf;
        for (std::int64_t n = lo; n <= hi; ++n)
            if (term(n) > best) { best = term(n); peak = n; }
        s.max_log = best;
    }
    std::int64_t n = 0;
    for (;; ++n) {
        double v = term(n);
        s.log_terms.push_back(v);
        if (n >= cap) break;
        if (n > peak && v < s.max_log - kSupportDropNats) break;
        if (static_cast<std::int64_t>(s.log_terms.size()) > kTermScanCap)
            throw ConvergenceError("torus_max: axis support exceeds term cap");
    }
    if (n < cap) {
        double rho = term(n + 1) - term(n);
        if (rho < 0.0)
            s.tail_log = term(n + 1) - std::log(-std::expm1(rho));
    }
    return s;
}

std::vector<AxisSupport> build_supports(const CoefficientRule& rule, const RadiusVector& r,
                                        const TruncationSpec& trunc) {
    const int p = rule.dim();
    std::vector<AxisSupport> sup;
    sup.reserve(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
        std::int64_t cap = trunc.per_axis_caps.empty()
                               ? (std::int64_t{1} << 61)
                               : trunc.per_axis_caps[static_cast<std::size_t>(j)];
        if (rule.kind() == RuleKind::Table) {
            // finite support: the rectangle is the table's bounding box
            std::int64_t axis_max = 0;
            for (const auto& [idx, lm] : rule.entries()) {
                (void)lm;
                axis_max = std::max(axis_max, idx[static_cast<std::size_t>(j)]);
            }
            AxisSupport s;
            s.log_terms.assign(static_cast<std::size_t>(std::min(cap, axis_max)) + 1, kNegInf);
            sup.push_back(std::move(s));
            continue;
        }
        sup.push_back(axis_support(rule, j, r.log_radius(j), cap));
    }
    return sup;
}

// ln of the sum of |a_n| r^n over indices outside the effective rectangle
double rectangle_cut_bound(const std::vector<AxisSupport>& sup) {
    const int p = static_cast<int>(sup.size());
    std::vector<double> full(static_cast<std::size_t>(p)); // ln sum over kept axis terms
    for (int j = 0; j < p; ++j) {
        OnlineLogSum acc;
        for (double v : sup[static_cast<std::size_t>(j)].log_terms) acc.add(v);
        full[static_cast<std::size_t>(j)] = acc.value();
    }
    OnlineLogSum out;
    for (int j = 0; j < p; ++j) {
        double t = sup[static_cast<std::size_t>(j)].tail_log;
        if (t == kNegInf) continue;
        for (int i = 0; i < p; ++i)
            if (i != j) t += full[static_cast<std::size_t>(i)];
        out.add(t);
    }
    return out.value();
}

struct CoeffGrid {
    std::vector<std::complex<double>> values; // dense row-major rectangle
    std::vector<std::size_t> shape;           // cap_e_j + 1 per axis
    double ln_mu = 0.0;
    double dropped_log = kNegInf;
};

// Normalized coefficients c_n = X_n exp(ln|a_n| + n.ln r - ln mu) on the
// effective rectangle, degree-limited by ceil(2 d_1).
CoeffGrid fill_coefficients(const CoefficientRule& rule, const SignRealization& signs,
                            const RadiusVector& r, const TruncationSpec& trunc,
                            const std::vector<AxisSupport>& sup, double ln_mu) {
    const int p = rule.dim();
    CoeffGrid g;
    g.ln_mu = ln_mu;
    g.shape.resize(static_cast<std::size_t>(p));
    std::size_t total = 1;
    for (int j = 0; j < p; ++j) {
        g.shape[static_cast<std::size_t>(j)] = sup[static_cast<std::size_t>(j)].log_terms.size();
        total *= g.shape[static_cast<std::size_t>(j)];
    }
    g.values.assign(total, {0.0, 0.0});

    const double degree_limit =
        trunc.total_degree_d1 > 0 ? std::ceil(2.0 * trunc.total_degree_d1)
                                  : std::numeric_limits<double>::infinity();

    if (rule.kind() == RuleKind::Table) {
        for (const auto& [idx, logmag] : rule.entries()) {
            double lt = logmag;
            std::size_t flat = 0;
            bool inside = true;
            std::int64_t deg = 0;
            for (int j = 0; j < p; ++j) {
                auto nj = idx[static_cast<std::size_t>(j)];
                deg += nj;
                if (nj >= static_cast<std::int64_t>(g.shape[static_cast<std::size_t>(j)])) {
                    inside = false;
                    break;
                }
                if (nj > 0) {
                    if (r.log_radius(j) == kNegInf) { lt = kNegInf; break; }
                    lt += static_cast<double>(nj) * r.log_radius(j);
                }
                flat = flat * g.shape[static_cast<std::size_t>(j)] + static_cast<std::size_t>(nj);
            }
            if (!inside || lt == kNegInf || static_cast<double>(deg) > degree_limit) continue;
            double amp = std::exp(lt - ln_mu);
            g.values[flat] = amp * signs.value(MultiIndex{idx});
        }
        return g;
    }

    // odometer over the rectangle, tracking partial log terms and degree
    std::vector<std::int64_t> n(static_cast<std::size_t>(p), 0);
    MultiIndex mi;
    mi.entries.resize(static_cast<std::size_t>(p));
    std::vector<double> partial(static_cast<std::size_t>(p) + 1, 0.0);
    std::size_t flat = 0;
    for (;;) {
        // partial[j] = sum of axis log-terms for axes < j
        for (int j = 0; j < p; ++j)
            partial[static_cast<std::size_t>(j) + 1] =
                partial[static_cast<std::size_t>(j)] +
                sup[static_cast<std::size_t>(j)]
                    .log_terms[static_cast<std::size_t>(n[static_cast<std::size_t>(j)])];
        std::int64_t deg = 0;
        for (int j = 0; j < p; ++j) deg += n[static_cast<std::size_t>(j)];
        double lt = partial[static_cast<std::size_t>(p)];
        if (static_cast<double>(deg) <= degree_limit && lt - ln_mu > -745.0) {
            for (int j = 0; j < p; ++j) mi.entries[static_cast<std::size_t>(j)] = n[static_cast<std::size_t>(j)];
            g.values[flat] = std::exp(lt - ln_mu) * signs.value(mi);
        }
        // advance odometer (last axis fastest, matching row-major flat)
        int axis = p - 1;
        for (; axis >= 0; --axis) {
            if (++n[static_cast<std::size_t>(axis)] <
                static_cast<std::int64_t>(g.shape[static_cast<std::size_t>(axis)]))
                break;
            n[static_cast<std::size_t>(axis)] = 0;
        }
        if (axis < 0) break;
        flat = 0;
        for (int j = 0; j < p; ++j)
            flat = flat * g.shape[static_cast<std::size_t>(j)] +
                   static_cast<std::size_t>(n[static_cast<std::size_t>(j)]);
    }
    return g;
}

// |sum_m B[m] e^{i m psi}| with incremental rotation
double line_modulus(const std::vector<std::complex<double>>& B, double psi) {
    std::complex<double> w(std::cos(psi), std::sin(psi));
    std::complex<double> ph(1.0, 0.0);
    std::complex<double> acc(0.0, 0.0);
    for (const auto& b : B) {
        acc += b * ph;
        ph *= w;
    }
    return std::abs(acc);
}

} // namespace

TruncationSpec table_truncation(const CoefficientRule& rule) {
    if (rule.kind() != RuleKind::Table)
        throw Error("table_truncation: rule is not a Table");
    TruncationSpec t;
    std::vector<std::int64_t> caps(static_cast<std::size_t>(rule.dim()), 0);
    std::int64_t max_deg = 0;
    for (const auto& [idx, logmag] : rule.entries()) {
        (void)logmag;
        std::int64_t deg = 0;
        for (int j = 0; j < rule.dim(); ++j) {
            caps[static_cast<std::size_t>(j)] =
                std::max(caps[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(j)]);
            deg += idx[static_cast<std::size_t>(j)];
        }
        max_deg = std::max(max_deg, deg);
    }
    t.total_degree_d = std::max<double>(1.0, static_cast<double>(max_deg));
    t.total_degree_d1 = t.total_degree_d;
    t.per_axis_caps = std::move(caps);
    t.tail_log_estimate = kNegInf; // nothing is discarded
    return t;
}

TorusMaxResult torus_max(const CoefficientRule& rule, const SignRealization& signs,
                         const RadiusVector& r, const TruncationSpec& trunc,
                         const TorusGridSpec& grid) {
    grid.validate();
    if (r.dim() != rule.dim()) throw Error("torus_max: radius dimension mismatch");
    const int p = rule.dim();

    const double ln_mu = maximal_term(rule, r).ln_mu;
    auto sup = build_supports(rule, r, trunc);

    std::vector<std::size_t> extents(static_cast<std::size_t>(p));
    std::size_t padded = 1;
    for (int j = 0; j < p; ++j) {
        std::size_t m = sup[static_cast<std::size_t>(j)].log_terms.size();
        extents[static_cast<std::size_t>(j)] =
            next_pow2(std::max<std::size_t>(static_cast<std::size_t>(grid.oversample) * m, 2));
        padded *= extents[static_cast<std::size_t>(j)];
    }
    if (padded > grid.max_padded_entries)
        throw BudgetError(padded, grid.max_padded_entries, "torus_max padded array");

    CoeffGrid cg = fill_coefficients(rule, signs, r, trunc, sup, ln_mu);

    // zero-padded transform
    std::vector<std::complex<double>> padded_arr(padded, {0.0, 0.0});
    {
        std::vector<std::size_t> n(static_cast<std::size_t>(p), 0);
        std::size_t src = 0;
        const std::size_t total = cg.values.size();
        for (; src < total; ++src) {
            std::size_t dst = 0;
            for (int j = 0; j < p; ++j)
                dst = dst * extents[static_cast<std::size_t>(j)] + n[static_cast<std::size_t>(j)];
            padded_arr[dst] = cg.values[src];
            for (int j = p - 1; j >= 0; --j) {
                if (++n[static_cast<std::size_t>(j)] < cg.shape[static_cast<std::size_t>(j)]) break;
                n[static_cast<std::size_t>(j)] = 0;
            }
        }
    }
    fft_nd(padded_arr, extents);

    std::size_t best_flat = 0;
    double best_sq = -1.0;
    for (std::size_t i = 0; i < padded_arr.size(); ++i) {
        double v = std::norm(padded_arr[i]);
        if (v > best_sq) { best_sq = v; best_flat = i; }
    }
    padded_arr.clear();
    padded_arr.shrink_to_fit();

    // DFT bin k corresponds to psi = 2 pi (G - k) / G (the transform kernel
    // is e^{-i n theta})
    std::vector<double> psi(static_cast<std::size_t>(p));
    {
        std::size_t rem = best_flat;
        for (int j = p - 1; j >= 0; --j) {
            std::size_t G = extents[static_cast<std::size_t>(j)];
            std::size_t k = rem % G;
            rem /= G;
            psi[static_cast<std::size_t>(j)] =
                2.0 * std::numbers::pi * static_cast<double>((G - k) % G) / static_cast<double>(G);
        }
    }

    double grid_val = std::sqrt(best_sq);
    double best_val = grid_val;

    // coordinate ascent: per-axis collapse to a 1-D trigonometric
    // polynomial, then golden-section inside the grid cell
    std::vector<std::vector<std::complex<double>>> phase(static_cast<std::size_t>(p));
    auto rebuild_phase = [&](int axis) {
        auto& ph = phase[static_cast<std::size_t>(axis)];
        std::size_t m = cg.shape[static_cast<std::size_t>(axis)];
        ph.resize(m);
        std::complex<double> w(std::cos(psi[static_cast<std::size_t>(axis)]),
                               std::sin(psi[static_cast<std::size_t>(axis)]));
        std::complex<double> cur(1.0, 0.0);
        for (std::size_t i = 0; i < m; ++i) { ph[i] = cur; cur *= w; }
    };
    for (int j = 0; j < p; ++j) rebuild_phase(j);

    std::vector<std::complex<double>> B;
    for (int round = 0; round < grid.refine_steps; ++round) {
        double round_start = best_val;
        for (int axis = 0; axis < p; ++axis) {
            const std::size_t m_axis = cg.shape[static_cast<std::size_t>(axis)];
            B.assign(m_axis, {0.0, 0.0});
            // collapse all other axes at their current angles
            std::vector<std::size_t> n(static_cast<std::size_t>(p), 0);
            for (std::size_t src = 0; src < cg.values.size(); ++src) {
                std::complex<double> v = cg.values[src];
                if (v != std::complex<double>{0.0, 0.0}) {
                    for (int j = 0; j < p; ++j)
                        if (j != axis)
                            v *= phase[static_cast<std::size_t>(j)]
                                      [n[static_cast<std::size_t>(j)]];
                    B[n[static_cast<std::size_t>(axis)]] += v;
                }
                for (int j = p - 1; j >= 0; --j) {
                    if (++n[static_cast<std::size_t>(j)] <
                        cg.shape[static_cast<std::size_t>(j)])
                        break;
                    n[static_cast<std::size_t>(j)] = 0;
                }
            }
            const double half_cell =
                2.0 * std::numbers::pi /
                static_cast<double>(extents[static_cast<std::size_t>(axis)]);
            double center = psi[static_cast<std::size_t>(axis)];
            double best_psi = center;
            double best_here = line_modulus(B, center);
            auto f = [&](double x) {
                double v = line_modulus(B, x);
                if (v > best_here) { best_here = v; best_psi = x; }
                return v;
            };
            golden_section_max(f, center - half_cell, center + half_cell, grid.refine_tol);
            psi[static_cast<std::size_t>(axis)] = best_psi;
            rebuild_phase(axis);
            if (best_here > best_val) best_val = best_here;
        }
        if (best_val - round_start < grid.refine_tol * std::max(1.0, best_val)) break;
    }

    TorusMaxResult res;
    res.grid_ln_max = ln_mu + std::log(grid_val);
    res.ln_max = ln_mu + std::log(std::max(best_val, grid_val));
    res.argmax_psi.resize(static_cast<std::size_t>(p));
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (int j = 0; j < p; ++j) {
        double a = std::fmod(psi[static_cast<std::size_t>(j)], two_pi);
        if (a < 0) a += two_pi;
        res.argmax_psi[static_cast<std::size_t>(j)] = a;
    }
    res.tail_log_bound = log_add(trunc.tail_log_estimate, rectangle_cut_bound(sup));
    return res;
}

double parseval_residual(const CoefficientRule& rule, const SignRealization& signs,
                         const RadiusVector& r, const TruncationSpec& trunc) {
    if (rule.dim() != 1) throw Error("parseval_residual: p must be 1");
    if (r.dim() != 1) throw Error("parseval_residual: radius dimension mismatch");

    const double ln_mu = maximal_term(rule, r).ln_mu;
    auto sup = build_supports(rule, r, trunc);
    CoeffGrid cg = fill_coefficients(rule, signs, r, trunc, sup, ln_mu);
    const std::size_t N1 = cg.values.size(); // N + 1 coefficients

    double S = 0.0;
    for (const auto& c : cg.values) S += std::norm(c);
    if (S == 0.0) return 0.0;

    std::size_t G = next_pow2(2 * N1);
    if (G < 2 * (N1 - 1) + 1)
        throw Error("parseval_residual: quadrature grid smaller than 2N+1");
    std::vector<std::complex<double>> buf(G, {0.0, 0.0});
    std::copy(cg.values.begin(), cg.values.end(), buf.begin());
    fft_inplace(buf);
    double Q = 0.0;
    for (const auto& v : buf) Q += std::norm(v);
    Q /= static_cast<double>(G);

    return std::abs(Q - S) / S;
}

} // namespace wiman
