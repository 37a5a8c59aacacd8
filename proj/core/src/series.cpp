#include "wiman/series.hpp"

#include <algorithm>
#include <cmath>

#include "wiman/numeric.hpp"

namespace wiman {

namespace {

// ln|a_n| + n ln r along one axis, extended to real x
inline double axis_term(const CoefficientRule& rule, int axis, double x, double log_r) {
    if (log_r == kNegInf) return x == 0.0 ? rule.axis_log_coeff(axis, 0.0) : kNegInf;
    return rule.axis_log_coeff(axis, x) + x * log_r;
}

// Integer argmax of the concave sequence axis_term(n) for n >= 0.
// Exponential bracket then integer ternary search; final linear scan
// breaks exact ties toward the smallest index.
std::int64_t axis_argmax(const CoefficientRule& rule, int axis, double log_r) {
    if (log_r == kNegInf) return 0;
    auto f = [&](std::int64_t n) { return axis_term(rule, axis, static_cast<double>(n), log_r); };

    constexpr std::int64_t kIndexCap = std::int64_t{1} << 62;
    std::int64_t hi = 1;
    while (f(hi * 2) > f(hi)) {
        hi *= 2;
        if (hi >= kIndexCap / 2)
            throw ConvergenceError("maximal_term: term sequence still increasing at index cap "
                                   "(rule does not converge at this radius?)");
    }
    hi *= 2;
    std::int64_t lo = 0;
    while (hi - lo > 64) {
        std::int64_t m1 = lo + (hi - lo) / 3;
        std::int64_t m2 = hi - (hi - lo) / 3;
        if (f(m1) < f(m2)) lo = m1 + 1;
        else hi = m2;
    }
    std::int64_t best = lo;
    double best_v = f(lo);
    for (std::int64_t n = lo + 1; n <= hi; ++n) {
        double v = f(n);
        if (v > best_v) { best_v = v; best = n; }
    }
    return best;
}

} // namespace

MaximalTerm maximal_term(const CoefficientRule& rule, const RadiusVector& r) {
    if (r.dim() != rule.dim())
        throw Error("maximal_term: radius dimension mismatch");

    if (rule.kind() == RuleKind::Table) {
        MaximalTerm best{kNegInf, MultiIndex{}};
        for (const auto& [idx, logmag] : rule.entries()) {
            double v = logmag;
            for (int j = 0; j < rule.dim(); ++j) {
                auto nj = idx[static_cast<std::size_t>(j)];
                if (nj == 0) continue;
                if (r.log_radius(j) == kNegInf) { v = kNegInf; break; }
                v += static_cast<double>(nj) * r.log_radius(j);
            }
            MultiIndex n{idx};
            if (v > best.ln_mu || (v == best.ln_mu && (best.argmax.entries.empty() || n < best.argmax)))
                best = {v, std::move(n)};
        }
        if (best.argmax.entries.empty())
            throw Error("maximal_term: empty table");
        return best;
    }

    MaximalTerm out;
    out.argmax.entries.resize(static_cast<std::size_t>(rule.dim()));
    out.ln_mu = 0.0;
    for (int j = 0; j < rule.dim(); ++j) {
        std::int64_t nj = axis_argmax(rule, j, r.log_radius(j));
        out.argmax.entries[static_cast<std::size_t>(j)] = nj;
        out.ln_mu += axis_term(rule, j, static_cast<double>(nj), r.log_radius(j));
    }
    return out;
}

TruncationSpec truncation_degree(double ln_mu, const RadiusVector& r, double delta) {
    if (delta < 0.0) throw Error("truncation_degree: delta must be >= 0");
    TruncationSpec t;
    t.zero_delta = (delta == 0.0);

    const int p = r.dim();
    const double sum_gaps = r.total_log_inv_gap();
    const double log_exp = p / 2.0 + 1.0 + p * delta;

    double prod_log = 0.0; // ln prod_j e^{2+3d}/(1-r_j)^{2+3d}
    for (int j = 0; j < p; ++j)
        prod_log += (2.0 + 3.0 * delta) * (1.0 + r.log_inv_gap(j));

    double arg = ln_mu + sum_gaps; // ln{mu_f prod 1/(1-r_j)}
    if (arg < 1.0) { arg = 1.0; t.clamped_log = true; }
    double arg1 = std::max(1.0, 2.0 + ln_mu + sum_gaps); // e^2 mu inside the log

    t.total_degree_d = std::exp(prod_log + log_exp * std::log(arg));
    t.total_degree_d1 = std::exp(prod_log + log_exp * std::log(arg1));

    double cap = std::ceil(2.0 * t.total_degree_d1);
    constexpr double kCapMax = 4.6e18; // int64 range
    std::int64_t icap = cap > kCapMax ? static_cast<std::int64_t>(kCapMax)
                                      : static_cast<std::int64_t>(cap);
    t.per_axis_caps.assign(static_cast<std::size_t>(p), icap);
    return t;
}

double shell_log_sum(const CoefficientRule& rule, const RadiusVector& r, double s) {
    const int p = rule.dim();
    if (s < 0) return kNegInf;

    if (rule.kind() == RuleKind::Table) {
        OnlineLogSum acc;
        auto target = static_cast<std::int64_t>(s);
        for (const auto& [idx, logmag] : rule.entries()) {
            std::int64_t deg = 0;
            for (auto v : idx) deg += v;
            if (deg != target) continue;
            double v = logmag;
            for (int j = 0; j < p; ++j) {
                auto nj = idx[static_cast<std::size_t>(j)];
                if (nj != 0) v += static_cast<double>(nj) * r.log_radius(j);
            }
            acc.add(v);
        }
        return acc.value();
    }

    if (p == 1) return axis_term(rule, 0, s, r.log_radius(0));

    if (p == 2) {
        auto h = [&](double k) {
            return axis_term(rule, 0, k, r.log_radius(0)) +
                   axis_term(rule, 1, s - k, r.log_radius(1));
        };
        // exact enumeration for small shells
        if (s <= 2e6 && s == std::floor(s)) {
            OnlineLogSum acc;
            auto si = static_cast<std::int64_t>(s);
            for (std::int64_t k = 0; k <= si; ++k)
                acc.add(h(static_cast<double>(k)));
            return acc.value();
        }
        // concave exponent: locate the peak, then integrate the 40-nat window
        double kstar = golden_section_max(h, 0.0, s, std::max(1e-12, 1e-10 * s));
        double hstar = h(kstar);
        if (hstar == kNegInf) return kNegInf;
        const double drop = 45.0;
        auto edge = [&](double a, double b) {
            // h(a) >= hstar - drop > h(b) assumed; bisect the crossing
            for (int i = 0; i < 200 && std::abs(b - a) > std::max(1e-9, 1e-12 * s); ++i) {
                double m = 0.5 * (a + b);
                (h(m) >= hstar - drop ? a : b) = m;
            }
            return 0.5 * (a + b);
        };
        double klo = h(0.0) >= hstar - drop ? 0.0 : edge(kstar, 0.0);
        double khi = h(s) >= hstar - drop ? s : edge(kstar, s);
        double width = khi - klo;
        if (width <= 2e6 && s <= 9e15) {
            OnlineLogSum acc;
            for (double k = std::floor(klo); k <= std::ceil(khi) && k <= s; k += 1.0)
                if (k >= 0) acc.add(h(k));
            return acc.value();
        }
        // wide flat peak: the lattice sum matches the integral to ~1/width.
        // At shells this deep |h| dwarfs double resolution, so clamp the
        // normalized exponent at 0 and keep the window nondegenerate; the
        // absolute error (~ulp of h) is negligible against the comparisons
        // these values feed.
        width = std::max(width, 1.0);
        const int m = 4000; // Simpson panels (even count of intervals)
        double step = width / m;
        double integral = 0.0;
        for (int i = 0; i <= m; ++i) {
            double k = klo + step * i;
            double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            integral += w * std::exp(std::min(0.0, h(k) - hstar));
        }
        integral *= step / 3.0;
        return hstar + std::log(integral);
    }

    // p >= 3: exact only
    double max_terms = 1.0;
    for (int j = 0; j < p - 1; ++j) max_terms *= (s + 1.0);
    if (max_terms > 2e6)
        throw Error("shell_log_sum: shell too large to enumerate for p >= 3");
    OnlineLogSum acc;
    for_each_on_shell(p, static_cast<std::int64_t>(s), {}, [&](const std::vector<std::int64_t>& n) {
        double v = 0.0;
        for (int j = 0; j < p; ++j)
            v += axis_term(rule, j, static_cast<double>(n[static_cast<std::size_t>(j)]),
                           r.log_radius(j));
        acc.add(v);
    });
    return acc.value();
}

double sum_modulus(const CoefficientRule& rule, const RadiusVector& r, double rel_tol) {
    if (!(rel_tol > 0.0)) throw Error("sum_modulus: rel_tol must be > 0");
    if (r.dim() != rule.dim()) throw Error("sum_modulus: radius dimension mismatch");

    MaximalTerm mt = maximal_term(rule, r);
    const double two_d = rule.kind() == RuleKind::Table
                             ? static_cast<double>(rule.max_table_degree())
                             : 2.0 * truncation_degree(mt.ln_mu, r, 0.0).total_degree_d;
    const std::int64_t peak_degree = mt.argmax.norm();
    const double log_tol = std::log(rel_tol);

    OnlineLogSum acc;
    std::int64_t terms = 0;
    double prev_shell = kNegInf;
    for (std::int64_t s = 0;; ++s) {
        double shell = shell_log_sum(rule, r, static_cast<double>(s));
        acc.add(shell);

        // term-count guard (shell size is s+1 per free axis pair)
        double shell_terms = 1.0;
        for (int j = 0; j < rule.dim() - 1; ++j) shell_terms *= (s + 1.0);
        terms += static_cast<std::int64_t>(std::min(shell_terms, 1e18));
        if (terms > kTermScanCap)
            throw ConvergenceError("sum_modulus: exceeded hard term cap");

        if (rule.kind() == RuleKind::Table && s >= rule.max_table_degree()) break;

        // a -inf shell past the peak means a zero radius kills everything beyond
        if (shell == kNegInf && s > peak_degree && rule.kind() != RuleKind::Table) break;

        if (s > peak_degree && shell != kNegInf && shell < acc.value() + log_tol) {
            if (s >= two_d) break;
            // shells are in geometric decay here; if everything through 2d
            // (and beyond) is below tolerance, account for it in one step
            double rho = shell - prev_shell;
            if (rho < 0.0) {
                double remaining = shell + rho - std::log(-std::expm1(rho));
                if (remaining < acc.value() + log_tol) {
                    acc.add(remaining);
                    break;
                }
            }
        }
        if (rule.kind() == RuleKind::Table) continue;
        prev_shell = shell;
    }
    return acc.value();
}

namespace {

// Reduce away axes with r_j == 0 (their only admissible entry is 0).
bool reduce_zero_axes(const CoefficientRule& rule, const RadiusVector& r,
                      CoefficientRule& rule_out, RadiusVector& r_out) {
    std::vector<double> keep;
    for (int j = 0; j < r.dim(); ++j)
        if (r.log_radius(j) != kNegInf) keep.push_back(r.radius(j));
    if (static_cast<int>(keep.size()) == r.dim()) return false;
    int q = static_cast<int>(keep.size());
    r_out = RadiusVector(std::move(keep));
    switch (rule.kind()) {
        case RuleKind::Geometric: rule_out = CoefficientRule::geometric(std::max(q, 1)); break;
        case RuleKind::ProductSqrtHalf:
            rule_out = CoefficientRule::product_sqrt_half(std::max(q, 1));
            break;
        default: rule_out = rule; break; // p == 1 kinds never reach here with q > 0
    }
    return true;
}

} // namespace

double tail_sum(const CoefficientRule& rule, const RadiusVector& r, double d) {
    if (!(d >= 1.0)) throw Error("tail_sum: d must be >= 1");
    if (r.dim() != rule.dim()) throw Error("tail_sum: radius dimension mismatch");

    if (rule.kind() == RuleKind::Table) {
        OnlineLogSum acc;
        for (const auto& [idx, logmag] : rule.entries()) {
            std::int64_t deg = 0;
            for (auto v : idx) deg += v;
            if (static_cast<double>(deg) < d) continue;
            double v = logmag;
            bool dead = false;
            for (int j = 0; j < rule.dim(); ++j) {
                auto nj = idx[static_cast<std::size_t>(j)];
                if (nj == 0) continue;
                if (r.log_radius(j) == kNegInf) { dead = true; break; }
                v += static_cast<double>(nj) * r.log_radius(j);
            }
            if (!dead) acc.add(v);
        }
        return acc.value();
    }

    {
        CoefficientRule reduced = rule;
        RadiusVector r_reduced;
        if (reduce_zero_axes(rule, r, reduced, r_reduced)) {
            if (r_reduced.dim() == 0) return kNegInf; // only n = 0 left, ||0|| < d
            return tail_sum(reduced, r_reduced, d);
        }
    }

    const double s0 = std::ceil(d);
    auto shell = [&](double s) { return shell_log_sum(rule, r, s); };

    // decay rate per shell near the tail head
    const double ds = std::max(1.0, s0 * 1e-9);
    const double g0 = (shell(s0 + ds) - shell(s0)) / ds;

    const bool head_decaying = g0 < 0.0;

    auto find_peak = [&](double lo) {
        double hi = std::max(lo, 1.0);
        while (shell(hi * 2.0) > shell(hi)) {
            hi *= 2.0;
            if (hi > 1e300) throw ConvergenceError("tail_sum: series does not converge at r");
        }
        return golden_section_max(shell, lo, hi * 2.0, std::max(1e-9, 1e-10 * hi));
    };

    double est_shells;
    if (head_decaying) {
        est_shells = 50.0 / -g0;
    } else {
        double speak = find_peak(s0);
        double far = 2.0 * speak + 16.0;
        double gtail = (shell(far + ds) - shell(far)) / ds;
        est_shells = (speak - s0) + (gtail < 0.0 ? 50.0 / -gtail : 1e18);
    }

    if (s0 <= 9e15 && est_shells <= 2e6) {
        // exact shell loop (shell_log_sum falls back to its own estimate for
        // huge individual shells)
        OnlineLogSum acc;
        double prev = kNegInf;
        std::int64_t count = 0;
        for (double s = s0;; s += 1.0) {
            double v = shell(s);
            acc.add(v);
            if (++count > 4'000'000)
                throw ConvergenceError("tail_sum: exceeded shell cap");
            if (v != kNegInf && v < acc.value() - 42.0) {
                double rho = v - prev;
                if (rho < 0.0) acc.add(v + rho - std::log(-std::expm1(rho)));
                break;
            }
            prev = v;
        }
        return acc.value();
    }

    if (head_decaying) {
        // locally geometric: the per-shell decay varies negligibly across
        // the ~50/|g| shells that matter
        return shell(s0) - std::log(-std::expm1(g0));
    }

    // tail head sits before the shell peak: Laplace around the peak
    double speak = find_peak(s0);
    double vpeak = shell(speak);
    double dd = std::max(1.0, speak * 1e-7);
    double curv = (shell(speak + dd) - 2.0 * vpeak + shell(speak - dd)) / (dd * dd);
    if (curv >= 0.0) curv = -1e-300;
    return vpeak + 0.5 * std::log(2.0 * M_PI / -curv);
}

} // namespace wiman
