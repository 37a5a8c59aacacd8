#include "wiman/sz_tail.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wiman/fft.hpp"
#include "wiman/numeric.hpp"

namespace wiman {

WilsonInterval wilson_interval(int successes, int trials, double z) {
    if (trials <= 0) return {0.0, 1.0};
    const double n = trials;
    const double phat = successes / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

// torus maximum of one realization, p = 1
double trial_max_1d(const std::vector<double>& c, const SignRealization& signs,
                    const TorusGridSpec& grid) {
    const std::size_t N1 = c.size();
    const std::size_t G =
        next_pow2(std::max<std::size_t>(static_cast<std::size_t>(grid.oversample) * N1, 2));
    std::vector<std::complex<double>> buf(G, {0.0, 0.0});
    for (std::size_t n = 0; n < N1; ++n)
        buf[n] = c[n] * signs.value(static_cast<std::int64_t>(n));
    std::vector<std::complex<double>> coeffs(buf.begin(), buf.begin() + static_cast<long>(N1));
    fft_inplace(buf);
    double best = 0.0;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < G; ++k) {
        double v = std::abs(buf[k]);
        if (v > best) { best = v; best_k = k; }
    }
    // golden-section inside the best grid cell
    double center = 2.0 * std::numbers::pi * static_cast<double>((G - best_k) % G) /
                    static_cast<double>(G);
    double half_cell = 2.0 * std::numbers::pi / static_cast<double>(G);
    auto f = [&](double psi) {
        std::complex<double> w(std::cos(psi), std::sin(psi));
        std::complex<double> ph(1.0, 0.0), acc(0.0, 0.0);
        for (const auto& b : coeffs) { acc += b * ph; ph *= w; }
        double v = std::abs(acc);
        best = std::max(best, v);
        return v;
    };
    golden_section_max(f, center - half_cell, center + half_cell, grid.refine_tol);
    return best;
}

// p >= 2: grid maximum over the zero-padded FFT of the simplex array
double trial_max_nd(const std::vector<double>& coeff, std::int64_t N, int p,
                    const SignRealization& signs, const TorusGridSpec& grid) {
    const std::size_t m = static_cast<std::size_t>(N) + 1;
    const std::size_t G = next_pow2(static_cast<std::size_t>(grid.oversample) * m);
    std::size_t padded = 1;
    for (int j = 0; j < p; ++j) padded *= G;
    if (padded > grid.max_padded_entries)
        throw BudgetError(padded, grid.max_padded_entries, "sz_tail padded array");
    std::vector<std::complex<double>> buf(padded, {0.0, 0.0});
    std::vector<std::size_t> extents(static_cast<std::size_t>(p), G);
    MultiIndex mi;
    for (std::int64_t s = 0; s <= N; ++s) {
        double cs = coeff[static_cast<std::size_t>(s)];
        for_each_on_shell(p, s, {}, [&](const std::vector<std::int64_t>& n) {
            std::size_t flat = 0;
            for (int j = 0; j < p; ++j)
                flat = flat * G + static_cast<std::size_t>(n[static_cast<std::size_t>(j)]);
            mi.entries = n;
            buf[flat] = cs * signs.value(mi);
        });
    }
    fft_nd(buf, extents);
    double best = 0.0;
    for (const auto& v : buf) best = std::max(best, std::abs(v));
    return best;
}

} // namespace

std::vector<TailExperimentRow>
sz_tail_experiment(const std::vector<double>& coeff, SignModel model,
                   const std::vector<std::int64_t>& N_list,
                   const std::vector<double>& A_grid, int trials, int p,
                   const TorusGridSpec& grid) {
    grid.validate();
    if (trials < 100) throw Error("sz_tail_experiment: trials must be >= 100");
    const double n_min = std::max<double>(p, 4.0 * std::numbers::pi);
    for (auto N : N_list)
        if (static_cast<double>(N) < n_min)
            throw Error("sz_tail_experiment: N must be >= max{p, 4*pi}");

    std::vector<TailExperimentRow> rows;
    for (auto N : N_list) {
        if (static_cast<std::size_t>(N) >= coeff.size())
            throw Error("sz_tail_experiment: coeff list shorter than N");

        // S_N^2 = sum over ||n|| <= N of |c_n|^2 (each degree-s shell has
        // binomial(s+p-1, p-1) indices)
        double s2 = 0.0;
        for (std::int64_t s = 0; s <= N; ++s) {
            double count = 1.0;
            for (int j = 1; j < p; ++j)
                count *= static_cast<double>(s + j) / static_cast<double>(j);
            s2 += count * coeff[static_cast<std::size_t>(s)] * coeff[static_cast<std::size_t>(s)];
        }
        const double sN = std::sqrt(s2);
        const double log_factor = std::sqrt(std::log(static_cast<double>(N)));

        std::vector<double> maxima(static_cast<std::size_t>(trials));
        std::vector<double> c1(coeff.begin(), coeff.begin() + static_cast<long>(N) + 1);
        for (int t = 0; t < trials; ++t) {
            SignRealization real(model, static_cast<std::uint64_t>(t));
            maxima[static_cast<std::size_t>(t)] =
                p == 1 ? trial_max_1d(c1, real, grid) : trial_max_nd(coeff, N, p, real, grid);
        }

        for (double A : A_grid) {
            TailExperimentRow row;
            row.N = N;
            row.A = A;
            row.trials = trials;
            row.s_N = sN;
            row.threshold = A * sN * log_factor;
            row.exceed_count = static_cast<int>(
                std::count_if(maxima.begin(), maxima.end(),
                              [&](double m) { return m >= row.threshold; }));
            rows.push_back(row);
        }
    }
    return rows;
}

std::string tail_rows_to_csv(const std::vector<TailExperimentRow>& rows) {
    std::ostringstream os;
    os << "N,A,trials,exceed,s_N,threshold,freq,wilson_lo,wilson_hi\n";
    os.precision(12);
    for (const auto& r : rows) {
        auto w = wilson_interval(r.exceed_count, r.trials);
        os << r.N << ',' << r.A << ',' << r.trials << ',' << r.exceed_count << ',' << r.s_N
           << ',' << r.threshold << ',' << static_cast<double>(r.exceed_count) / r.trials
           << ',' << w.lo << ',' << w.hi << '\n';
    }
    return os.str();
}

} // namespace wiman
