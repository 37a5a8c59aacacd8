#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "wiman/sz_tail.hpp"

using namespace wiman;

namespace {

MultiIndex mi(std::vector<std::int64_t> v) {
    MultiIndex m;
    m.entries = std::move(v);
    return m;
}

} // namespace

TEST_CASE("rademacher values live on {-1,+1} and repeat queries agree") {
    SignRealization s({SignKind::Rademacher, 42}, 3);
    for (std::int64_t n = 0; n < 1000; ++n) {
        auto v = s.value(n);
        CHECK(v.imag() == 0.0);
        CHECK(std::abs(std::abs(v.real()) - 1.0) < 1e-15);
        CHECK(v == s.value(n));
        CHECK(v == s.value(mi({n})));
    }
}

TEST_CASE("unit phase values have unit modulus") {
    SignRealization s({SignKind::UnitPhase, 7}, 0);
    for (std::int64_t n = 0; n < 1000; ++n)
        CHECK(std::abs(s.value(n)) <= 1.0 + 1e-15);
}

TEST_CASE("plus-only is the degenerate control") {
    SignRealization s({SignKind::PlusOnly, 99}, 5);
    for (std::int64_t n = 0; n < 100; ++n)
        CHECK(s.value(n) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("realizations are order-independent and stream-separated") {
    SignModel m{SignKind::Rademacher, 1};
    SignRealization a(m, 0), b(m, 0), c(m, 1);
    std::vector<MultiIndex> idx;
    for (std::int64_t n = 0; n < 200; ++n) idx.push_back(mi({n, 2 * n}));
    auto map_fwd = realize_signs(m, 0, idx);
    std::reverse(idx.begin(), idx.end());
    auto map_rev = realize_signs(m, 0, idx);
    int differs_across_streams = 0;
    for (const auto& i : idx) {
        CHECK(map_fwd.at(i) == map_rev.at(i));
        CHECK(map_fwd.at(i) == a.value(i));
        CHECK(a.value(i) == b.value(i));
        if (a.value(i) != c.value(i)) ++differs_across_streams;
    }
    CHECK(differs_across_streams > 50);
}

TEST_CASE("rademacher sample mean is CLT-small") {
    SignRealization s({SignKind::Rademacher, 1}, 0);
    double mean = 0.0;
    const int n = 100000;
    for (std::int64_t i = 0; i < n; ++i) mean += s.value(i).real();
    mean /= n;
    CHECK(std::abs(mean) <= 0.02);
}

TEST_CASE("pairwise products have near-zero mean (multiplicative system)") {
    SignModel m{SignKind::Rademacher, 5};
    const std::vector<std::pair<std::int64_t, std::int64_t>> pairs = {
        {0, 1}, {2, 17}, {3, 1000}, {10, 11}, {40, 8191},
        {5, 6}, {123, 456}, {77, 78}, {9000, 9001}, {1, 100000}};
    for (auto [i, j] : pairs) {
        double mean = 0.0;
        const int reps = 100000;
        for (int t = 0; t < reps; ++t) {
            SignRealization s(m, static_cast<std::uint64_t>(t));
            mean += (s.value(i) * s.value(j)).real();
        }
        mean /= reps;
        CHECK(std::abs(mean) <= 0.02);
    }
}

TEST_CASE("wilson interval basics") {
    auto w = wilson_interval(0, 1000);
    CHECK(w.lo == 0.0);
    CHECK(w.hi < 0.005);
    auto mid = wilson_interval(500, 1000);
    CHECK(mid.lo < 0.5);
    CHECK(mid.hi > 0.5);
    CHECK(mid.hi - mid.lo < 0.07);
    auto all = wilson_interval(1000, 1000);
    CHECK(all.hi == 1.0);
    CHECK(all.lo > 0.99);
}

TEST_CASE("tail experiment endpoints") {
    std::vector<double> coeff(65, 1.0);
    TorusGridSpec grid;

    // all-plus signs: max is exactly 65 at psi = 0, far above 0.5 S_N sqrt(ln N)
    auto lo = sz_tail_experiment(coeff, {SignKind::PlusOnly, 0}, {64}, {0.5}, 100, 1, grid);
    REQUIRE(lo.size() == 1);
    CHECK(lo[0].exceed_count == lo[0].trials);
    CHECK(lo[0].s_N == doctest::Approx(std::sqrt(65.0)));
    CHECK(lo[0].threshold ==
          doctest::Approx(0.5 * std::sqrt(65.0) * std::sqrt(std::log(64.0))));

    // threshold above the triangle-inequality ceiling: no exceedances possible
    auto hi = sz_tail_experiment(coeff, {SignKind::Rademacher, 1}, {64}, {100.0}, 200, 1,
                                 grid);
    CHECK(hi[0].exceed_count == 0);
}

TEST_CASE("exceedance frequency decays in N at fixed A") {
    std::vector<double> coeff(1025, 1.0);
    TorusGridSpec grid;
    auto rows = sz_tail_experiment(coeff, {SignKind::Rademacher, 1}, {64, 256, 1024},
                                   {3.0}, 200, 1, grid);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].exceed_count >= rows[1].exceed_count);
    CHECK(rows[1].exceed_count >= rows[2].exceed_count);
}

TEST_CASE("tail experiment rejects bad input") {
    std::vector<double> coeff(65, 1.0);
    TorusGridSpec grid;
    CHECK_THROWS_AS(sz_tail_experiment(coeff, {SignKind::Rademacher, 0}, {64}, {1.0}, 50,
                                       1, grid),
                    Error);
    CHECK_THROWS_AS(sz_tail_experiment(coeff, {SignKind::Rademacher, 0}, {8}, {1.0}, 100,
                                       1, grid),
                    Error); // below max{p, 4 pi}
}

TEST_CASE("tail CSV header is fixed") {
    std::vector<TailExperimentRow> rows(1);
    rows[0] = {64, 1.0, 100, 3, 8.0, 16.0};
    auto csv = tail_rows_to_csv(rows);
    CHECK(csv.rfind("N,A,trials,exceed,s_N,threshold,freq,wilson_lo,wilson_hi\n", 0) == 0);
    CHECK(csv.find("64,1,100,3,") != std::string::npos);
}
