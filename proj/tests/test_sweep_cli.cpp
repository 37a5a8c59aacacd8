#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wiman/series.hpp"
#include "wiman/sweep.hpp"

using namespace wiman;

TEST_CASE("slope fit recovers an exact line") {
    std::vector<SweepRow> rows;
    for (int k = 2; k <= 7; ++k) {
        SweepRow row;
        row.abscissa = static_cast<double>(k) * std::log(2.0);
        row.ln_M_median = 2.0 * row.abscissa + 1.0;
        rows.push_back(row);
    }
    auto [slope, se] = fit_slope(rows, [](const SweepRow& r) { return r.ln_M_median; });
    CHECK(slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(se == doctest::Approx(0.0));
}

TEST_CASE("slope fit input validation") {
    std::vector<SweepRow> few(3);
    CHECK_THROWS_AS(fit_slope(few, [](const SweepRow& r) { return r.ln_mu; }), Error);
    std::vector<SweepRow> flat(5);
    for (auto& r : flat) r.abscissa = 1.0;
    CHECK_THROWS_AS(fit_slope(flat, [](const SweepRow& r) { return r.ln_mu; }), Error);
}

TEST_CASE("plus-only sweep reproduces the modulus sum") {
    SweepConfig cfg;
    cfg.rule = CoefficientRule::sqrt_half();
    cfg.sign_model = {SignKind::PlusOnly, 0};
    cfg.k_min = 4;
    cfg.k_max = 7;
    cfg.realizations = 1;
    auto res = run_sweep(cfg);
    REQUIRE(res.rows.size() == 4);
    for (const auto& row : res.rows) {
        RadiusVector r = RadiusVector::dyadic(1, row.k);
        CHECK(std::abs(row.ln_M_median - sum_modulus(cfg.rule, r, 1e-13)) <= 1e-6);
        CHECK(row.ln_M_median >= row.ln_mu);
        CHECK(row.abscissa == doctest::Approx(row.k * std::log(2.0)));
    }
    CHECK_FALSE(res.truncated);
}

TEST_CASE("constant table sweeps to zero") {
    CoefficientRule::Table entries;
    entries[{0}] = 0.0;
    SweepConfig cfg;
    cfg.rule = CoefficientRule::table(1, entries);
    cfg.sign_model = {SignKind::Rademacher, 17};
    cfg.k_min = 2;
    cfg.k_max = 5;
    cfg.realizations = 4;
    auto res = run_sweep(cfg);
    for (const auto& row : res.rows) {
        CHECK(row.ln_M_median == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(row.ln_mu == doctest::Approx(0.0));
    }
}

TEST_CASE("sweep output is bit-identical across reruns") {
    SweepConfig cfg;
    cfg.rule = CoefficientRule::sqrt_half();
    cfg.sign_model = {SignKind::Rademacher, 12345};
    cfg.k_min = 4;
    cfg.k_max = 7;
    cfg.realizations = 8;
    auto a = sweep_rows_to_csv(run_sweep(cfg).rows);
    auto b = sweep_rows_to_csv(run_sweep(cfg).rows);
    CHECK(a == b);
    CHECK(a.rfind("k,r,abscissa,ln_mu,", 0) == 0);
}

TEST_CASE("realization statistics bracket the median") {
    SweepConfig cfg;
    cfg.rule = CoefficientRule::sqrt_half();
    cfg.sign_model = {SignKind::Rademacher, 7};
    cfg.k_min = 5;
    cfg.k_max = 8;
    cfg.realizations = 9;
    auto res = run_sweep(cfg);
    for (const auto& row : res.rows) {
        REQUIRE(row.ln_M_all.size() == 9);
        CHECK(row.ln_M_min <= row.ln_M_median);
        CHECK(row.ln_M_median <= row.ln_M_max);
        CHECK(row.tail_log_bound < row.ln_M_median); // truncation is honest but small
        // the random-signs maximum cannot beat the full modulus sum
        RadiusVector r = RadiusVector::dyadic(1, row.k);
        CHECK(row.ln_M_max <= sum_modulus(cfg.rule, r, 1e-13) + 1e-9);
    }
}

TEST_CASE("tight budgets clamp caps and say so") {
    SweepConfig cfg;
    cfg.rule = CoefficientRule::sqrt_half();
    cfg.sign_model = {SignKind::PlusOnly, 0};
    cfg.k_min = 6;
    cfg.k_max = 6;
    cfg.realizations = 1;
    cfg.grid.max_padded_entries = 256; // cap 63 coefficients at oversample 4
    auto res = run_sweep(cfg);
    REQUIRE(res.rows.size() == 1);
    CHECK(res.truncated);
    CHECK(res.rows[0].truncated);
    CHECK(res.rows[0].tail_log_bound > kNegInf);
    // reported maximum + tail still covers the true sum
    RadiusVector r = RadiusVector::dyadic(1, 6);
    double full = sum_modulus(cfg.rule, r, 1e-13);
    double covered = log_add(res.rows[0].ln_M_median, res.rows[0].tail_log_bound);
    CHECK(covered >= full - 1e-6);
}

TEST_CASE("config validation") {
    SweepConfig cfg;
    cfg.k_min = 1;
    CHECK_THROWS_AS(run_sweep(cfg), Error);
    cfg.k_min = 4;
    cfg.k_max = 3;
    CHECK_THROWS_AS(run_sweep(cfg), Error);
    cfg.k_max = 5;
    cfg.realizations = 0;
    CHECK_THROWS_AS(run_sweep(cfg), Error);
}
