#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wiman/bounds.hpp"
#include "wiman/series.hpp"

using namespace wiman;

TEST_CASE("functional closed forms at ln(mu/(1-r)) = e") {
    const double e = std::exp(1.0);
    RadiusVector r({1.0 - std::exp(-1.0)});
    BoundParams params{0.0, 1.0};

    CHECK(wiman_functional(BoundForm::DiscDet, params, e - 1.0, r) ==
          doctest::Approx(e + 0.5).epsilon(1e-12));
    CHECK(wiman_functional(BoundForm::DiscRandom, params, e - 1.0, r) ==
          doctest::Approx(e - 0.25).epsilon(1e-12));

    RadiusVector r2({1.0 - std::exp(-1.0), 1.0 - std::exp(-1.0)});
    CHECK(wiman_functional(BoundForm::PolyRandom, params, 0.0, r2) ==
          doctest::Approx(1.0 + std::log(std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("form names roundtrip and arity is enforced") {
    for (auto f : {BoundForm::DiscDet, BoundForm::DiscDetLower, BoundForm::DiscRandom,
                   BoundForm::DiscRandomLower, BoundForm::PolyDet, BoundForm::PolyRandom,
                   BoundForm::PolyRandomLower})
        CHECK(bound_form_from_name(bound_form_name(f)) == f);
    RadiusVector r2({0.5, 0.5});
    CHECK_THROWS_AS(wiman_functional(BoundForm::DiscDet, {0.0, 1.0}, 1.0, r2), Error);
}

TEST_CASE("functional is nondecreasing in delta") {
    RadiusVector r({0.9});
    RadiusVector r2({0.9, 0.8});
    for (double ln_mu : {0.5, 3.0, 40.0}) {
        double prev_disc = kNegInf, prev_poly = kNegInf;
        for (double d : {0.0, 0.1, 0.25, 0.5, 1.0}) {
            double v = wiman_functional(BoundForm::DiscDet, {d, 1.0}, ln_mu, r);
            CHECK(v >= prev_disc);
            prev_disc = v;
            double w = wiman_functional(BoundForm::PolyRandom, {d, 1.0}, ln_mu, r2);
            CHECK(w >= prev_poly);
            prev_poly = w;
        }
    }
}

TEST_CASE("lower form with C=1 equals the delta=0 upper form") {
    RadiusVector r2({0.9, 0.95});
    for (double ln_mu : {0.0, 2.0, 10.0}) {
        double lower = wiman_functional(BoundForm::PolyRandomLower, {0.0, 1.0}, ln_mu, r2);
        double upper = wiman_functional(BoundForm::PolyRandom, {0.0, 1.0}, ln_mu, r2);
        CHECK(lower == doctest::Approx(upper).epsilon(1e-12));
        CHECK(lower <= upper + 1e-12);
    }
}

TEST_CASE("clamp flag mirrors mu/(1-r) < e") {
    bool flag = false;
    RadiusVector small({0.1}); // mu = 1, 1/(1-r) just above 1 -> argument < e
    wiman_functional(BoundForm::DiscDet, {0.0, 1.0}, 0.0, small, &flag);
    CHECK(flag);
    RadiusVector big({0.9});
    wiman_functional(BoundForm::DiscDet, {0.0, 1.0}, 5.0, big, &flag);
    CHECK_FALSE(flag);
}

TEST_CASE("ratio report assembles the comparison") {
    RadiusVector r({0.9});
    auto rep = ratio_report(BoundForm::DiscDet, {0.25, 1.0}, 2.0, 5.0, r);
    CHECK(rep.ln_ratio == doctest::Approx(5.0 - rep.ln_bound));
    auto eq = ratio_report(BoundForm::DiscDet, {0.25, 1.0}, 2.0, rep.ln_bound, r);
    CHECK(eq.ln_ratio == doctest::Approx(0.0));

    auto lower = ratio_report(BoundForm::PolyRandomLower, {0.0, 1.0}, 2.0, 100.0,
                              RadiusVector({0.9, 0.9}));
    CHECK(lower.ln_ratio > 0.0); // witnessed lower bound
}

TEST_CASE("log-derivative check against the geometric closed form") {
    // Mfrak = 1/(1-r): d/dr ln Mfrak = 1/(1-r), rhs = ln(1/(1-r)) / (1-r)
    auto rule = CoefficientRule::geometric();
    {
        double r = 1.0 - std::exp(-2.0);
        auto dc = log_derivative_check(rule, RadiusVector({r}), 0, 0.0, 1e-5);
        CHECK(dc.lhs == doctest::Approx(std::exp(2.0)).epsilon(1e-4));
        CHECK(dc.rhs == doctest::Approx(2.0 * std::exp(2.0)).epsilon(1e-4));
        CHECK(dc.holds);
    }
    {
        auto dc = log_derivative_check(rule, RadiusVector({0.5}), 0, 0.0, 1e-5);
        CHECK(dc.lhs == doctest::Approx(2.0).epsilon(1e-4));
        CHECK(dc.rhs == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-4));
        CHECK_FALSE(dc.holds); // r = 0.5 sits inside the exceptional set
    }
}

TEST_CASE("log-derivative check against the term-wise derivative oracle") {
    auto rule = CoefficientRule::sqrt_half();
    for (double r : {0.9, 0.95}) {
        // d/dr ln Mfrak = sum n |a_n| r^{n-1} / sum |a_n| r^n
        double num = 0.0, den = 0.0;
        for (std::int64_t n = 0;; ++n) {
            double t = std::exp(std::sqrt(static_cast<double>(n)) / 2.0 +
                                n * std::log(r));
            den += t;
            num += static_cast<double>(n) * t / r;
            if (n > 10 && t < 1e-17 * den) break;
        }
        auto dc = log_derivative_check(rule, RadiusVector({r}), 0, 0.5, 1e-6);
        CHECK(dc.lhs == doctest::Approx(num / den).epsilon(1e-3));
    }
}

TEST_CASE("step validation") {
    auto rule = CoefficientRule::geometric();
    CHECK_THROWS_AS(log_derivative_check(rule, RadiusVector({0.9}), 0, 0.0, 0.05), Error);
    CHECK_THROWS_AS(log_derivative_check(rule, RadiusVector({0.9}), 1, 0.0, 1e-5), Error);
}
