// The evidence value assembled from entropy, volume and correction.

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "evid/equation_of_state.hpp"

using namespace evid;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const QuadratureConfig kCfg{};
}

TEST_CASE("degrees of freedom per class", "[eqs]") {
    CHECK(dof_c1(HypothesisContrast::class_1a()) == 1.5);
    CHECK(dof_c1(HypothesisContrast::class_1b()) == 1.0);
    CHECK(dof_c1(HypothesisContrast::class_2a()) == 2.0);
    CHECK_THAT(dof_c1(HypothesisContrast::class_2b(0.4, 0.6)), WithinRel(2.2, 1e-12));
    CHECK_THAT(dof_c1(HypothesisContrast::class_2b(0.45, 0.55)), WithinRel(2.1, 1e-12));
}

TEST_CASE("denominator guard", "[eqs]") {
    CHECK_THAT(detail::log_v_minus_b(std::log(2.0), 1.0), WithinAbs(0.0, 1e-15));
    CHECK_THROWS_AS(detail::log_v_minus_b(std::log(2.0), 2.0), NonPositiveDenominator);
    CHECK_THROWS_AS(detail::log_v_minus_b(std::log(2.0), 2.5), NonPositiveDenominator);
    // b <= 0 never trips the guard
    CHECK_THAT(detail::log_v_minus_b(0.0, -3.0), WithinRel(std::log(4.0), 1e-12));
}

TEST_CASE("closed forms at x = 0", "[eqs]") {
    for (double n : {1.0, 3.0, 7.0, 20.0, 50.5}) {
        Observation obs(n, 0);
        CHECK_THAT(evidence_value(HypothesisContrast::class_1b(), obs, kCfg),
                   WithinRel(n + 1.0, 1e-9));
        CHECK_THAT(evidence_value(HypothesisContrast::class_2a(), obs, kCfg),
                   WithinRel(std::sqrt(n + 1.0), 1e-9));
        CHECK_THAT(evidence_value(HypothesisContrast::class_2b(0.4, 0.6), obs, kCfg),
                   WithinRel(std::pow(n + 1.0, 1.0 / 2.2), 1e-9));
        double pocket = (n + 1.0) / (1.0 - 0.5 * std::pow(2.0, -n));
        CHECK_THAT(evidence_value(HypothesisContrast::class_1a(), obs, kCfg),
                   WithinRel(std::pow(pocket, 2.0 / 3.0), 1e-9));
    }
    CHECK_THAT(evidence_value(HypothesisContrast::class_1a(), Observation(7, 0), kCfg),
               WithinRel(4.0104507, 1e-6));
    CHECK_THAT(evidence_value(HypothesisContrast::class_2b(0.4, 0.6), Observation(3.6, 0), kCfg),
               WithinRel(std::pow(4.6, 1.0 / 2.2), 1e-9));
}

TEST_CASE("components agree with the scalar value", "[eqs]") {
    auto iia = HypothesisContrast::class_2a();
    for (double x : {0.0, 10.0, 20.0, 25.0}) {
        Observation obs(50, x);
        auto res = evidence_components(iia, obs, kCfg);
        CHECK_THAT(res.e, WithinRel(evidence_value(iia, obs, kCfg), 1e-12));
        CHECK_THAT(res.e, WithinRel(std::exp(res.log_e), 1e-12));
        CHECK(res.c2 == 1.0);
        CHECK(res.c1 == 2.0);
        CHECK(res.obs.n == 50.0);
        CHECK(std::string(res.hc.tag()) == "2a");
        // reassemble from the reported members
        double lhs = res.c1 * res.log_e;
        double rhs = res.s - (res.log_v + std::log1p(-res.b * std::exp(-res.log_v)));
        CHECK_THAT(lhs, WithinAbs(rhs, 1e-12));
    }
}

TEST_CASE("overrides reshape the same state", "[eqs]") {
    auto iia = HypothesisContrast::class_2a();
    Observation obs(50, 25);
    double base = evidence_value(iia, obs, kCfg);

    EqsOverrides flat;
    flat.c1 = 1.0;
    CHECK_THAT(evidence_value(iia, obs, kCfg, flat), WithinRel(base * base, 1e-10));

    EqsOverrides nob;
    nob.zero_b = true;
    auto res = evidence_components(iia, obs, kCfg);
    double expect = std::exp((res.s - res.log_v) / res.c1);
    CHECK_THAT(evidence_value(iia, obs, kCfg, nob), WithinRel(expect, 1e-10));
    CHECK(evidence_value(iia, obs, kCfg, nob) < base);  // positive b inflates E here
}

TEST_CASE("evidence stays finite when the volume overflows", "[eqs]") {
    auto ib = HypothesisContrast::class_1b();
    Observation obs(3000, 300);
    auto res = evidence_components(ib, obs, kCfg);
    CHECK(std::isinf(res.v));
    CHECK(std::isfinite(res.log_v));
    CHECK(std::isfinite(res.e));
    CHECK(res.e > 1.0);
}

TEST_CASE("favored labels", "[eqs]") {
    CHECK(favored_name(Favored::h1) == std::string("H1"));
    CHECK(favored_name(Favored::h2) == std::string("H2"));
    CHECK(favored_name(Favored::boundary) == std::string("boundary"));
}
