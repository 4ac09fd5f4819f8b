// Entropy, volume and correction terms against frozen reference values.

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "evid/state_functions.hpp"
#include "evid/verification.hpp"

using namespace evid;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const QuadratureConfig kCfg{};
}

TEST_CASE("entropy is a clamped log likelihood ratio", "[state]") {
    auto iia = HypothesisContrast::class_2a();
    Observation obs(50, 10);
    CHECK_THAT(entropy_S(iia, obs), WithinRel(9.637237851087872, 1e-12));

    // x/n inside the denominator set: likelihood ratio is 1, entropy 0
    auto iib = HypothesisContrast::class_2b(0.4, 0.6);
    CHECK(entropy_S(iib, Observation(50, 25)) == 0.0);

    // class 1a clamps both MLEs to 1/2 for x/n above it
    CHECK(entropy_S(HypothesisContrast::class_1a(), Observation(10, 8)) == 0.0);

    // class 1b: numerator x/n, denominator 1/2, from either side
    auto ib = HypothesisContrast::class_1b();
    Observation low(50, 10);
    CHECK_THAT(entropy_S(ib, low),
               WithinRel(log_likelihood(0.2, low) - log_likelihood(0.5, low), 1e-12));
    Observation hi(50, 40);
    CHECK_THAT(entropy_S(ib, hi),
               WithinRel(log_likelihood(0.8, hi) - log_likelihood(0.5, hi), 1e-12));
}

TEST_CASE("volume matches the incomplete-beta oracle on integer counts", "[state]") {
    struct Cell { HypothesisContrast hc; double upper; };
    const Cell cells[] = {
        {HypothesisContrast::class_1a(), 0.5},
        {HypothesisContrast::class_1b(), 1.0},
        {HypothesisContrast::class_2a(), 1.0},
        {HypothesisContrast::class_2b(0.4, 0.6), 1.0},
    };
    for (const auto& cell : cells)
        for (int n : {3, 10, 25})
            for (int x = 0; x <= n; ++x) {
                Observation obs(n, x);
                int side = denominator_side(cell.hc, obs);
                double th = constrained_mle(cell.hc, side, obs);
                double expect = v_oracle(n, x, cell.upper, th);
                CHECK_THAT(volume_V(cell.hc, obs, kCfg), WithinRel(expect, 1e-9));
            }
}

TEST_CASE("volume closed forms at x = 0", "[state]") {
    CHECK_THAT(volume_V(HypothesisContrast::class_1a(), Observation(7, 0), kCfg),
               WithinRel(15.9375, 1e-10));
    CHECK_THAT(volume_V(HypothesisContrast::class_1b(), Observation(3, 0), kCfg),
               WithinRel(2.0, 1e-10));
    CHECK_THAT(volume_V(HypothesisContrast::class_2a(), Observation(50, 25), kCfg),
               WithinRel(0.17464095287361278, 1e-9));
}

TEST_CASE("log volume stays finite where the linear volume overflows", "[state]") {
    auto ib = HypothesisContrast::class_1b();
    Observation obs(3000, 300);  // exp(S) dwarfs double range
    double lv = log_volume(ib, obs, kCfg);
    CHECK(std::isfinite(lv));
    CHECK(lv > 700.0);  // past the exp() overflow threshold
    CHECK(std::isinf(volume_V(ib, obs, kCfg)));
}

TEST_CASE("minimum Fisher information is linear in n", "[state]") {
    CHECK(min_fisher_info(50.0) == 200.0);
    CHECK(min_fisher_info(0.25) == 1.0);
}

TEST_CASE("rate constants per nested class", "[state]") {
    auto [r1a, r2a] = rate_constants(HypothesisContrast::class_2a());
    CHECK(r1a == 2.0);
    CHECK(r2a == 3.0);
    auto [r1b, r2b] = rate_constants(HypothesisContrast::class_2b(0.4, 0.6));
    CHECK_THAT(r1b, WithinRel(1.8, 1e-12));
    CHECK_THAT(r2b, WithinRel(2.5, 1e-12));
    auto [r1c, r2c] = rate_constants(HypothesisContrast::class_2b(0.49, 0.51));
    CHECK_THAT(r1c, WithinRel(1.98, 1e-12));
    CHECK_THAT(r2c, WithinRel(2.95, 1e-12));
    // the combination r1 - r2/2 reduces to (2 + w)/4
    CHECK_THAT(r1b - r2b / 2, WithinRel(0.55, 1e-12));
    CHECK_THROWS_AS(rate_constants(HypothesisContrast::class_1a()), InvalidClass);
    CHECK_THROWS_AS(rate_constants(HypothesisContrast::class_1b()), InvalidClass);
}

TEST_CASE("correction vanishes for non-nested classes", "[state]") {
    for (auto hc : {HypothesisContrast::class_1a(), HypothesisContrast::class_1b()})
        for (double n : {5.0, 50.0})
            for (double x : {0.0, 2.0, n / 2}) {
                CHECK(correction_b(hc, Observation(n, x), kCfg) == 0.0);
            }
}

TEST_CASE("in-region correction combines volume and width", "[state]") {
    // point hypothesis at 1/2, observation on it: b = 2 V - 3 / sqrt(2(n+2))
    double v = v_oracle(50, 25, 1.0, 0.5);
    double expect = 2.0 * v - 3.0 / std::sqrt(104.0);
    auto iia = HypothesisContrast::class_2a();
    CHECK_THAT(correction_b(iia, Observation(50, 25), kCfg), WithinRel(expect, 1e-9));
    CHECK_THAT(expect, WithinRel(0.0551077030399445, 1e-8));

    // interval hypothesis, ratio interior to it: denominator MLE is x/n
    auto iib = HypothesisContrast::class_2b(0.4, 0.6);
    double v44 = v_oracle(50, 22, 1.0, 0.44);
    double expect44 = 1.8 * v44 - 2.5 / std::sqrt(104.0);
    CHECK_THAT(correction_b(iib, Observation(50, 22), kCfg), WithinRel(expect44, 1e-9));
}

TEST_CASE("out-of-region correction is linear through the endpoints", "[state]") {
    auto iia = HypothesisContrast::class_2a();
    double anchor = correction_b(iia, Observation(50, 25), kCfg);
    CHECK_THAT(correction_b(iia, Observation(50, 12.5), kCfg), WithinRel(0.5 * anchor, 1e-9));
    CHECK_THAT(correction_b(iia, Observation(50, 5), kCfg), WithinRel(0.2 * anchor, 1e-9));
    CHECK(std::abs(correction_b(iia, Observation(50, 0), kCfg)) < 1e-15);

    // right flank mirrors through ratio = 1
    CHECK_THAT(correction_b(iia, Observation(50, 37.5), kCfg), WithinRel(0.5 * anchor, 1e-9));
    CHECK(std::abs(correction_b(iia, Observation(50, 50), kCfg)) < 1e-15);

    // interval class anchors at each edge of the hypothesis set
    auto iib = HypothesisContrast::class_2b(0.4, 0.6);
    double left_anchor = correction_b(iib, Observation(50, 20), kCfg);
    CHECK_THAT(correction_b(iib, Observation(50, 10), kCfg), WithinRel(0.5 * left_anchor, 1e-9));
}

TEST_CASE("correction keeps the denominator positive across a wide grid", "[state]") {
    for (auto hc : {HypothesisContrast::class_2a(), HypothesisContrast::class_2b(0.4, 0.6)})
        for (double n : {3.0, 10.0, 50.0, 200.0, 1000.0})
            for (int i = 0; i <= 20; ++i) {
                Observation obs(n, n * i / 20.0);
                auto st = compute_state(hc, obs, kCfg);
                CHECK(st.b * std::exp(-st.log_v) < 1.0);
            }
}

TEST_CASE("compute_state bundles consistent members", "[state]") {
    auto iia = HypothesisContrast::class_2a();
    Observation obs(50, 20);
    auto st = compute_state(iia, obs, kCfg);
    CHECK_THAT(st.v, WithinRel(std::exp(st.log_v), 1e-12));
    CHECK(st.min_fi == 200.0);
    CHECK(st.r1 == 2.0);
    CHECK(st.r2 == 3.0);
    CHECK(st.s > 0.0);
    CHECK_THAT(st.s, WithinRel(entropy_S(iia, obs), 1e-12));

    auto st_ia = compute_state(HypothesisContrast::class_1a(), obs, kCfg);
    CHECK(st_ia.b == 0.0);
    CHECK(std::isnan(st_ia.r1));
    CHECK(std::isnan(st_ia.r2));
}
