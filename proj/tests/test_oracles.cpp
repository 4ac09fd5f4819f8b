// Independent reference computations: regularized incomplete beta for the
// volume integral at integer counts, and a direct probability-mass summation
// for the divergence. These pin the in-library numerics in test_state_functions
// and test_verification.

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "evid/verification.hpp"

using namespace evid;
using Catch::Matchers::WithinRel;

TEST_CASE("volume oracle reproduces closed forms at x = 0", "[oracle]") {
    // full-domain integral of (1-t)^n / 1 is 1/(n+1)
    for (int n : {1, 2, 5, 17, 40})
        CHECK_THAT(v_oracle(n, 0, 1.0, 0.5), WithinRel(std::pow(2.0, n) / (n + 1.0), 1e-12));

    // half-domain variant: (1 - 2^-(n+1)) / (n+1), scaled by 2^n
    for (int n : {1, 3, 7, 25})
        CHECK_THAT(v_oracle(n, 0, 0.5, 0.5),
                   WithinRel((std::pow(2.0, n) - 0.5) / (n + 1.0), 1e-12));
}

TEST_CASE("volume oracle matches a gamma-function evaluation at n=50, x=25", "[oracle]") {
    // int_0^1 t^25 (1-t)^25 dt / 0.5^50 = sqrt(pi) Gamma(26) / (2 Gamma(26.5))
    double expect = std::exp(0.5 * std::log(M_PI) + std::lgamma(26.0) -
                             std::log(2.0) - std::lgamma(26.5));
    CHECK_THAT(v_oracle(50, 25, 1.0, 0.5), WithinRel(expect, 1e-12));
    CHECK_THAT(expect, WithinRel(0.17464095287361278, 1e-10));
}

TEST_CASE("volume oracle is symmetric in x <-> n-x on the full domain", "[oracle]") {
    for (int n : {4, 9, 30})
        for (int x = 0; x <= n / 2; ++x)
            CHECK_THAT(v_oracle(n, x, 1.0, 0.5), WithinRel(v_oracle(n, n - x, 1.0, 0.5), 1e-12));
}

TEST_CASE("volume oracle rejects out-of-range arguments", "[oracle]") {
    CHECK_THROWS_AS(v_oracle(0, 0, 1.0, 0.5), OutOfRange);
    CHECK_THROWS_AS(v_oracle(61, 0, 1.0, 0.5), OutOfRange);
    CHECK_THROWS_AS(v_oracle(10, 11, 1.0, 0.5), OutOfRange);
    CHECK_THROWS_AS(v_oracle(10, 5, 0.7, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(v_oracle(10, 5, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("summation oracle agrees with the divergence closed form", "[oracle]") {
    for (int n : {1, 2, 5, 8, 12})
        for (double t1 : {0.1, 0.3, 0.5, 0.8})
            for (double t2 : {0.2, 0.5, 0.65}) {
                double direct = kld(t1, t2, n);
                CHECK_THAT(kld_summation_oracle(t1, t2, n), WithinRel(direct, 1e-10));
            }
}

TEST_CASE("summation oracle handles degenerate numerator weights", "[oracle]") {
    CHECK(kld_summation_oracle(0.0, 0.5, 7) == Catch::Approx(7 * std::log(2.0)));
    CHECK(kld_summation_oracle(1.0, 0.5, 7) == Catch::Approx(7 * std::log(2.0)));
    CHECK(kld_summation_oracle(0.5, 0.5, 12) == Catch::Approx(0.0).margin(1e-14));
}
