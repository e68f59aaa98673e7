#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thuefib/bounds.hpp"

using namespace thuefib;
using namespace thuefib::bounds;

TEST_CASE("baker constant value and refinement") {
    Ball C = baker_constant();
    CHECK(C.to_double() > 1.0e13);
    CHECK(C.to_double() < 1.3e13);
    CHECK(C.to_double() == doctest::Approx(1.253e13).epsilon(1e-3));
    CHECK(C.rad_to_double() / C.to_double() < 1e-10);

    // recomputation at doubled precision lands inside the coarse ball
    Ball C2 = baker_constant(256);
    CHECK(C.contains(C2));
}

TEST_CASE("general coefficient evaluator specializes correctly") {
    ConstantTable ct = constants(128);
    std::vector<Ball> heights = {Ball::div_2exp(ct.log_alpha, 1), ct.log_sqrt5, ct.log2};
    Ball via_general = baker_coefficient(3, 2, heights, 128);
    CHECK(baker_constant(128).contains(via_general));
    CHECK_THROWS_AS(baker_coefficient(0, 2, {}, 128), std::invalid_argument);
}

TEST_CASE("log|y| lower bound") {
    // n=10: exp(20 log a / (1+C) - log 10 - 5), the C term is negligible
    Ball lo = logy_lower_bound(10);
    CHECK(lo.to_double() == doctest::Approx(std::exp(-std::log(10.0) - 5.0)).epsilon(1e-6));
    // monotone in n at the far end
    CHECK(logy_lower_bound(100000000000000L).to_double() <
          logy_lower_bound(1000000000000000L).to_double());
    CHECK_THROWS_AS(logy_lower_bound(9), std::invalid_argument);
}

TEST_CASE("log|y| upper bound") {
    Ball up = logy_upper_bound(10);
    // 3^94 * 200 * log 200 * (200 + 19 log a + 1)
    double expect = std::pow(3.0, 94) * 200.0 * std::log(200.0) *
                    (200.0 + 19.0 * 0.4812118250596 + 1.0);
    CHECK(up.to_double() == doctest::Approx(expect).epsilon(1e-9));
    // strictly increasing on a sample grid
    double prev = 0;
    for (long n = 10; n <= 10000000000000000L; n *= 10) {
        double v = logy_upper_bound(n).to_double();
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("initial bound is a certified crossing") {
    long n0 = initial_n_bound();
    // bounds are compatible at the bound and contradictory right above it
    CHECK(Ball::cert_lt(logy_upper_bound(n0 + 1), logy_lower_bound(n0 + 1)) == Cert::True);
    CHECK(Ball::cert_lt(logy_lower_bound(n0), logy_upper_bound(n0)) == Cert::True);
    CHECK(Ball::cert_lt(logy_lower_bound(10), logy_upper_bound(10)) == Cert::True);

    // determinism: the bisection depends only on certified predicates
    CHECK(initial_n_bound() == n0);

    // the difference changes sign exactly once on a coarse grid
    int flips = 0;
    bool prev_reached = false;
    bool first = true;
    for (long n = 10; n <= 40000000000000000L; n *= 4) {
        bool reached = Ball::cert_lt(logy_upper_bound(n), logy_lower_bound(n)) == Cert::True;
        if (!first && reached != prev_reached) ++flips;
        prev_reached = reached;
        first = false;
    }
    CHECK(flips == 1);
}
