#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "thuefib/units.hpp"

using namespace thuefib;
using namespace thuefib::units;
using roots::approx_roots;
using seq::ThueInstance;

TEST_CASE("regulator window at n=10 and n=50") {
    for (long n : {10L, 50L}) {
        ThueInstance inst = ThueInstance::make(n);
        UnitSystem us = build_units(inst, approx_roots(inst, 3 * n + 64));
        ConstantTable ct = constants(us.prec);
        double la2 = ct.log_alpha.to_double() * ct.log_alpha.to_double();
        double reg = us.reg.to_double();
        CHECK(reg >= 2 * la2 * n * n);
        CHECK(reg <= 2.0 * n * n);
    }
}

TEST_CASE("unit relation holds on each conjugate") {
    ThueInstance inst = ThueInstance::make(10);
    UnitSystem us = build_units(inst, approx_roots(inst, 128));
    Ball L(inst.luc, us.prec);
    for (int i = 0; i < 3; ++i) {
        Ball prod = Ball::mul(Ball::mul(us.delta[i], Ball::sub(us.eps[i], L)), us.eps[i]);
        CHECK(prod.contains(mpz_class(1)));
    }
}

TEST_CASE("matrix inverse norm below 7/n") {
    for (long n : {10L, 37L, 100L}) {
        ThueInstance inst = ThueInstance::make(n);
        UnitSystem us = build_units(inst, approx_roots(inst, 3 * n + 64));
        for (auto [k, l] : {std::pair<int, int>{3, 2}, {1, 3}, {1, 2}}) {
            Ball bound = Ball::div(Ball(7L, us.prec), Ball(n, us.prec));
            CHECK(Ball::cert_lt(matrix_inv_norm(us, k, l), bound) == Cert::True);
        }
    }
}

TEST_CASE("b recovery round-trips") {
    ThueInstance inst = ThueInstance::make(15);
    UnitSystem us = build_units(inst, approx_roots(inst, 512));

    auto forward = [&](int i, long b1, long b2) {
        return Ball::add(Ball::mul(Ball(b1, us.prec), us.log_eps[i - 1]),
                         Ball::mul(Ball(b2, us.prec), us.log_delta[i - 1]));
    };

    // (2, -1) through the (3, 2) system
    auto [b1, b2] = solve_b_real(us, 3, 2, forward(3, 2, -1), forward(2, 2, -1));
    CHECK(b1.contains(mpz_class(2)));
    CHECK(b2.contains(mpz_class(-1)));

    // zeros stay zeros
    auto [z1, z2] = solve_b_real(us, 1, 2, Ball(0L, us.prec), Ball(0L, us.prec));
    CHECK(z1.contains_zero());
    CHECK(z2.contains_zero());

    // random pairs within |b| <= 10 recovered within radius 1/2
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<long> d(-10, 10);
    for (int trial = 0; trial < 50; ++trial) {
        long e1 = d(rng), e2 = d(rng);
        auto [r1, r2] = solve_b_real(us, 1, 3, forward(1, e1, e2), forward(3, e1, e2));
        CHECK(r1.contains(mpz_class(e1)));
        CHECK(r2.contains(mpz_class(e2)));
        CHECK(r1.rad_to_double() < 0.5);
        CHECK(r2.rad_to_double() < 0.5);
    }
}

TEST_CASE("singular system rejected") {
    ThueInstance inst = ThueInstance::make(12);
    UnitSystem us = build_units(inst, approx_roots(inst, 256));
    CHECK_THROWS_AS(solve_b_real(us, 2, 2, Ball(0L, 256), Ball(0L, 256)),
                    std::invalid_argument);
}

TEST_CASE("exponent pair recovery") {
    ThueInstance inst = ThueInstance::make(10);
    roots::RootTriple rt = approx_roots(inst, 512);

    auto xy00 = recover_xy(inst, rt, ExponentPair{0, 0}, +1);
    REQUIRE(xy00.has_value());
    CHECK(xy00->first == 1);
    CHECK(xy00->second == 0);

    auto xy10 = recover_xy(inst, rt, ExponentPair{1, 0}, +1);
    REQUIRE(xy10.has_value());
    CHECK(xy10->first == 0);
    CHECK(xy10->second == -1);

    auto xy01 = recover_xy(inst, rt, ExponentPair{0, 1}, +1);
    REQUIRE(xy01.has_value());
    CHECK(xy01->first == -55);
    CHECK(xy01->second == -1);

    // a pair that is not a solution comes back empty
    auto none = recover_xy(inst, rt, ExponentPair{3, 2}, +1);
    CHECK(!none.has_value());
}

TEST_CASE("build_units rejects small n") {
    ThueInstance inst = ThueInstance::make(5);
    roots::RootTriple rt = approx_roots(inst, 128);
    CHECK_THROWS_AS(build_units(inst, rt), std::invalid_argument);
}
