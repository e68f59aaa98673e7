#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thuefib/reduction.hpp"

using namespace thuefib;
using namespace thuefib::red;

TEST_CASE("phase constants reproduce the published magnitudes") {
    // c2(1.144e15) ~ 2.036e108 and c_x(1.144e15) ~ 1.425e109
    long n = 1144000000000000L;
    CHECK(xi_c2(n, 384).to_double() == doctest::Approx(2.036e108).epsilon(2e-3));
    CHECK(xi_cx(n, 384).to_double() == doctest::Approx(1.425e109).epsilon(2e-3));
}

TEST_CASE("smart_reduce rejects a singular lattice") {
    Ball zero(0L, 128), one(1L, 128);
    std::array<Ball, 3> logs = {zero, zero, zero};
    CHECK_THROWS_AS(
        smart_reduce(mpz_class(1000), one, one, {one, one, one}, logs),
        std::invalid_argument);
}

TEST_CASE("phase1 chain is monotone and ends at a fixpoint") {
    Phase1Result res = phase1(1144000000000000L);
    REQUIRE(res.chain.size() >= 3);
    for (size_t i = 1; i < res.chain.size(); ++i) CHECK(res.chain[i] < res.chain[i - 1]);
    // the recorded last step failed to decrease the bound
    const ReductionState& last = res.steps.back();
    CHECK(std::max(last.new_bound, last.cert_bound) >= res.chain.back());
    // every accepted step satisfied both length conditions
    for (const auto& st : res.steps) {
        CHECK(st.cond_ok);
        CHECK(st.cert_ok);
        mpq_class need = mpq_class(st.t_up) * mpq_class(st.t_up) + mpq_class(st.s_up);
        CHECK(mpq_class(st.c4_sq) >= need);
        CHECK(st.gs_min_sq >= need);
    }
    CHECK(res.chain.back() < 1000);
}

TEST_CASE("phase2 eliminates a sample range above the survivors") {
    PhaseResult pr = phase2(200, 210, 2);
    for (const PerN& pn : pr.per_n) {
        CHECK(pn.eliminated);
        CHECK(pn.b_box.fits_slong_p());
    }
    CHECK(pr.threshold <= 199);
}

TEST_CASE("phase3 eliminates the convergent-checked range") {
    PhaseResult pr = phase3(120, 132, 2);
    for (const PerN& pn : pr.per_n) CHECK(pn.eliminated);
    CHECK(pr.threshold <= 119);
}

TEST_CASE("exponent boxes for the solver are small") {
    for (long n : {10L, 25L, 48L}) {
        PerN pn = exponent_box(n);
        CHECK(pn.eliminated);  // |y| >= 2 ruled out entirely
        CHECK(pn.b_box.fits_slong_p());
        CHECK(pn.b_box.get_si() <= 20);
    }
}

TEST_CASE("golden ratio convergents") {
    ConstantTable ct = constants(128);
    auto cv = continued_fraction(ct.alpha, mpz_class(100));
    // F_{k+1}/F_k: 1/1, 2/1, 3/2, 5/3, 8/5, ..., 89/55, 144/89
    REQUIRE(cv.size() == 11);
    CHECK(cv[0].p == 1);
    CHECK(cv[0].q == 1);
    CHECK(cv[1].p == 2);
    CHECK(cv[1].q == 1);
    CHECK(cv[9].p == 89);
    CHECK(cv[9].q == 55);
    CHECK(cv[10].p == 144);
    CHECK(cv[10].q == 89);
}

TEST_CASE("sqrt5 convergents") {
    ConstantTable ct = constants(128);
    auto cv = continued_fraction(ct.sqrt5, mpz_class(50));
    REQUIRE(cv.size() == 3);
    CHECK(cv[0].p == 2);
    CHECK(cv[1].p == 9);
    CHECK(cv[1].q == 4);
    CHECK(cv[2].p == 38);
    CHECK(cv[2].q == 17);
}

TEST_CASE("convergents of a root against the best-approximation oracle") {
    seq::ThueInstance inst = seq::ThueInstance::make(10);
    roots::RootTriple rt = roots::approx_roots(inst, 512);
    auto cv = continued_fraction(rt.r1, mpz_class(1000000));
    // |x - p/q| < 1/q^2 for every convergent
    for (const auto& c : cv) {
        Ball gap = Ball::abs(Ball::sub(rt.r1, Ball(mpq_class(c.p, c.q), 512)));
        Ball lim = Ball(mpq_class(1, c.q * c.q), 512);
        CHECK(Ball::cert_lt(gap, lim) == Cert::True);
    }
    // classical best-approximation property: from the first convergent on,
    // |q_k x - p_k| beats |q' x - p'| for every q' < q_k and every p'
    mpq_class mid = (rt.r1.lower_q() + rt.r1.upper_q()) / 2;
    for (size_t i = 1; i < cv.size() && cv[i].q <= 1000; ++i) {
        mpq_class ek = cv[i].q * mid - cv[i].p;
        ek = ::abs(ek);
        for (long q = 1; q < cv[i].q; ++q) {
            mpz_class p = nearest_int(mpq_class(q * mid));
            mpq_class e = q * mid - p;
            e = ::abs(e);
            CHECK(e > ek);
        }
    }
    // CF recurrence cross-check: p_k = a_k p_{k-1} + p_{k-2} implies the
    // classical determinant identity p_k q_{k-1} - p_{k-1} q_k = +-1
    for (size_t i = 1; i < cv.size(); ++i) {
        mpz_class d = cv[i].p * cv[i - 1].q - cv[i - 1].p * cv[i].q;
        CHECK((d == 1 || d == -1));
    }
}

TEST_CASE("convergent check across the lemma range boundary cases") {
    CHECK(convergent_check(49));
    CHECK(convergent_check(132));
    CHECK_FALSE(convergent_check(3));  // (7, 4) is a convergent solution
}

TEST_CASE("precision exhaustion reported") {
    Ball wide(mpq_class(355, 113), 64);
    wide.inflate_abs(Ball(mpq_class(1, 100), 64));
    CHECK_THROWS_AS(continued_fraction(wide, mpz_class(100000)), precision_error);
}
