#include "thuefib/bounds.hpp"

#include <stdexcept>

namespace thuefib::bounds {

Ball baker_coefficient(int t, int D, const std::vector<Ball>& heights, mpfr_prec_t prec) {
    if (t < 1 || D < 1 || heights.size() != (size_t)t)
        throw std::invalid_argument("baker_coefficient: bad parameters");
    mpz_class fact = 1;
    for (int i = 2; i <= t + 1; ++i) fact *= i;
    mpz_class tpow;
    mpz_ui_pow_ui(tpow.get_mpz_t(), (unsigned long)t, (unsigned long)(t + 1));
    mpz_class dpow;
    mpz_ui_pow_ui(dpow.get_mpz_t(), (unsigned long)(32 * D), (unsigned long)(t + 2));
    mpz_class k = 18 * fact * tpow * dpow;
    Ball out(k, prec);
    out = Ball::mul(out, Ball::log(Ball((long)(2 * t * D), prec)));
    for (const Ball& h : heights) out = Ball::mul(out, h);
    return out;
}

Ball baker_constant(mpfr_prec_t prec) {
    ConstantTable ct = constants(prec);
    std::vector<Ball> heights = {Ball::div_2exp(ct.log_alpha, 1), ct.log_sqrt5, ct.log2};
    return baker_coefficient(3, 2, heights, prec);
}

Ball logy_lower_bound(long n, mpfr_prec_t prec) {
    if (n < 10) throw std::invalid_argument("logy_lower_bound: needs n >= 10");
    ConstantTable ct = constants(prec);
    Ball C = baker_constant(prec);
    Ball one(1L, prec);
    Ball q = Ball::div(Ball::mul(Ball(2L, prec), ct.log_alpha), Ball::add(one, C));
    Ball nb(n, prec);
    Ball arg = Ball::sub(Ball::sub(Ball::mul(q, nb), Ball::log(nb)), Ball(5L, prec));
    return Ball::exp(arg);
}

Ball logy_upper_bound(long n, mpfr_prec_t prec) {
    if (n < 1) throw std::invalid_argument("logy_upper_bound: needs n >= 1");
    ConstantTable ct = constants(prec);
    mpz_class n2 = 2 * mpz_class(n) * mpz_class(n);
    mpz_class p394;
    mpz_ui_pow_ui(p394.get_mpz_t(), 3, 94);
    Ball twon2(n2, prec);
    Ball last = Ball::add(Ball::add(twon2, Ball::mul(Ball(2 * n - 1, prec), ct.log_alpha)),
                          Ball(1L, prec));
    return Ball::mul(Ball::mul(Ball::mul(Ball(p394, prec), twon2), Ball::log(twon2)), last);
}

namespace {

// Certified predicate lower(n) > upper(n), escalating precision as needed.
bool crossing_reached(long n) {
    return with_escalation(192, [&](mpfr_prec_t p) {
        Cert c = Ball::cert_lt(logy_upper_bound(n, p), logy_lower_bound(n, p));
        if (c == Cert::Unknown) throw precision_error("crossing comparison inconclusive");
        return c == Cert::True;
    });
}

}  // namespace

long initial_n_bound() {
    long lo = 10;                      // crossing not reached
    long hi = 10000000000000000L;      // 10^16, crossing reached
    if (crossing_reached(lo)) throw std::logic_error("initial_n_bound: bad bracket low");
    if (!crossing_reached(hi)) throw std::logic_error("initial_n_bound: no crossing found");
    while (hi - lo > 1) {
        long mid = lo + (hi - lo) / 2;
        if (crossing_reached(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi - 1;  // largest n at which the bounds are still compatible
}

}  // namespace thuefib::bounds
