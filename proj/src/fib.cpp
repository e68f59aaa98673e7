#include "thuefib/fib.hpp"

#include <stdexcept>

namespace thuefib::seq {

mpz_class fib(long n) {
    if (n < 0) throw std::invalid_argument("fib: negative index");
    mpz_class a = 0, b = 1;  // F_0, F_1
    for (long i = 0; i < n; ++i) {
        mpz_class next = a + b;
        a = b;
        b = next;
    }
    return a;
}

mpz_class lucas(long n) {
    if (n < 0) throw std::invalid_argument("lucas: negative index");
    mpz_class a = 2, b = 1;  // L_0, L_1
    for (long i = 0; i < n; ++i) {
        mpz_class next = a + b;
        a = b;
        b = next;
    }
    return a;
}

ThueInstance ThueInstance::make(long n) {
    if (n < 1) throw std::invalid_argument("ThueInstance: n must be positive");
    ThueInstance inst;
    inst.n = n;
    inst.fib = seq::fib(n);
    inst.luc = seq::lucas(n);
    inst.coeff_bound = inst.fib * inst.luc;
    return inst;
}

mpz_class ThueInstance::form_value(const mpz_class& x, const mpz_class& y) const {
    return (x - fib * y) * (x - luc * y) * x - y * y * y;
}

bool check_fib_envelope(long n, mpfr_prec_t prec) {
    if (n < 6) throw std::invalid_argument("check_fib_envelope: needs n >= 6");
    ConstantTable ct = constants(prec);
    Ball fn(fib(n), prec);
    Ball eleven(11L, prec);
    Ball a_mn = Ball::pow_si(ct.alpha, -n);
    Ball margin = Ball::mul(eleven, a_mn);
    Ball lo = Ball::pow_si(ct.alpha, n - 2);
    Ball hi = Ball::pow_si(ct.alpha, n - 1);
    Cert c1 = Ball::cert_le(lo, Ball::sub(fn, margin));
    Cert c2 = Ball::cert_le(Ball::add(fn, margin), hi);
    if (c1 == Cert::Unknown || c2 == Cert::Unknown)
        throw precision_error("check_fib_envelope: inconclusive precision");
    return c1 == Cert::True && c2 == Cert::True;
}

}  // namespace thuefib::seq
