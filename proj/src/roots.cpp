#include "thuefib/roots.hpp"

#include <stdexcept>

namespace thuefib::roots {

namespace {

// Point Newton iteration in plain MPFR at precision prec.  Coefficients are
// exact integers; converges quadratically from the expansion seeds.
Real newton_point(const ThueInstance& inst, const Real& seed, mpfr_prec_t prec) {
    mpz_class A = inst.fib + inst.luc;  // X^2 coefficient (negated)
    const mpz_class& B = inst.coeff_bound;
    Real x(prec);
    mpfr_set(x.get(), seed.get(), MPFR_RNDN);
    Real f(prec), df(prec), step(prec), tmp(prec), thresh(prec);
    for (int it = 0; it < 200; ++it) {
        // f = ((x - A) x + B) x - 1
        mpfr_sub_z(f.get(), x.get(), A.get_mpz_t(), MPFR_RNDN);
        mpfr_mul(f.get(), f.get(), x.get(), MPFR_RNDN);
        mpfr_add_z(f.get(), f.get(), B.get_mpz_t(), MPFR_RNDN);
        mpfr_mul(f.get(), f.get(), x.get(), MPFR_RNDN);
        mpfr_sub_ui(f.get(), f.get(), 1, MPFR_RNDN);
        // df = (3x - 2A) x + B
        mpfr_mul_ui(df.get(), x.get(), 3, MPFR_RNDN);
        mpfr_set_z(tmp.get(), A.get_mpz_t(), MPFR_RNDN);
        mpfr_mul_2ui(tmp.get(), tmp.get(), 1, MPFR_RNDN);
        mpfr_sub(df.get(), df.get(), tmp.get(), MPFR_RNDN);
        mpfr_mul(df.get(), df.get(), x.get(), MPFR_RNDN);
        mpfr_add_z(df.get(), df.get(), B.get_mpz_t(), MPFR_RNDN);
        if (mpfr_zero_p(df.get())) break;
        mpfr_div(step.get(), f.get(), df.get(), MPFR_RNDN);
        mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
        // stop once |step| <= 2^{-prec} * max(1, |x|)
        mpfr_abs(tmp.get(), x.get(), MPFR_RNDU);
        if (mpfr_cmp_ui(tmp.get(), 1) < 0) mpfr_set_ui(tmp.get(), 1, MPFR_RNDN);
        mpfr_mul_2si(thresh.get(), tmp.get(), -(long)prec, MPFR_RNDN);
        mpfr_abs(step.get(), step.get(), MPFR_RNDU);
        if (mpfr_cmp(step.get(), thresh.get()) <= 0) break;
    }
    return x;
}

// Certifies a root in (xhat - kappa, xhat + kappa) via a sign change, then
// contracts with one interval-Newton step N = xhat - f(xhat)/f'(X).
Ball certify_root(const ThueInstance& inst, const Real& xhat, mpfr_prec_t prec) {
    Ball X = Ball::exact(xhat, prec);
    Ball kappa(1L, prec);
    kappa = Ball::div_2exp(kappa, (unsigned long)(prec / 2));
    Ball lo = Ball::sub(X, kappa);
    Ball hi = Ball::add(X, kappa);
    Cert slo = Ball::cert_sign_pos(eval_f(inst, lo));
    Cert shi = Ball::cert_sign_pos(eval_f(inst, hi));
    if (slo == Cert::Unknown || shi == Cert::Unknown || slo == shi)
        throw precision_error("certify_root: no sign change");
    // The root lies between any point of lo and any point of hi.
    Ball bracket = Ball::from_interval(lo.lower_q(), hi.upper_q(), prec);
    // Interval Newton contraction.
    Ball fx = eval_f(inst, X);
    Ball dfX = eval_df(inst, bracket);
    Ball N = Ball::sub(X, Ball::div(fx, dfX));
    if (!bracket.contains(N))
        throw precision_error("certify_root: interval Newton did not contract");
    return N;
}

Ball abs_log(const Ball& x) { return Ball::log(Ball::abs(x)); }

void check_estimate(CheckReport& rep, const std::string& what, const Ball& lhs,
                    const Ball& center, const Ball& radius) {
    Cert c = Ball::cert_le(Ball::abs(Ball::sub(lhs, center)), radius);
    if (c == Cert::Unknown) throw precision_error("estimate check inconclusive: " + what);
    rep.lines.push_back({what, c == Cert::True});
}

}  // namespace

Ball eval_f(const ThueInstance& inst, const Ball& x) {
    mpfr_prec_t p = x.prec();
    Ball F(inst.fib, p), L(inst.luc, p), one(1L, p);
    return Ball::sub(Ball::mul(Ball::mul(Ball::sub(x, F), Ball::sub(x, L)), x), one);
}

Ball eval_df(const ThueInstance& inst, const Ball& x) {
    mpfr_prec_t p = x.prec();
    Ball A(mpz_class(inst.fib + inst.luc), p), B(inst.coeff_bound, p), three(3L, p);
    return Ball::add(Ball::mul(Ball::sub(Ball::mul(three, x), Ball::add(A, A)), x), B);
}

RootTriple approx_roots(const ThueInstance& inst, mpfr_prec_t prec) {
    if (inst.n < 3)
        throw std::invalid_argument("approx_roots: three real roots require n >= 3");
    if (prec < 64) prec = 64;
    ConstantTable ct = constants(prec);

    Real seed1(prec), seed2(prec), seed3(prec);
    mpfr_set_z(seed1.get(), inst.fib.get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(seed2.get(), inst.luc.get_mpz_t(), MPFR_RNDN);
    Ball s3 = Ball::mul(ct.sqrt5, Ball::pow_si(ct.alpha, -2 * inst.n));
    mpfr_set(seed3.get(), s3.mid().get(), MPFR_RNDN);

    RootTriple rt;
    rt.n = inst.n;
    rt.prec = prec;
    rt.r1 = certify_root(inst, newton_point(inst, seed1, prec), prec);
    rt.r2 = certify_root(inst, newton_point(inst, seed2, prec), prec);
    rt.r3 = certify_root(inst, newton_point(inst, seed3, prec), prec);

    // The three enclosures must be pairwise disjoint and ordered r3 < r1 < r2.
    if (Ball::cert_lt(rt.r3, rt.r1) != Cert::True ||
        Ball::cert_lt(rt.r1, rt.r2) != Cert::True)
        throw precision_error("approx_roots: root ordering not certified");
    return rt;
}

CheckReport certify_root_brackets(const ThueInstance& inst, const RootTriple& roots) {
    if (inst.n < 10)
        throw std::invalid_argument("certify_root_brackets: constants assume n >= 10");
    mpfr_prec_t p = roots.prec;
    ConstantTable ct = constants(p);
    Ball am2n = Ball::pow_si(ct.alpha, -2 * inst.n);
    Ball am4n = Ball::mul(am2n, am2n);

    struct Case {
        Ball center;
        Ball kappa;
        const char* name;
    };
    std::array<Case, 3> cases = {
        Case{Ball(inst.fib, p), Ball::mul(Ball(6L, p), am2n), "root near F_n within 6a^-2n"},
        Case{Ball(inst.luc, p), Ball::mul(Ball(4L, p), am2n), "root near L_n within 4a^-2n"},
        Case{Ball::mul(ct.sqrt5, am2n), am4n, "root near sqrt5 a^-2n within a^-4n"},
    };

    CheckReport rep;
    for (auto& c : cases) {
        Ball lo = Ball::sub(c.center, c.kappa);
        Ball hi = Ball::add(c.center, c.kappa);
        Cert slo = Ball::cert_sign_pos(eval_f(inst, lo));
        Cert shi = Ball::cert_sign_pos(eval_f(inst, hi));
        if (slo == Cert::Unknown || shi == Cert::Unknown)
            throw precision_error("certify_root_brackets: inconclusive precision");
        rep.lines.push_back({c.name, slo != shi});
    }
    return rep;
}

CheckReport certify_log_estimates(const ThueInstance& inst, const RootTriple& roots) {
    if (inst.n < 10)
        throw std::invalid_argument("certify_log_estimates: constants assume n >= 10");
    mpfr_prec_t p = roots.prec;
    ConstantTable ct = constants(p);
    long n = inst.n;
    Ball nb(n, p);
    Ball nloga = Ball::mul(nb, ct.log_alpha);
    Ball am2n = Ball::pow_si(ct.alpha, -2 * n);
    Ball amn = Ball::pow_si(ct.alpha, -n);
    Ball F(inst.fib, p);
    Ball one(1L, p), five(5L, p);

    // log(5 / (sqrt5 - 1)) and log(1 - 1/sqrt5)
    Ball log5_over = Ball::sub(Ball::log(five), ct.log_sqrt5_minus1);
    Ball log_1m = Ball::log(Ball::sub(one, Ball::inv(ct.sqrt5)));

    auto times = [&](long k, const Ball& b) { return Ball::mul(Ball(k, p), b); };

    CheckReport rep;
    // log|a^(1)| = n log a - log sqrt5 + L(3 a^-2n)
    check_estimate(rep, "log|a1|", abs_log(roots.r1), Ball::sub(nloga, ct.log_sqrt5),
                   times(3, am2n));
    // log|a^(1) - F_n| = -2n log a + log(5/(sqrt5-1)) + L(6 a^-n)
    check_estimate(rep, "log|a1 - F|", abs_log(Ball::sub(roots.r1, F)),
                   Ball::add(times(-2, nloga), log5_over), times(6, amn));
    // log|a^(2)| = n log a + L(4 a^-2n)
    check_estimate(rep, "log|a2|", abs_log(roots.r2), nloga, times(4, am2n));
    // log|a^(2) - F_n| = n log a + log(1 - 1/sqrt5) + L(6 a^-2n)
    check_estimate(rep, "log|a2 - F|", abs_log(Ball::sub(roots.r2, F)),
                   Ball::add(nloga, log_1m), times(6, am2n));
    // log|a^(3)| = -2n log a + log sqrt5 + L(a^-2n)
    check_estimate(rep, "log|a3|", abs_log(roots.r3),
                   Ball::add(times(-2, nloga), ct.log_sqrt5), am2n);
    // log|a^(3) - F_n| = n log a - log sqrt5 + L(3 a^-2n)
    check_estimate(rep, "log|a3 - F|", abs_log(Ball::sub(roots.r3, F)),
                   Ball::sub(nloga, ct.log_sqrt5), times(3, am2n));
    return rep;
}

}  // namespace thuefib::roots
