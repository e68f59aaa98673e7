#include "thuefib/ball.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace thuefib {

namespace {

// Half-ulp of x at precision prec: an upper bound for the round-to-nearest
// error of any correctly rounded operation that produced x.
void half_ulp(mpfr_ptr out, mpfr_srcptr x, mpfr_prec_t prec) {
    if (mpfr_zero_p(x)) {
        // A rounded-to-zero nonzero value cannot occur in our exponent range;
        // ternary==0 zeros never reach here.
        mpfr_set_ui_2exp(out, 1, -4 * (long)prec, MPFR_RNDU);
        return;
    }
    mpfr_set_ui_2exp(out, 1, mpfr_get_exp(x) - (long)prec - 1, MPFR_RNDU);
}

}  // namespace

std::string Real::to_string(size_t digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", (int)digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Ball::Ball(mpfr_prec_t prec) : mid_(prec), rad_(RADIUS_PREC) {}

Ball::Ball(long value, mpfr_prec_t prec) : mid_(prec), rad_(RADIUS_PREC) {
    int t = mpfr_set_si(mid_.get(), value, MPFR_RNDN);
    bump_rounding(t);
}

Ball::Ball(const mpz_class& value, mpfr_prec_t prec) : mid_(prec), rad_(RADIUS_PREC) {
    int t = mpfr_set_z(mid_.get(), value.get_mpz_t(), MPFR_RNDN);
    bump_rounding(t);
}

Ball::Ball(const mpq_class& value, mpfr_prec_t prec) : mid_(prec), rad_(RADIUS_PREC) {
    int t = mpfr_set_q(mid_.get(), value.get_mpq_t(), MPFR_RNDN);
    bump_rounding(t);
}

Ball Ball::exact(const Real& x, mpfr_prec_t prec) {
    Ball r(prec);
    int t = mpfr_set(r.mid_.get(), x.get(), MPFR_RNDN);
    r.bump_rounding(t);
    return r;
}

Ball Ball::from_interval(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec) {
    if (hi < lo) throw std::invalid_argument("from_interval: hi < lo");
    Ball r(mpq_class((lo + hi) / 2), prec);
    Real half(RADIUS_PREC);
    mpfr_set_q(half.get(), mpq_class((hi - lo) / 2).get_mpq_t(), MPFR_RNDU);
    mpfr_add(r.rad_.get(), r.rad_.get(), half.get(), MPFR_RNDU);
    return r;
}

void Ball::bump_rounding(int ternary) {
    if (ternary == 0) return;
    Real h(RADIUS_PREC);
    half_ulp(h.get(), mid_.get(), mid_.prec());
    mpfr_add(rad_.get(), rad_.get(), h.get(), MPFR_RNDU);
}

Real Ball::upper() const {
    Real r(mid_.prec() + RADIUS_PREC);
    mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
    return r;
}

Real Ball::lower() const {
    Real r(mid_.prec() + RADIUS_PREC);
    mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
    return r;
}

static mpq_class mpfr_to_q(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return mpq_class(0);
    mpz_class mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
    mpq_class q(mant);
    if (e >= 0) {
        mpz_class p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, (unsigned long)e);
        q *= p2;
    } else {
        mpz_class p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, (unsigned long)(-e));
        q /= p2;
    }
    q.canonicalize();
    return q;
}

mpq_class Ball::upper_q() const { return mpfr_to_q(mid_.get()) + mpfr_to_q(rad_.get()); }
mpq_class Ball::lower_q() const { return mpfr_to_q(mid_.get()) - mpfr_to_q(rad_.get()); }

std::string Ball::to_string(size_t digits) const {
    return mid_.to_string(digits) + " +/- " + rad_.to_string(4);
}

bool Ball::contains_zero() const {
    Real a(RADIUS_PREC);
    mpfr_abs(a.get(), mid_.get(), MPFR_RNDU);
    return mpfr_cmp(a.get(), rad_.get()) <= 0;
}

bool Ball::contains(const mpz_class& v) const {
    mpq_class q(v);
    return lower_q() <= q && q <= upper_q();
}

bool Ball::contains(const Ball& other) const {
    return lower_q() <= other.lower_q() && other.upper_q() <= upper_q();
}

void Ball::inflate_abs(const Ball& amount) {
    Real u(RADIUS_PREC);
    mpfr_abs(u.get(), amount.mid_.get(), MPFR_RNDU);
    mpfr_add(u.get(), u.get(), amount.rad_.get(), MPFR_RNDU);
    mpfr_add(rad_.get(), rad_.get(), u.get(), MPFR_RNDU);
}

Ball Ball::add(const Ball& a, const Ball& b) {
    Ball r(std::max(a.prec(), b.prec()));
    int t = mpfr_add(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    r.bump_rounding(t);
    return r;
}

Ball Ball::sub(const Ball& a, const Ball& b) {
    Ball r(std::max(a.prec(), b.prec()));
    int t = mpfr_sub(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    r.bump_rounding(t);
    return r;
}

Ball Ball::mul(const Ball& a, const Ball& b) {
    Ball r(std::max(a.prec(), b.prec()));
    int t = mpfr_mul(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    // rad = |am|*rb + |bm|*ra + ra*rb
    Real am(RADIUS_PREC), bm(RADIUS_PREC), t1(RADIUS_PREC), t2(RADIUS_PREC);
    mpfr_abs(am.get(), a.mid_.get(), MPFR_RNDU);
    mpfr_abs(bm.get(), b.mid_.get(), MPFR_RNDU);
    mpfr_mul(t1.get(), am.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_mul(t2.get(), bm.get(), a.rad_.get(), MPFR_RNDU);
    mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDU);
    mpfr_mul(t2.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_add(r.rad_.get(), t1.get(), t2.get(), MPFR_RNDU);
    r.bump_rounding(t);
    return r;
}

Ball Ball::div(const Ball& a, const Ball& b) {
    // |x/y - am/bm| <= (|bm| ra + |am| rb) / (|bm| (|bm| - rb))
    Ball r(std::max(a.prec(), b.prec()));
    Real bm(RADIUS_PREC), lo(RADIUS_PREC);
    mpfr_abs(bm.get(), b.mid_.get(), MPFR_RNDD);
    mpfr_sub(lo.get(), bm.get(), b.rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(lo.get()) <= 0)
        throw precision_error("div: denominator ball contains zero");
    int t = mpfr_div(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    Real am(RADIUS_PREC), num(RADIUS_PREC), t2(RADIUS_PREC), den(RADIUS_PREC);
    mpfr_abs(am.get(), a.mid_.get(), MPFR_RNDU);
    mpfr_abs(num.get(), b.mid_.get(), MPFR_RNDU);
    mpfr_mul(num.get(), num.get(), a.rad_.get(), MPFR_RNDU);
    mpfr_mul(t2.get(), am.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_add(num.get(), num.get(), t2.get(), MPFR_RNDU);
    mpfr_mul(den.get(), bm.get(), lo.get(), MPFR_RNDD);
    mpfr_div(r.rad_.get(), num.get(), den.get(), MPFR_RNDU);
    r.bump_rounding(t);
    return r;
}

Ball Ball::neg(const Ball& a) {
    Ball r(a.prec());
    mpfr_neg(r.mid_.get(), a.mid_.get(), MPFR_RNDN);  // exact
    mpfr_set(r.rad_.get(), a.rad_.get(), MPFR_RNDU);
    return r;
}

Ball Ball::abs(const Ball& a) {
    Cert s = cert_sign_pos(a);
    if (s == Cert::True) return a;
    if (s == Cert::False) return neg(a);
    // Straddles zero: enclose |X| by [0, max(|lo|,|hi|)].
    Ball r(a.prec());
    Real hi(RADIUS_PREC);
    mpfr_abs(hi.get(), a.mid_.get(), MPFR_RNDU);
    mpfr_add(hi.get(), hi.get(), a.rad_.get(), MPFR_RNDU);
    mpfr_div_2ui(hi.get(), hi.get(), 1, MPFR_RNDU);
    int t = mpfr_set(r.mid_.get(), hi.get(), MPFR_RNDN);
    mpfr_set(r.rad_.get(), hi.get(), MPFR_RNDU);
    r.bump_rounding(t);
    return r;
}

Ball Ball::inv(const Ball& a) {
    Ball one(1L, a.prec());
    return div(one, a);
}

Ball Ball::sqrt(const Ball& a) {
    Ball r(a.prec());
    Real lo(RADIUS_PREC);
    mpfr_abs(lo.get(), a.mid_.get(), MPFR_RNDD);
    if (mpfr_sgn(a.mid_.get()) < 0) throw precision_error("sqrt: negative midpoint");
    mpfr_sub(lo.get(), lo.get(), a.rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(lo.get()) < 0) throw precision_error("sqrt: ball extends below zero");
    int t = mpfr_sqrt(r.mid_.get(), a.mid_.get(), MPFR_RNDN);
    if (mpfr_zero_p(lo.get())) {
        // Enclosure [0, sqrt(hi)]: use sqrt(hi) as the radius.
        Real hi(RADIUS_PREC);
        mpfr_add(hi.get(), a.mid_.get(), a.rad_.get(), MPFR_RNDU);
        mpfr_sqrt(r.rad_.get(), hi.get(), MPFR_RNDU);
    } else {
        // |sqrt x - sqrt m| <= r / (2 sqrt(m - r))
        Real s(RADIUS_PREC);
        mpfr_sqrt(s.get(), lo.get(), MPFR_RNDD);
        mpfr_mul_2ui(s.get(), s.get(), 1, MPFR_RNDD);
        mpfr_div(r.rad_.get(), a.rad_.get(), s.get(), MPFR_RNDU);
    }
    r.bump_rounding(t);
    return r;
}

Ball Ball::log(const Ball& a) {
    Ball r(a.prec());
    Real lo(a.prec());
    mpfr_sub(lo.get(), a.mid_.get(), a.rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(lo.get()) <= 0)
        throw std::domain_error("log: ball touches (-inf, 0]");
    int t = mpfr_log(r.mid_.get(), a.mid_.get(), MPFR_RNDN);
    // sup of 1/x on the interval is 1/(m - r).
    Real lo32(RADIUS_PREC);
    mpfr_set(lo32.get(), lo.get(), MPFR_RNDD);
    mpfr_div(r.rad_.get(), a.rad_.get(), lo32.get(), MPFR_RNDU);
    r.bump_rounding(t);
    return r;
}

Ball Ball::exp(const Ball& a) {
    Ball r(a.prec());
    int t = mpfr_exp(r.mid_.get(), a.mid_.get(), MPFR_RNDN);
    Real hi(a.prec());
    mpfr_add(hi.get(), a.mid_.get(), a.rad_.get(), MPFR_RNDU);
    Real ehi(RADIUS_PREC);
    mpfr_exp(ehi.get(), hi.get(), MPFR_RNDU);
    mpfr_mul(r.rad_.get(), a.rad_.get(), ehi.get(), MPFR_RNDU);
    r.bump_rounding(t);
    return r;
}

Ball Ball::pow_si(const Ball& a, long e) {
    if (e < 0) return inv(pow_si(a, -e));
    Ball acc(1L, a.prec());
    Ball base = a;
    unsigned long k = (unsigned long)e;
    while (k > 0) {
        if (k & 1) acc = mul(acc, base);
        k >>= 1;
        if (k > 0) base = mul(base, base);
    }
    return acc;
}

Ball Ball::div_2exp(const Ball& a, unsigned long k) {
    Ball r(a.prec());
    mpfr_div_2ui(r.mid_.get(), a.mid_.get(), k, MPFR_RNDN);  // exact
    mpfr_div_2ui(r.rad_.get(), a.rad_.get(), k, MPFR_RNDU);
    return r;
}

Cert Ball::cert_lt(const Ball& a, const Ball& b) {
    Real ua = a.upper(), lb = b.lower();
    if (mpfr_cmp(ua.get(), lb.get()) < 0) return Cert::True;
    Real la = a.lower(), ub = b.upper();
    if (mpfr_cmp(la.get(), ub.get()) >= 0) return Cert::False;
    return Cert::Unknown;
}

Cert Ball::cert_le(const Ball& a, const Ball& b) {
    Real ua = a.upper(), lb = b.lower();
    if (mpfr_cmp(ua.get(), lb.get()) <= 0) return Cert::True;
    Real la = a.lower(), ub = b.upper();
    if (mpfr_cmp(la.get(), ub.get()) > 0) return Cert::False;
    return Cert::Unknown;
}

Cert Ball::cert_sign_pos(const Ball& a) {
    Real lo = a.lower();
    if (mpfr_sgn(lo.get()) > 0) return Cert::True;
    Real hi = a.upper();
    if (mpfr_sgn(hi.get()) < 0) return Cert::False;
    return Cert::Unknown;
}

mpz_class Ball::round_nearest() const {
    Real r(mid_.prec());
    mpfr_round(r.get(), mid_.get());  // nearest, halfway away from zero
    mpz_class m;
    mpfr_get_z(m.get_mpz_t(), r.get(), MPFR_RNDN);
    // Certify: |x - m| < 1/2 for every point x of the ball.
    mpq_class dlo = lower_q() - mpq_class(m);
    mpq_class dhi = upper_q() - mpq_class(m);
    mpq_class half(1, 2);
    if (-half < dlo && dhi < half) return m;
    throw precision_error("round_nearest: ball too wide to round");
}

mpz_class Ball::ceil_upper() const {
    mpq_class u = upper_q();
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), u.get_num().get_mpz_t(), u.get_den().get_mpz_t());
    return q;
}

mpz_class Ball::floor_lower() const {
    mpq_class l = lower_q();
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), l.get_num().get_mpz_t(), l.get_den().get_mpz_t());
    return q;
}

ConstantTable constants(mpfr_prec_t prec) {
    Ball five(5L, prec);
    Ball sqrt5 = Ball::sqrt(five);
    Ball one(1L, prec);
    Ball alpha = Ball::div_2exp(Ball::add(one, sqrt5), 1);
    Ball log_alpha = Ball::log(alpha);
    Ball log_sqrt5 = Ball::log(sqrt5);
    Ball log_s5m1 = Ball::log(Ball::sub(sqrt5, one));
    Ball log2 = Ball::log(Ball(2L, prec));
    return ConstantTable{std::move(alpha), std::move(sqrt5),    std::move(log_alpha),
                         std::move(log_sqrt5), std::move(log_s5m1), std::move(log2), prec};
}

}  // namespace thuefib
