// Arbitrary-precision real arithmetic with rigorous error tracking.
//
// A Ball is a midpoint-radius pair (m, r): it stands for the set of reals
// [m - r, m + r], and every operation returns a ball that contains the exact
// image of any points of the input balls.  Midpoints are MPFR values at the
// working precision; radii are small upward-rounded MPFR values.  Nothing is
// ever claimed without a certified comparison: predicates return a tri-state
// and callers escalate precision on Unknown.

#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <array>
#include <stdexcept>
#include <string>
#include <utility>

namespace thuefib {

// Raised when a certified computation cannot decide at the working precision.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

enum class Cert { True, False, Unknown };

// Minimal RAII wrapper over mpfr_t.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string to_string(size_t digits = 20) const;

private:
    mpfr_t v_;
};

class Ball {
public:
    explicit Ball(mpfr_prec_t prec = 64);
    Ball(long value, mpfr_prec_t prec);
    Ball(const mpz_class& value, mpfr_prec_t prec);
    Ball(const mpq_class& value, mpfr_prec_t prec);

    // Zero-radius ball from a point value (radius bump only if the target
    // precision cannot represent it exactly).
    static Ball exact(const Real& x, mpfr_prec_t prec);

    // Ball covering the exact rational interval [lo, hi].
    static Ball from_interval(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return mid_.prec(); }
    const Real& mid() const { return mid_; }
    const Real& rad() const { return rad_; }

    bool rad_is_zero() const { return mpfr_zero_p(rad_.get()); }

    // Endpoints as outward-rounded Reals at midpoint precision.
    Real upper() const;
    Real lower() const;

    // Exact endpoints as rationals (midpoints and radii are dyadic).
    mpq_class upper_q() const;
    mpq_class lower_q() const;

    double to_double() const { return mid_.to_double(); }
    double rad_to_double() const { return rad_.to_double(); }
    std::string to_string(size_t digits = 20) const;

    bool contains_zero() const;
    bool contains(const mpz_class& v) const;
    bool contains(const Ball& other) const;  // other's interval inside ours

    // Grow the radius by |mid|*eps2^{-k}-style absolute amount.
    void inflate_abs(const Ball& amount);

    static Ball add(const Ball& a, const Ball& b);
    static Ball sub(const Ball& a, const Ball& b);
    static Ball mul(const Ball& a, const Ball& b);
    static Ball div(const Ball& a, const Ball& b);
    static Ball neg(const Ball& a);
    static Ball abs(const Ball& a);
    static Ball inv(const Ball& a);
    static Ball sqrt(const Ball& a);
    static Ball log(const Ball& a);
    static Ball exp(const Ball& a);
    static Ball pow_si(const Ball& a, long e);
    static Ball div_2exp(const Ball& a, unsigned long k);  // exact

    static Cert cert_lt(const Ball& a, const Ball& b);
    static Cert cert_le(const Ball& a, const Ball& b);
    // Sign of every point: True = all positive, False = all negative.
    static Cert cert_sign_pos(const Ball& a);

    // Nearest integer, ties away from zero; certified unique or throws.
    mpz_class round_nearest() const;
    // Integer bounds valid for every point of the ball.
    mpz_class ceil_upper() const;
    mpz_class floor_lower() const;

private:
    Real mid_;
    Real rad_;  // kept at RADIUS_PREC, always >= 0, rounded up

    static constexpr mpfr_prec_t RADIUS_PREC = 32;

    void bump_rounding(int ternary);
    friend Ball operator+(const Ball& a, const Ball& b) { return Ball::add(a, b); }
    friend Ball operator-(const Ball& a, const Ball& b) { return Ball::sub(a, b); }
    friend Ball operator*(const Ball& a, const Ball& b) { return Ball::mul(a, b); }
    friend Ball operator/(const Ball& a, const Ball& b) { return Ball::div(a, b); }
    friend Ball operator-(const Ball& a) { return Ball::neg(a); }
};

// Shared constants: alpha = (1+sqrt5)/2 and the logarithms appearing in the
// linear forms.  All fields certified at the requested precision.
struct ConstantTable {
    Ball alpha;
    Ball sqrt5;
    Ball log_alpha;
    Ball log_sqrt5;
    Ball log_sqrt5_minus1;  // log(sqrt5 - 1)
    Ball log2;
    mpfr_prec_t prec;
};

ConstantTable constants(mpfr_prec_t prec);

// Runs f(prec) and doubles the precision on precision_error, up to
// 2^max_doublings times the start (default cap 16x), then rethrows.
template <class F>
auto with_escalation(mpfr_prec_t start_prec, F&& f, int max_doublings = 4) {
    mpfr_prec_t p = start_prec;
    for (int i = 0;; ++i, p *= 2) {
        try {
            return f(p);
        } catch (const precision_error&) {
            if (i >= max_doublings) throw;
        }
    }
}

}  // namespace thuefib
