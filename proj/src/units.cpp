#include "thuefib/units.hpp"

#include <stdexcept>

namespace thuefib::units {

UnitSystem build_units(const ThueInstance& inst, const RootTriple& roots) {
    if (inst.n < 10) throw std::invalid_argument("build_units: needs n >= 10");
    mpfr_prec_t p = roots.prec;
    UnitSystem us;
    us.n = inst.n;
    us.prec = p;
    us.eps = {roots.r1, roots.r2, roots.r3};
    Ball F(inst.fib, p);
    Ball L(inst.luc, p);
    Ball one(1L, p);
    for (int i = 0; i < 3; ++i) {
        us.delta[i] = Ball::sub(us.eps[i], F);
        // (a^(i) - F)(a^(i) - L) a^(i) = 1
        Ball prod = Ball::mul(Ball::mul(us.delta[i], Ball::sub(us.eps[i], L)), us.eps[i]);
        if (!prod.contains(mpz_class(1)))
            throw precision_error("build_units: unit relation not certified");
        us.log_eps[i] = Ball::log(Ball::abs(us.eps[i]));
        us.log_delta[i] = Ball::log(Ball::abs(us.delta[i]));
    }
    us.reg_matrix = {{{us.log_eps[0], us.log_delta[0]}, {us.log_eps[1], us.log_delta[1]}}};
    Ball det = Ball::sub(Ball::mul(us.reg_matrix[0][0], us.reg_matrix[1][1]),
                         Ball::mul(us.reg_matrix[0][1], us.reg_matrix[1][0]));
    us.reg = Ball::abs(det);

    // Regulator window 2 (log a)^2 n^2 <= R <= 2 n^2.
    ConstantTable ct = constants(p);
    Ball n2(mpz_class(mpz_class(inst.n) * inst.n), p);
    Ball lo = Ball::mul(Ball::mul(Ball(2L, p), Ball::mul(ct.log_alpha, ct.log_alpha)), n2);
    Ball hi = Ball::mul(Ball(2L, p), n2);
    if (Ball::cert_le(lo, us.reg) != Cert::True || Ball::cert_le(us.reg, hi) != Cert::True)
        throw precision_error("build_units: regulator window not certified");
    return us;
}

std::pair<Ball, Ball> solve_b_real(const UnitSystem& us, int k, int l,
                                   const Ball& log_beta_k, const Ball& log_beta_l) {
    if (k == l || k < 1 || k > 3 || l < 1 || l > 3)
        throw std::invalid_argument("solve_b_real: bad indices");
    const Ball& a = us.log_eps[k - 1];
    const Ball& b = us.log_delta[k - 1];
    const Ball& c = us.log_eps[l - 1];
    const Ball& d = us.log_delta[l - 1];
    Ball det = Ball::sub(Ball::mul(a, d), Ball::mul(b, c));
    if (det.contains_zero()) throw std::domain_error("solve_b_real: singular system");
    Ball b1 = Ball::div(Ball::sub(Ball::mul(log_beta_k, d), Ball::mul(b, log_beta_l)), det);
    Ball b2 = Ball::div(Ball::sub(Ball::mul(a, log_beta_l), Ball::mul(log_beta_k, c)), det);
    return {b1, b2};
}

Ball matrix_inv_norm(const UnitSystem& us, int k, int l) {
    // ||M^{-1}||_inf = max(|log|delta_l|| + |log|delta_k||,
    //                      |log|eps_l|| + |log|eps_k||) / |det M|
    const Ball& a = us.log_eps[k - 1];
    const Ball& b = us.log_delta[k - 1];
    const Ball& c = us.log_eps[l - 1];
    const Ball& d = us.log_delta[l - 1];
    Ball det = Ball::abs(Ball::sub(Ball::mul(a, d), Ball::mul(b, c)));
    if (det.contains_zero()) throw std::domain_error("matrix_inv_norm: singular system");
    Ball rows1 = Ball::add(Ball::abs(d), Ball::abs(b));
    Ball rows2 = Ball::add(Ball::abs(c), Ball::abs(a));
    Cert lt = Ball::cert_lt(rows1, rows2);
    Ball num = (lt == Cert::True) ? rows2
               : (lt == Cert::False) ? rows1
                                     : Ball::add(rows1, rows2);  // safe overestimate
    return Ball::div(num, det);
}

std::optional<std::pair<mpz_class, mpz_class>> recover_xy(const ThueInstance& inst,
                                                          const RootTriple& roots,
                                                          const ExponentPair& e, int sign) {
    mpfr_prec_t p = roots.prec;
    Ball F(inst.fib, p);
    Ball beta1 = Ball::mul(Ball::pow_si(roots.r1, e.b1),
                           Ball::pow_si(Ball::sub(roots.r1, F), e.b2));
    Ball beta2 = Ball::mul(Ball::pow_si(roots.r2, e.b1),
                           Ball::pow_si(Ball::sub(roots.r2, F), e.b2));
    if (sign < 0) {
        beta1 = Ball::neg(beta1);
        beta2 = Ball::neg(beta2);
    }
    // x - r1 y = beta1, x - r2 y = beta2  =>  y = (beta1-beta2)/(r2-r1).
    Ball y = Ball::div(Ball::sub(beta1, beta2), Ball::sub(roots.r2, roots.r1));
    Ball x = Ball::add(beta1, Ball::mul(roots.r1, y));
    mpq_class quarter(1, 4);
    if (mpq_class(x.upper_q() - x.lower_q()) > 2 * quarter ||
        mpq_class(y.upper_q() - y.lower_q()) > 2 * quarter)
        throw precision_error("recover_xy: rounding radius too large");
    mpz_class xi = x.round_nearest();
    mpz_class yi = y.round_nearest();
    mpz_class v = inst.form_value(xi, yi);
    if (v == 1 || v == -1) return std::make_pair(xi, yi);
    return std::nullopt;
}

}  // namespace thuefib::units
