// The unit system eps_i = a^(i), delta_i = a^(i) - F_n of Z[a^(i)], its
// conjugate-log matrix and regulator window, and recovery of (x, y) from a
// unit exponent pair.

#pragma once

#include <array>
#include <optional>
#include <utility>

#include "thuefib/roots.hpp"

namespace thuefib::units {

using roots::RootTriple;
using seq::ThueInstance;

struct ExponentPair {
    long b1 = 0;
    long b2 = 0;
};

struct UnitSystem {
    std::array<Ball, 3> eps;        // eps_i = a^(i)
    std::array<Ball, 3> delta;      // delta_i = a^(i) - F_n
    std::array<Ball, 3> log_eps;    // log|eps_i|
    std::array<Ball, 3> log_delta;  // log|delta_i|
    std::array<std::array<Ball, 2>, 2> reg_matrix;  // conjugate pair (1, 2)
    Ball reg;                                       // |det| of reg_matrix
    long n;
    mpfr_prec_t prec;
};

// Populates the system and certifies (a^(i)-F)(a^(i)-L)a^(i) = 1 and the
// regulator window 2 (log a)^2 n^2 <= reg <= 2 n^2; n >= 10.
UnitSystem build_units(const ThueInstance& inst, const RootTriple& roots);

// Solves the 2x2 system  (log|eps_k| log|delta_k|; log|eps_l| log|delta_l|)
// (b1 b2)^T = (log_beta_k log_beta_l)^T.  Indices are 1-based; throws
// std::domain_error("singular") if the determinant ball contains zero.
std::pair<Ball, Ball> solve_b_real(const UnitSystem& us, int k, int l,
                                   const Ball& log_beta_k, const Ball& log_beta_l);

// Certified upper bound of ||M^{-1}||_inf for the (k, l) system matrix.
Ball matrix_inv_norm(const UnitSystem& us, int k, int l);

// beta_i = sign * eps_i^{b1} delta_i^{b2} for i = 1, 2; solves
// x - a^(i) y = beta_i, rounds, and keeps (x, y) only if the exact form value
// is +-1.  Throws precision_error when rounding is ambiguous.
std::optional<std::pair<mpz_class, mpz_class>> recover_xy(const ThueInstance& inst,
                                                          const RootTriple& roots,
                                                          const ExponentPair& e, int sign);

}  // namespace thuefib::units
