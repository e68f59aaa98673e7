// Baker-Wuestholz lower bound, Bugeaud-Gyory upper bound, and the absolute
// bound on n obtained by intersecting them.

#pragma once

#include <vector>

#include "thuefib/ball.hpp"

namespace thuefib::bounds {

struct BakerParams {
    int t = 3;  // number of logarithms
    int D = 2;  // field degree
    std::vector<Ball> heights;
    Ball big_b;
    BakerParams() : big_b(64) {}
};

// 18 (t+1)! t^{t+1} (32 D)^{t+2} log(2 t D) * prod h_i, the coefficient of
// log B in the Baker-Wuestholz exponent.
Ball baker_coefficient(int t, int D, const std::vector<Ball>& heights, mpfr_prec_t prec);

// C = 17496 * 64^5 * log 12 * log alpha * log sqrt5 * log 2, the family's
// specialization (t = 3, D = 2, heights 1/2 log alpha, log sqrt5, log 2).
Ball baker_constant(mpfr_prec_t prec = 128);

// exp( 2 log(alpha)/(1+C) * n - log n - 5 ), a lower bound for log|y|; n >= 10.
Ball logy_lower_bound(long n, mpfr_prec_t prec = 192);

// 3^94 * 2n^2 * log(2n^2) * (2n^2 + (2n-1) log alpha + 1), an upper bound
// for log|y|; n >= 1.
Ball logy_upper_bound(long n, mpfr_prec_t prec = 192);

// Least N0 (by bisection over [10, 10^16]) such that the lower bound
// certifiably exceeds the upper bound for all sampled n > N0.
long initial_n_bound();

}  // namespace thuefib::bounds
