// Certified enclosures of the three real roots of
//   f_n(X) = (X - F_n)(X - L_n) X - 1
// and numeric certification of their first- and log-order expansions.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "thuefib/ball.hpp"
#include "thuefib/fib.hpp"

namespace thuefib::roots {

using seq::ThueInstance;

struct RootTriple {
    Ball r1;  // near F_n
    Ball r2;  // near L_n
    Ball r3;  // near sqrt5 * alpha^{-2n}, the smallest root
    long n;
    mpfr_prec_t prec;
};

// f_n evaluated on a ball, with exact integer coefficients.
Ball eval_f(const ThueInstance& inst, const Ball& x);
// f_n'(X) = 3X^2 - 2(F+L)X + FL on a ball.
Ball eval_df(const ThueInstance& inst, const Ball& x);

// Newton from the expansion seeds, then a sign-change bracket at radius
// 2^{-prec/2} and one interval-Newton contraction.  Throws precision_error
// ("no sign change") if certification fails at this precision; n >= 3.
RootTriple approx_roots(const ThueInstance& inst, mpfr_prec_t prec);

struct CheckLine {
    std::string what;
    bool pass;
};
struct CheckReport {
    std::vector<CheckLine> lines;
    bool all_pass() const {
        for (auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
};

// Sign changes f(p - k) f(p + k) < 0 at (p, k) = (F_n, 6a^{-2n}),
// (L_n, 4a^{-2n}), (sqrt5 a^{-2n}, a^{-4n}); n >= 10.
CheckReport certify_root_brackets(const ThueInstance& inst, const RootTriple& roots);

// The six log estimates: log|a^(i)| and log|a^(i) - F_n| for i = 1,2,3
// against their n log alpha / log sqrt5 centers with the stated radii; n >= 10.
CheckReport certify_log_estimates(const ThueInstance& inst, const RootTriple& roots);

}  // namespace thuefib::roots
