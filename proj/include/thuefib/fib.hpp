// Exact Fibonacci/Lucas arithmetic and the family instance type.

#pragma once

#include <gmpxx.h>

#include "thuefib/ball.hpp"

namespace thuefib::seq {

// F_0 = 0, F_1 = 1, F_{n+2} = F_{n+1} + F_n, computed by iterated addition.
mpz_class fib(long n);

// L_0 = 2, L_1 = 1, same recurrence.
mpz_class lucas(long n);

// One member of the family (X - F_n Y)(X - L_n Y) X - Y^3 = +-1.
struct ThueInstance {
    long n;
    mpz_class fib;          // F_n
    mpz_class luc;          // L_n
    mpz_class coeff_bound;  // H = F_n * L_n, the largest coefficient magnitude

    static ThueInstance make(long n);

    // (x - F_n y)(x - L_n y) x - y^3, exactly.
    mpz_class form_value(const mpz_class& x, const mpz_class& y) const;
};

// Certified check of alpha^{n-2} <= F_n - 11 alpha^{-n} and
// F_n + 11 alpha^{-n} <= alpha^{n-1}; valid statement for n >= 6.
bool check_fib_envelope(long n, mpfr_prec_t prec);

}  // namespace thuefib::seq
