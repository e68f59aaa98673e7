// Complete resolution of one member of the family: trivial solutions, exact
// verification, and exhaustive unit-exponent enumeration inside a box.

#pragma once

#include <optional>
#include <vector>

#include "thuefib/fib.hpp"
#include "thuefib/units.hpp"

namespace thuefib::solver {

using seq::ThueInstance;

struct Solution {
    mpz_class x;
    mpz_class y;
    int value = 0;  // the form value, +1 or -1
    bool trivial = false;  // |y| <= 1

    friend bool operator<(const Solution& a, const Solution& b) {
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    }
    friend bool operator==(const Solution& a, const Solution& b) {
        return a.x == b.x && a.y == b.y;
    }
};

struct SolutionSet {
    long n = 0;
    std::vector<Solution> solutions;  // sorted, deduplicated, closed under negation

    bool contains(const mpz_class& x, const mpz_class& y) const;
};

// Exact evaluation; the value when it is +-1, nothing otherwise.
std::optional<int> verify(const ThueInstance& inst, const mpz_class& x, const mpz_class& y);

// Exactly the solutions with |y| <= 1: the y = 0 and product-zero cases plus
// the (X +- F)(X +- L) X = +-2 branch over the divisors of 2.
SolutionSet trivial_solutions(const ThueInstance& inst);

// trivial_solutions plus every solution with |y| >= 2 arising from an
// exponent pair in [-B, B]^2 with either sign.  Complete whenever B bounds
// the exponents of all non-trivial solutions; for n <= 3 a desk-scale direct
// search replaces the enumeration (only one real root exists for n <= 2).
SolutionSet solve(const ThueInstance& inst, long b_box);

}  // namespace thuefib::solver
