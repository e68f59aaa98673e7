// Exact-arithmetic LLL for the small integer lattices of the reduction
// phases.  Basis vectors are the rows of the matrix; Gram-Schmidt data is
// kept in exact rationals, so size-reduction and the Lovasz condition are
// decided without any floating point.

#pragma once

#include <gmpxx.h>

#include <vector>

namespace thuefib::red {

struct IntLattice {
    // rows[i] is the i-th basis vector.
    std::vector<std::vector<mpz_class>> rows;

    size_t dim() const { return rows.size(); }
};

struct GramSchmidt {
    std::vector<std::vector<mpq_class>> mu;  // mu[i][j], j < i
    std::vector<mpq_class> norm_sq;          // ||b_i*||^2
};

GramSchmidt gram_schmidt(const IntLattice& b);

// Exact determinant (Bareiss).
mpz_class det(const IntLattice& b);

// LLL reduction with parameter delta (default 3/4); the output spans the
// same lattice.  Throws std::invalid_argument on dependent rows.
IntLattice lll(IntLattice basis, const mpq_class& delta = mpq_class(3, 4));

// max_i ||b_i||^2 over the basis rows.
mpz_class max_row_norm_sq(const IntLattice& b);

// min_i ||b_i*||^2: every nonzero lattice vector has at least this square
// length (exact certificate, independent of reduction quality).
mpq_class min_gs_norm_sq(const IntLattice& b);

// Checks |mu_ij| <= 1/2 and the Lovasz condition exactly.
bool is_lll_reduced(const IntLattice& b, const mpq_class& delta = mpq_class(3, 4));

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b);

// Nearest integer to a rational, ties away from zero.
mpz_class nearest_int(const mpq_class& q);

// Certified lower bound on dist(L, y)^2 for a 2D lattice given by basis rows.
// Splits on the b2-coefficient of a closest vector: outside a +-window of
// its real value the b2* component alone is large, inside the window each
// integer slice is minimized exactly.  Returns 0 when y is a lattice point.
mpq_class dist2d_sq_lower(const IntLattice& basis, const std::vector<mpz_class>& y,
                          long window = 16);

}  // namespace thuefib::red
