#include "thuefib/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace thuefib::red {

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    mpz_class s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

mpz_class nearest_int(const mpq_class& q) {
    // floor((2 num + den) / (2 den)) handles positives; mirror for negatives
    // to get ties away from zero.
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class r;
    if (sgn(num) >= 0) {
        mpz_class t = 2 * num + den;
        mpz_fdiv_q(r.get_mpz_t(), t.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
    } else {
        mpz_class t = -2 * num + den;
        mpz_fdiv_q(r.get_mpz_t(), t.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
        r = -r;
    }
    return r;
}

GramSchmidt gram_schmidt(const IntLattice& b) {
    size_t d = b.dim();
    GramSchmidt gs;
    gs.mu.assign(d, std::vector<mpq_class>(d, 0));
    gs.norm_sq.assign(d, 0);
    // b_i* = b_i - sum_{j<i} mu_ij b_j*; work with rational coordinates.
    std::vector<std::vector<mpq_class>> star(d);
    for (size_t i = 0; i < d; ++i) {
        star[i].assign(b.rows[i].size(), 0);
        for (size_t c = 0; c < b.rows[i].size(); ++c) star[i][c] = mpq_class(b.rows[i][c]);
        for (size_t j = 0; j < i; ++j) {
            // mu_ij = <b_i, b_j*> / ||b_j*||^2
            mpq_class num = 0;
            for (size_t c = 0; c < star[j].size(); ++c)
                num += mpq_class(b.rows[i][c]) * star[j][c];
            if (gs.norm_sq[j] == 0) throw std::invalid_argument("gram_schmidt: dependent rows");
            gs.mu[i][j] = num / gs.norm_sq[j];
            for (size_t c = 0; c < star[i].size(); ++c)
                star[i][c] -= gs.mu[i][j] * star[j][c];
        }
        mpq_class ns = 0;
        for (auto& v : star[i]) ns += v * v;
        gs.norm_sq[i] = ns;
    }
    return gs;
}

mpz_class det(const IntLattice& b) {
    size_t d = b.dim();
    if (d == 0) return 1;
    for (auto& r : b.rows)
        if (r.size() != d) throw std::invalid_argument("det: non-square matrix");
    // Bareiss fraction-free elimination.
    std::vector<std::vector<mpz_class>> m = b.rows;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < d; ++k) {
        if (m[k][k] == 0) {
            size_t p = k + 1;
            while (p < d && m[p][k] == 0) ++p;
            if (p == d) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < d; ++i)
            for (size_t j = k + 1; j < d; ++j) {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
        prev = m[k][k];
    }
    return sign * m[d - 1][d - 1];
}

IntLattice lll(IntLattice basis, const mpq_class& delta) {
    size_t d = basis.dim();
    if (d == 0) return basis;
    if (det(basis) == 0) throw std::invalid_argument("lll: dependent rows");
    mpq_class half(1, 2);

    auto size_reduce_row = [&](GramSchmidt& gs, size_t k) {
        for (size_t j = k; j-- > 0;) {
            if (cmp(::abs(gs.mu[k][j]), half) > 0) {
                mpz_class m = nearest_int(gs.mu[k][j]);
                for (size_t c = 0; c < basis.rows[k].size(); ++c)
                    basis.rows[k][c] -= m * basis.rows[j][c];
                gs = gram_schmidt(basis);
            }
        }
    };

    GramSchmidt gs = gram_schmidt(basis);
    size_t k = 1;
    while (k < d) {
        size_reduce_row(gs, k);
        mpq_class lhs = gs.norm_sq[k];
        mpq_class rhs = (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm_sq[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(basis.rows[k], basis.rows[k - 1]);
            gs = gram_schmidt(basis);
            k = (k > 1) ? k - 1 : 1;
        }
    }
    return basis;
}

mpz_class max_row_norm_sq(const IntLattice& b) {
    mpz_class best = 0;
    for (auto& r : b.rows) {
        mpz_class n = dot(r, r);
        if (n > best) best = n;
    }
    return best;
}

mpq_class min_gs_norm_sq(const IntLattice& b) {
    GramSchmidt gs = gram_schmidt(b);
    mpq_class best = gs.norm_sq[0];
    for (auto& v : gs.norm_sq)
        if (v < best) best = v;
    return best;
}

mpq_class dist2d_sq_lower(const IntLattice& basis, const std::vector<mpz_class>& y,
                          long window) {
    const auto& b1 = basis.rows[0];
    const auto& b2 = basis.rows[1];
    mpz_class D = b1[0] * b2[1] - b1[1] * b2[0];
    if (D == 0) throw std::invalid_argument("dist2d_sq_lower: singular basis");
    // y = s1 b1 + s2 b2.
    mpq_class s1(y[0] * b2[1] - y[1] * b2[0]);
    mpq_class s2(b1[0] * y[1] - b1[1] * y[0]);
    s1 /= D;
    s2 /= D;
    s1.canonicalize();
    s2.canonicalize();
    mpq_class nb1(dot(b1, b1));
    mpq_class nb2star = mpq_class(D) * mpq_class(D) / nb1;     // ||b2*||^2
    mpq_class mu = mpq_class(dot(b1, b2)) / nb1;               // <b2, b1>/||b1||^2
    // For v = t1 b1 + t2 b2:  ||v - y||^2 = A^2 ||b1||^2 + B^2 ||b2*||^2 with
    // B = t2 - s2 and A = (t1 - s1) + mu B.
    mpz_class t2_mid = nearest_int(s2);
    mpq_class best = -1;
    for (long o = -window; o <= window; ++o) {
        mpz_class t2 = t2_mid + o;
        mpq_class B = mpq_class(t2) - s2;
        mpq_class target1 = s1 - mu * B;
        mpq_class fa = target1 - mpq_class(nearest_int(target1));
        mpq_class val = fa * fa * nb1 + B * B * nb2star;
        if (best < 0 || val < best) best = val;
    }
    // Any t2 outside the window has |B| > window - 1/2... at least window - 1.
    mpq_class bout = mpq_class(window) - mpq_class(1, 2);
    mpq_class outside = bout * bout * nb2star;
    return best < outside ? best : outside;
}

bool is_lll_reduced(const IntLattice& b, const mpq_class& delta) {
    GramSchmidt gs = gram_schmidt(b);
    mpq_class half(1, 2);
    for (size_t i = 0; i < b.dim(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (cmp(::abs(gs.mu[i][j]), half) > 0) return false;
    for (size_t k = 1; k < b.dim(); ++k) {
        mpq_class rhs = (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm_sq[k - 1];
        if (gs.norm_sq[k] < rhs) return false;
    }
    return true;
}

}  // namespace thuefib::red
