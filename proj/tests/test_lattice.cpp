#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "thuefib/lattice.hpp"

using namespace thuefib::red;

namespace {

// Brute-force shortest nonzero vector over a coefficient box.
mpz_class shortest_sq_oracle(const IntLattice& b, long box) {
    size_t d = b.dim();
    mpz_class best = -1;
    std::vector<long> coef(d, -box);
    for (;;) {
        bool zero = true;
        for (long c : coef) zero = zero && c == 0;
        if (!zero) {
            std::vector<mpz_class> v(b.rows[0].size(), 0);
            for (size_t i = 0; i < d; ++i)
                for (size_t j = 0; j < v.size(); ++j) v[j] += coef[i] * b.rows[i][j];
            mpz_class nrm = dot(v, v);
            if (best < 0 || nrm < best) best = nrm;
        }
        size_t k = 0;
        while (k < d && coef[k] == box) coef[k++] = -box;
        if (k == d) break;
        ++coef[k];
    }
    return best;
}

}  // namespace

TEST_CASE("identity is already reduced") {
    IntLattice eye{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    IntLattice out = lll(eye);
    CHECK(out.rows == eye.rows);
    CHECK(is_lll_reduced(out));
}

TEST_CASE("classic 2x2 example") {
    IntLattice b{{{1, 0}, {4, 1}}};
    IntLattice out = lll(b);
    CHECK(is_lll_reduced(out));
    mpz_class got = dot(out.rows[0], out.rows[0]);
    mpz_class best = shortest_sq_oracle(b, 20);
    CHECK(got <= 2 * best);
    mpz_class d0 = det(b), d1 = det(out);
    CHECK((d0 == d1 || d0 == -d1));
}

TEST_CASE("unimodular scrambles of diag(1,1,K)") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> coin(-3, 3);
    for (long K : {5L, 37L, 1000L}) {
        for (int trial = 0; trial < 20; ++trial) {
            IntLattice b{{{1, 0, 0}, {0, 1, 0}, {0, 0, K}}};
            // random row operations keep the lattice
            for (int step = 0; step < 12; ++step) {
                size_t i = rng() % 3, j = rng() % 3;
                if (i == j) continue;
                long m = coin(rng);
                for (size_t c = 0; c < 3; ++c) b.rows[i][c] += m * b.rows[j][c];
            }
            IntLattice out = lll(b);
            CHECK(is_lll_reduced(out));
            mpz_class d0 = det(b), d1 = det(out);
            CHECK((d0 == d1 || d0 == -d1));
            mpz_class got = dot(out.rows[0], out.rows[0]);
            mpz_class best = shortest_sq_oracle(b, 6);
            // within LLL's 2^{(d-1)/2} factor: norm^2 within 2^{d-1} = 4
            CHECK(got <= 4 * best);
        }
    }
}

TEST_CASE("dependent rows rejected") {
    IntLattice b{{{1, 2, 3}, {2, 4, 6}, {0, 0, 1}}};
    CHECK_THROWS_AS(lll(b), std::invalid_argument);
}

TEST_CASE("nearest integer with ties away from zero") {
    CHECK(nearest_int(mpq_class(7, 2)) == 4);
    CHECK(nearest_int(mpq_class(-7, 2)) == -4);
    CHECK(nearest_int(mpq_class(1, 3)) == 0);
    CHECK(nearest_int(mpq_class(-5, 3)) == -2);
    CHECK(nearest_int(mpq_class(10, 5)) == 2);
}

TEST_CASE("2D distance lower bound against brute force") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> e(-30, 30);
    for (int trial = 0; trial < 200; ++trial) {
        IntLattice b{{{e(rng), e(rng)}, {e(rng), e(rng)}}};
        if (det(b) == 0) continue;
        std::vector<mpz_class> y = {e(rng), e(rng)};
        mpq_class low = dist2d_sq_lower(b, y);
        // exhaustive closest vector over a generous box
        mpq_class best = -1;
        for (long t1 = -80; t1 <= 80; ++t1)
            for (long t2 = -80; t2 <= 80; ++t2) {
                mpz_class vx = t1 * b.rows[0][0] + t2 * b.rows[1][0] - y[0];
                mpz_class vy = t1 * b.rows[0][1] + t2 * b.rows[1][1] - y[1];
                mpq_class nrm(vx * vx + vy * vy);
                if (best < 0 || nrm < best) best = nrm;
            }
        CHECK(low <= best);
    }
}

TEST_CASE("gram-schmidt floor certifies every lattice vector") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long> e(-20, 20);
    for (int trial = 0; trial < 100; ++trial) {
        IntLattice b{{{e(rng), e(rng), e(rng)},
                      {e(rng), e(rng), e(rng)},
                      {e(rng), e(rng), e(rng)}}};
        if (det(b) == 0) continue;
        IntLattice out = lll(b);
        mpq_class floor_sq = min_gs_norm_sq(out);
        CHECK(mpq_class(shortest_sq_oracle(out, 4)) >= floor_sq);
    }
}
