// Bound-reduction machinery: the 3x3 lattice step shared by the n-free
// linear form xi = x1 log a + x2 log sqrt5 + x3 log(sqrt5-1) (phase 1) and
// the per-n form Lambda = b1 log|eps_l/eps_k| + b2 log|delta_l/delta_k| +
// log|(a^(j)-a^(k))/(a^(j)-a^(l))| (phases 2 and 3), the three-phase driver,
// and the continued-fraction convergent check.

#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "thuefib/ball.hpp"
#include "thuefib/fib.hpp"
#include "thuefib/lattice.hpp"
#include "thuefib/roots.hpp"

namespace thuefib::red {

using seq::ThueInstance;

struct ReductionState {
    mpz_class c;
    mpz_class c4_sq;      // squared max basis-vector norm of the reduced basis
    mpq_class gs_min_sq;  // min ||b_i*||^2: certified floor for nonzero vectors
    mpz_class s_up;       // integer upper bound for S = cx1^2 + cx2^2
    mpz_class t_up;       // integer upper bound for T = (1 + cx1+cx2+cx3)/2
    bool cond_ok = false;  // c4_sq >= t_up^2 + s_up
    bool cert_ok = false;  // gs_min_sq >= t_up^2 + s_up
    long new_bound = -1;   // floor((log(c c2) - log(sqrt(c4_sq - S) - T)) / c3)
    long cert_bound = -1;  // same formula driven by gs_min_sq
    IntLattice input;
    IntLattice reduced;
};

// Builds the lattice with rows (1,0,[c t1]), (0,1,[c t2]), (0,0,[c t3]),
// reduces it and evaluates the bound formula.  Throws std::invalid_argument
// for a singular lattice and precision_error if [c t_i] cannot be certified.
ReductionState smart_reduce(const mpz_class& c, const Ball& c2, const Ball& c3,
                            const std::array<Ball, 3>& coeff_bounds,
                            const std::array<Ball, 3>& logs,
                            const mpq_class& delta = mpq_class(3, 4));

struct Phase1Config {
    mpz_class retry_factor = 1000;
    int max_retries = 5;
    mpq_class delta{3, 4};
};

struct Phase1Result {
    std::vector<long> chain;  // starting bound first, fixpoint last
    std::vector<ReductionState> steps;
};

// Iterates smart_reduce with the xi-form constants (c3 = 2 log a, c2(n) and
// c_x(n) recomputed from the current bound) until the bound stops dropping.
Phase1Result phase1(long start_bound, const Phase1Config& cfg = Phase1Config{});

// xi-form constants at bound n.
Ball xi_c2(long n, mpfr_prec_t prec);
Ball xi_cx(long n, mpfr_prec_t prec);
// Lambda-form coefficient bound c_b(n) (valid for n >= 10).
Ball lambda_cb(long n, mpfr_prec_t prec);

// A surviving exponent pair from the enumeration fallback: it passed the
// linear-form filter and was recovered exactly.
struct Survivor {
    long b1 = 0, b2 = 0;
    int sign = 1;
    bool has_xy = false;
    mpz_class x, y;
    bool nontrivial = false;  // recovered a verified solution with |y| >= 2
};

// Per-(n, j) outcome of the Lambda reduction.
struct CaseOutcome {
    int j = 0, k = 0, l = 0;
    ReductionState state;    // last accepted lattice step
    bool excluded = false;   // no solution with |y| >= 2 in this case
    bool enumerated = false; // exact enumeration of the final box ran
    mpz_class b_box;         // certified bound on max(|b1|,|b2|) for this case
    long n_tilde = std::numeric_limits<long>::max();
    std::vector<std::pair<std::string, std::string>> shrink_trail;  // (box, log|y| ub)
    std::vector<Survivor> survivors;
};

struct PerN {
    long n = 0;
    bool eliminated = false;
    long n_tilde = std::numeric_limits<long>::max();
    mpz_class b_box;
    std::vector<CaseOutcome> cases;
};

struct PhaseResult {
    long lo = 0, hi = 0;
    long threshold = 0;
    std::vector<PerN> per_n;
};

struct PhaseOptions {
    int jobs = 1;
    mpq_class delta{3, 4};
    long min_prec = 0;  // floor on the per-n working precision
};

// Lambda reduction with c2 = 2 a^8, c3 = 3 log a over [n_lo, n_hi]:
// iterated lattice steps with box shrinking, enumeration of any residual
// box, per-n elimination verdicts and the surviving threshold.
PhaseResult phase2(long n_lo, long n_hi, int jobs = 1);
PhaseResult phase2(long n_lo, long n_hi, const PhaseOptions& opts);

// Same with the strengthened bound |Lambda| <= 16 a^8 a^{-9n} (valid once
// convergent_check established |y| >= a^{2n} on the range).
PhaseResult phase3(long n_lo, long n_hi, int jobs = 1);
PhaseResult phase3(long n_lo, long n_hi, const PhaseOptions& opts);

// Certified enumeration box (and usually outright exclusion of |y| >= 2)
// for one n >= 10, for the solver.
PerN exponent_box(long n, const PhaseOptions& opts = PhaseOptions{});

// ---- continued fractions -------------------------------------------------

struct Convergent {
    mpz_class p, q;
};

// All convergents of the real enclosed by x with denominator <= max_den.
// Throws precision_error when a partial quotient cannot be certified.
std::vector<Convergent> continued_fraction(const Ball& x, const mpz_class& max_den);

// True iff no convergent p/q (q >= 2, q < a^{2n}) of any of the three roots
// satisfies (p - F_n q)(p - L_n q) p - q^3 = +-1.
bool convergent_check(long n);

}  // namespace thuefib::red
