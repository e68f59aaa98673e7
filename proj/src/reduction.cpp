#include "thuefib/reduction.hpp"

#include <algorithm>
#include <stdexcept>

#include "thuefib/bounds.hpp"
#include "thuefib/parallel.hpp"
#include "thuefib/units.hpp"

namespace thuefib::red {

namespace {

// floor of the upper end of (log(c c2) - log(sqrt(len_sq - S) - T)) / c3,
// or nullopt when the margin sqrt(len_sq - S) - T is not certifiably positive.
std::optional<long> bound_from_len(const mpq_class& len_sq, const mpz_class& c,
                                   const Ball& c2, const Ball& c3,
                                   const mpz_class& s_up, const mpz_class& t_up) {
    mpq_class need = mpq_class(t_up) * mpq_class(t_up) + mpq_class(s_up);
    if (len_sq < need) return std::nullopt;
    for (mpfr_prec_t p = 256; p <= (mpfr_prec_t)1 << 22; p *= 2) {
        Ball L(len_sq, p);
        Ball x = Ball::sub(Ball::sqrt(Ball::sub(L, Ball(s_up, p))), Ball(t_up, p));
        if (Ball::cert_sign_pos(x) != Cert::True) continue;
        Ball val = Ball::div(
            Ball::sub(Ball::log(Ball::mul(Ball(c, p), c2)), Ball::log(x)), c3);
        mpq_class u = val.upper_q();
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), u.get_num().get_mpz_t(), u.get_den().get_mpz_t());
        if (!fl.fits_slong_p()) return std::nullopt;
        return fl.get_si();
    }
    return std::nullopt;
}

mpz_class round_scaled(const mpz_class& c, const Ball& lg, mpfr_prec_t prec) {
    return Ball::mul(Ball(c, prec), lg).round_nearest();
}

// 3^94 * 2n^2 * log(2n^2) * (2n^2 + (2n-1) log a + 1), shared by the
// phase constants; identical to the log|y| upper bound.
Ball big_product(long n, mpfr_prec_t prec) { return bounds::logy_upper_bound(n, prec); }

}  // namespace

Ball xi_c2(long n, mpfr_prec_t prec) {
    return Ball::add(Ball::mul(Ball(6L, prec), big_product(n, prec)), Ball(39L, prec));
}

Ball xi_cx(long n, mpfr_prec_t prec) {
    ConstantTable ct = constants(prec);
    Ball lin = Ball::mul(Ball::mul(Ball(42L, prec), ct.log_alpha), Ball(n, prec));
    return Ball::add(Ball::add(Ball::mul(Ball(42L, prec), big_product(n, prec)), lin),
                     Ball(43L, prec));
}

Ball lambda_cb(long n, mpfr_prec_t prec) {
    ConstantTable ct = constants(prec);
    Ball inner = Ball::add(
        Ball::add(big_product(n, prec), Ball::mul(Ball(n, prec), ct.log_alpha)),
        Ball(1L, prec));
    return Ball::mul(Ball::div(Ball(7L, prec), Ball(n, prec)), inner);
}

ReductionState smart_reduce(const mpz_class& c, const Ball& c2, const Ball& c3,
                            const std::array<Ball, 3>& coeff_bounds,
                            const std::array<Ball, 3>& logs, const mpq_class& delta) {
    if (c <= 0) throw std::invalid_argument("smart_reduce: scaling must be positive");
    ReductionState st;
    st.c = c;
    mpfr_prec_t pg = (mpfr_prec_t)mpz_sizeinbase(c.get_mpz_t(), 2) + 96;
    mpz_class g1 = round_scaled(c, logs[0], pg);
    mpz_class g2 = round_scaled(c, logs[1], pg);
    mpz_class g3 = round_scaled(c, logs[2], pg);
    st.input.rows = {{1, 0, g1}, {0, 1, g2}, {0, 0, g3}};
    if (g3 == 0) throw std::invalid_argument("smart_reduce: singular lattice");
    st.reduced = lll(st.input, delta);
    st.c4_sq = max_row_norm_sq(st.reduced);
    st.gs_min_sq = min_gs_norm_sq(st.reduced);

    mpfr_prec_t pb = 256;
    Ball S = Ball::add(Ball::mul(coeff_bounds[0], coeff_bounds[0]),
                       Ball::mul(coeff_bounds[1], coeff_bounds[1]));
    Ball T = Ball::div_2exp(
        Ball::add(Ball(1L, pb),
                  Ball::add(Ball::add(coeff_bounds[0], coeff_bounds[1]), coeff_bounds[2])),
        1);
    st.s_up = S.ceil_upper();
    st.t_up = T.ceil_upper();
    mpq_class need = mpq_class(st.t_up) * mpq_class(st.t_up) + mpq_class(st.s_up);

    st.cond_ok = mpq_class(st.c4_sq) >= need;
    st.cert_ok = st.gs_min_sq >= need;
    if (st.cond_ok) {
        auto b = bound_from_len(mpq_class(st.c4_sq), c, c2, c3, st.s_up, st.t_up);
        if (b)
            st.new_bound = *b;
        else
            st.cond_ok = false;
    }
    if (st.cert_ok) {
        auto b = bound_from_len(st.gs_min_sq, c, c2, c3, st.s_up, st.t_up);
        if (b)
            st.cert_bound = *b;
        else
            st.cert_ok = false;
    }
    return st;
}

Phase1Result phase1(long start_bound, const Phase1Config& cfg) {
    Phase1Result res;
    long bound = start_bound;
    res.chain.push_back(bound);
    for (;;) {
        mpfr_prec_t pc = 384;
        Ball cx = xi_cx(bound, pc);
        Ball c2 = xi_c2(bound, pc);
        mpz_class cxi = cx.ceil_upper();
        mpz_class c = cxi * cxi * cxi;
        ReductionState st;
        bool ok = false;
        for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
            mpfr_prec_t pg = (mpfr_prec_t)mpz_sizeinbase(c.get_mpz_t(), 2) + 160;
            ConstantTable ct = constants(pg);
            std::array<Ball, 3> logs = {ct.log_alpha, ct.log_sqrt5, ct.log_sqrt5_minus1};
            Ball c3 = Ball::mul(Ball(2L, pg), ct.log_alpha);
            st = smart_reduce(c, c2, c3, {cx, cx, cx}, logs, cfg.delta);
            if (st.cond_ok && st.cert_ok) {
                ok = true;
                break;
            }
            c *= cfg.retry_factor;
        }
        if (!ok) throw std::runtime_error("phase1: c4^2 >= T^2 + S failed at all scalings");
        res.steps.push_back(st);
        long nb = std::max(st.new_bound, st.cert_bound);  // certified chain value
        if (nb >= bound) break;  // fixpoint reached
        bound = nb;
        res.chain.push_back(bound);
        if (bound < 10) break;
    }
    return res;
}

namespace {

// Logs of the Lambda form for the j-th case; fills the (k, l) pair.
std::array<Ball, 3> lambda_logs(const ThueInstance& inst, const roots::RootTriple& rt,
                                int j, int& k, int& l) {
    switch (j) {
        case 1: k = 3; l = 2; break;
        case 2: k = 1; l = 3; break;
        case 3: k = 1; l = 2; break;
        default: throw std::invalid_argument("lambda_logs: j must be 1, 2 or 3");
    }
    mpfr_prec_t p = rt.prec;
    const Ball* r[3] = {&rt.r1, &rt.r2, &rt.r3};
    Ball F(inst.fib, p);
    auto eps = [&](int i) { return *r[i - 1]; };
    auto del = [&](int i) { return Ball::sub(*r[i - 1], F); };
    Ball t1 = Ball::log(Ball::abs(Ball::div(eps(l), eps(k))));
    Ball t2 = Ball::log(Ball::abs(Ball::div(del(l), del(k))));
    Ball t3 = Ball::log(Ball::abs(
        Ball::div(Ball::sub(eps(j), eps(k)), Ball::sub(eps(j), eps(l)))));
    return {t1, t2, t3};
}

// Working precision for the per-n work: the 3n+30 baseline, raised
// so that the scaled lattice entries round despite the a^{-2n} cancellation
// in delta_1 = a^(1) - F_n and so that recovery stays sharp.
mpfr_prec_t per_n_prec(long n) {
    Ball cb = lambda_cb(n, 256);
    long e = (long)mpfr_get_exp(cb.upper().get());
    long want = std::max(3 * e + (long)(2.9 * (double)n) + 192,
                         (long)(5.0 * (double)n) + 256);
    return (mpfr_prec_t)std::max<long>(3 * n + 30, want);
}

// Exact enumeration of the residual box for one case: every pair passing
// the certified |Lambda| filter is recovered and verified exactly.
void enumerate_box(const ThueInstance& inst, const roots::RootTriple& rt,
                   const std::array<Ball, 3>& logs, const Ball& lam_bound,
                   CaseOutcome& out) {
    out.enumerated = true;
    mpfr_prec_t p = rt.prec;
    if (!out.b_box.fits_slong_p())
        throw precision_error("enumerate_box: residual box too large");
    long B = out.b_box.get_si();
    for (long b1 = -B; b1 <= B; ++b1) {
        Ball part = Ball::add(Ball::mul(Ball(b1, p), logs[0]), logs[2]);
        for (long b2 = -B; b2 <= B; ++b2) {
            Ball lam = Ball::abs(Ball::add(part, Ball::mul(Ball(b2, p), logs[1])));
            Cert over = Ball::cert_lt(lam_bound, lam);
            if (over == Cert::True) continue;  // cannot come from a solution
            for (int sign : {+1, -1}) {
                Survivor sv;
                sv.b1 = b1;
                sv.b2 = b2;
                sv.sign = sign;
                auto xy = units::recover_xy(inst, rt, units::ExponentPair{b1, b2}, sign);
                if (xy) {
                    sv.has_xy = true;
                    sv.x = xy->first;
                    sv.y = xy->second;
                    sv.nontrivial = ::abs(sv.y) >= 2;
                }
                out.survivors.push_back(std::move(sv));
            }
        }
    }
    bool found = false;
    for (auto& sv : out.survivors) found = found || sv.nontrivial;
    out.excluded = !found;
}

CaseOutcome reduce_case(const ThueInstance& inst, const roots::RootTriple& rt,
                        const ConstantTable& ct, int j, const Ball& c2, const Ball& c3,
                        const mpq_class& delta) {
    CaseOutcome out;
    out.j = j;
    auto logs = lambda_logs(inst, rt, j, out.k, out.l);
    mpfr_prec_t p = rt.prec;
    long n = inst.n;
    mpz_class box = lambda_cb(n, p).ceil_upper();
    // 16 a^8 a^{-3n}, the |y|-dependent part of the Lambda bound.
    Ball ybound_scale = Ball::mul(Ball(16L, p), Ball::pow_si(ct.alpha, 8 - 3 * n));
    // The exponent pair of the |y| <= 1 solution whose minimal conjugate has
    // index j makes Lambda genuinely of order a^{-3n}; keep that lattice
    // vector above the targeted length by scaling past a^{3n}.
    mpz_class witness_floor = Ball::pow_si(ct.alpha, 3 * n).ceil_upper();

    for (int pass = 0; pass < 12; ++pass) {
        mpz_class boxc = box > 1 ? box : mpz_class(1);
        mpz_class c = boxc * boxc * boxc;
        mpz_class wit = witness_floor * (4 * boxc + 4);
        if (c < wit) c = wit;
        ReductionState st;
        bool okc = false;
        for (int attempt = 0; attempt <= 5; ++attempt) {
            st = smart_reduce(c, c2, c3,
                              {Ball(boxc, p), Ball(boxc, p), Ball(1L, p)}, logs, delta);
            if (st.cond_ok && st.cert_ok) {
                okc = true;
                break;
            }
            c *= 1000;
        }
        if (!okc) break;  // fall through to the enumeration of the current box
        out.state = st;
        out.n_tilde = std::max(st.new_bound, st.cert_bound);
        out.b_box = box;
        if (out.n_tilde < n) {
            out.excluded = true;  // the linear-form inequality cannot hold
            return out;
        }
        // |y|^3 <= 16 a^8 a^{-3n} c / (sqrt(len - S) - T), with the certified
        // minimum as the length floor; then the coefficient bound
        // max(|b1|,|b2|) <= 7/n (log|y| + n log a + 1) shrinks the box.
        Ball X = Ball::sub(
            Ball::sqrt(Ball::sub(Ball(st.gs_min_sq, p), Ball(st.s_up, p))),
            Ball(st.t_up, p));
        if (Ball::cert_sign_pos(X) != Cert::True)
            throw precision_error("reduce_case: margin not certified");
        Ball y3 = Ball::div(Ball::mul(ybound_scale, Ball(st.c, p)), X);
        if (Ball::cert_lt(y3, Ball(8L, p)) == Cert::True) {
            out.excluded = true;
            return out;
        }
        Ball logy = Ball::div(Ball::log(y3), Ball(3L, p));
        Ball bb = Ball::mul(
            Ball::div(Ball(7L, p), Ball(n, p)),
            Ball::add(Ball::add(logy, Ball::mul(Ball(n, p), ct.log_alpha)), Ball(1L, p)));
        mpz_class nbox = bb.ceil_upper();
        out.shrink_trail.emplace_back(box.get_str(), logy.ceil_upper().get_str());
        if (nbox >= box) break;  // box fixpoint: enumerate what remains
        box = nbox < 0 ? mpz_class(0) : nbox;
        out.b_box = box;
    }
    if (out.b_box == 0 && box > 1)
        throw precision_error("reduce_case: no certified box");
    out.b_box = box;
    Ball lam_bound = Ball::mul(c2, Ball::exp(Ball::neg(Ball::mul(c3, Ball(n, p)))));
    enumerate_box(inst, rt, logs, lam_bound, out);
    return out;
}

PerN per_n_reduce(long n, bool strengthened, const PhaseOptions& opts) {
    mpfr_prec_t start = std::max<mpfr_prec_t>(per_n_prec(n), (mpfr_prec_t)opts.min_prec);
    return with_escalation(start, [&](mpfr_prec_t p) {
        ThueInstance inst = ThueInstance::make(n);
        roots::RootTriple rt = roots::approx_roots(inst, p);
        ConstantTable ct = constants(p);
        Ball a8 = Ball::pow_si(ct.alpha, 8);
        Ball c2 = Ball::mul(Ball(strengthened ? 16L : 2L, p), a8);
        Ball c3 = Ball::mul(Ball(strengthened ? 9L : 3L, p), ct.log_alpha);
        PerN res;
        res.n = n;
        res.b_box = 0;
        res.n_tilde = -1;
        bool all_excluded = true;
        for (int j = 1; j <= 3; ++j) {
            CaseOutcome oc = reduce_case(inst, rt, ct, j, c2, c3, opts.delta);
            all_excluded = all_excluded && oc.excluded;
            res.n_tilde = std::max(res.n_tilde, oc.n_tilde);
            if (oc.b_box > res.b_box) res.b_box = oc.b_box;
            res.cases.push_back(std::move(oc));
        }
        res.eliminated = all_excluded;
        return res;
    });
}

PhaseResult run_phase(long n_lo, long n_hi, const PhaseOptions& opts, bool strengthened) {
    if (n_lo < 10) throw std::invalid_argument("phase: n_lo must be >= 10");
    PhaseResult pr;
    pr.lo = n_lo;
    pr.hi = n_hi;
    pr.per_n = parallel_map_range<PerN>(
        n_lo, n_hi, opts.jobs,
        [&](long n) { return per_n_reduce(n, strengthened, opts); });
    long surviving = -1;
    long max_nt = -1;
    for (const PerN& pn : pr.per_n) {
        if (!pn.eliminated) surviving = std::max(surviving, pn.n);
        max_nt = std::max(max_nt, pn.n_tilde);
    }
    if (surviving >= 0)
        pr.threshold = surviving;
    else
        pr.threshold = std::max<long>(0, std::min(n_lo - 1, max_nt));
    return pr;
}

}  // namespace

PhaseResult phase2(long n_lo, long n_hi, int jobs) {
    PhaseOptions opts;
    opts.jobs = jobs;
    return run_phase(n_lo, n_hi, opts, false);
}

PhaseResult phase2(long n_lo, long n_hi, const PhaseOptions& opts) {
    return run_phase(n_lo, n_hi, opts, false);
}

PhaseResult phase3(long n_lo, long n_hi, int jobs) {
    PhaseOptions opts;
    opts.jobs = jobs;
    return run_phase(n_lo, n_hi, opts, true);
}

PhaseResult phase3(long n_lo, long n_hi, const PhaseOptions& opts) {
    return run_phase(n_lo, n_hi, opts, true);
}

PerN exponent_box(long n, const PhaseOptions& opts) {
    if (n < 10) throw std::invalid_argument("exponent_box: needs n >= 10");
    return per_n_reduce(n, false, opts);
}

std::vector<Convergent> continued_fraction(const Ball& x, const mpz_class& max_den) {
    mpq_class lo = x.lower_q(), hi = x.upper_q();
    if (lo <= 0) throw std::invalid_argument("continued_fraction: needs x > 0");
    std::vector<Convergent> out;
    mpz_class p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
    mpz_class p_cur = 0, q_cur = 0;
    bool first = true;
    for (;;) {
        mpz_class alo, ahi;
        mpz_fdiv_q(alo.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
        mpz_fdiv_q(ahi.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
        if (alo != ahi) throw precision_error("continued_fraction: precision exhausted");
        mpz_class p_new, q_new;
        if (first) {
            p_new = alo;
            q_new = 1;
        } else {
            p_new = alo * p_cur + p_prev;
            q_new = alo * q_cur + q_prev;
        }
        if (q_new > max_den) break;
        out.push_back({p_new, q_new});
        if (!first) {
            p_prev = p_cur;
            q_prev = q_cur;
        }
        p_cur = p_new;
        q_cur = q_new;
        first = false;
        mpq_class fl = lo - mpq_class(alo);
        mpq_class fh = hi - mpq_class(alo);
        if (fl == 0 || fh == 0)
            throw precision_error("continued_fraction: endpoint hit a quotient boundary");
        mpq_class nlo = 1 / fh;
        mpq_class nhi = 1 / fl;
        lo = nlo;
        hi = nhi;
    }
    return out;
}

bool convergent_check(long n) {
    if (n < 3) throw std::invalid_argument("convergent_check: needs n >= 3");
    long base = std::max<long>(3 * n + 30, (long)(2.9 * (double)n) + 192);
    return with_escalation((mpfr_prec_t)base, [&](mpfr_prec_t p) {
        ThueInstance inst = ThueInstance::make(n);
        roots::RootTriple rt = roots::approx_roots(inst, p);
        ConstantTable ct = constants(p);
        mpz_class qmax = Ball::pow_si(ct.alpha, 2 * n).ceil_upper();
        for (const Ball* r : {&rt.r1, &rt.r2, &rt.r3}) {
            for (const Convergent& cv : continued_fraction(*r, qmax)) {
                if (cv.q < 2) continue;
                mpz_class v = inst.form_value(cv.p, cv.q);
                if (v == 1 || v == -1) return false;
            }
        }
        return true;
    });
}

}  // namespace thuefib::red
