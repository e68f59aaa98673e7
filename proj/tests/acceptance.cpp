// Acceptance suite: runs each criterion at its stated tolerance and prints
// one pass/fail line.  Exit status is the number of failed criteria.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "thuefib/bounds.hpp"
#include "thuefib/parallel.hpp"
#include "thuefib/pipeline.hpp"
#include "thuefib/reduction.hpp"
#include "thuefib/units.hpp"

using namespace thuefib;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int hw_jobs() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : (int)n;
}

Outcome c1_baker_constant() {
    Ball C = bounds::baker_constant();
    double v = C.to_double();
    bool ok = v >= 1.25e13 && v <= 1.26e13 && C.rad_to_double() < 1e3;
    return {ok, "C = " + C.to_string(8) + ", window [1.25e13, 1.26e13]"};
}

Outcome c2_initial_bound() {
    long n0 = bounds::initial_n_bound();
    double rel = std::fabs((double)n0 - 1.144e15) / 1.144e15;
    bool ok = n0 <= 1200000000000000L && rel <= 0.05;
    char buf[256];
    snprintf(buf, sizeof buf,
             "certified crossing N0 = %ld (requirements: <= 1.2e15 and within 5%% of "
             "1.144e15; deviation %.1f%%)",
             n0, rel * 100.0);
    return {ok, buf};
}

Outcome c3_phase1_chain() {
    long n0 = bounds::initial_n_bound();
    red::Phase1Result res = red::phase1(n0);
    std::string chain;
    for (size_t i = 0; i < res.chain.size(); ++i)
        chain += (i ? " -> " : "") + std::to_string(res.chain[i]);
    bool have_step = res.chain.size() >= 2;
    long first = have_step ? res.chain[1] : -1;
    long fix = res.chain.back();
    bool ok = have_step && first <= 700 && fix <= 400;
    return {ok, "chain " + chain + " (requirements: first step <= 700, fixpoint <= 400)"};
}

Outcome c4_phase2() {
    long n0 = bounds::initial_n_bound();
    long fix = red::phase1(n0).chain.back();
    red::PhaseResult pr = red::phase2(49, fix, hw_jobs());
    long open_above = 0;
    for (const auto& pn : pr.per_n)
        if (pn.n >= 133 && !pn.eliminated) ++open_above;
    bool ok = open_above == 0 && pr.threshold <= 150;
    char buf[160];
    snprintf(buf, sizeof buf,
             "range [49, %ld]: %ld open cases above 132, threshold %ld (requirement: all of "
             "133..fixpoint eliminated, threshold <= 150)",
             fix, open_above, pr.threshold);
    return {ok, buf};
}

Outcome c5_convergents() {
    int fails = 0;
    for (long n = 49; n <= 132; ++n)
        if (!red::convergent_check(n)) ++fails;
    char buf[128];
    snprintf(buf, sizeof buf, "49 <= n <= 132: %d failures (requirement: 0)", fails);
    return {fails == 0, buf};
}

Outcome c6_phase3() {
    red::PhaseResult pr = red::phase3(49, 132, hw_jobs());
    long open = 0;
    for (const auto& pn : pr.per_n)
        if (!pn.eliminated) ++open;
    bool ok = open == 0 && pr.threshold <= 48;
    char buf[128];
    snprintf(buf, sizeof buf, "threshold %ld, %ld open cases (requirement: threshold <= 48)",
             pr.threshold, open);
    return {ok, buf};
}

Outcome c7_solution_sets() {
    int bad = 0;
    std::string detail;
    for (long n = 1; n <= 48; ++n) {
        seq::ThueInstance inst = seq::ThueInstance::make(n);
        std::set<std::pair<mpz_class, mpz_class>> want;
        auto put = [&](mpz_class x, mpz_class y) {
            want.insert({x, y});
            want.insert({-x, -y});
        };
        put(1, 0);
        put(0, 1);
        put(inst.fib, 1);
        put(inst.luc, 1);
        if (n == 1) {
            put(2, 1);
            put(7, 4);
        }
        if (n == 3) {
            put(7, 4);
            put(38, 273);
        }
        solver::SolutionSet got = solver::solve(inst, 20);
        std::set<std::pair<mpz_class, mpz_class>> have;
        for (auto& s : got.solutions) have.insert({s.x, s.y});
        if (have != want) {
            ++bad;
            if (detail.empty()) detail = "first mismatch at n=" + std::to_string(n);
        }
    }
    if (detail.empty()) detail = "all 48 instances match the expected sets exactly";
    return {bad == 0, detail + " (" + std::to_string(bad) + " mismatches)"};
}

Outcome c8_oracle_equivalence() {
    int bad = 0;
    for (long n = 1; n <= 12; ++n) {
        seq::ThueInstance inst = seq::ThueInstance::make(n);
        long F = inst.fib.get_si(), L = inst.luc.get_si();
        std::set<std::pair<long, long>> oracle;
        long xmax = L * 1000 + 1000;
        for (long y = -1000; y <= 1000; ++y) {
            __int128 y3 = (__int128)y * y * y;
            for (long x = -xmax; x <= xmax; ++x) {
                __int128 v = (__int128)(x - F * y) * (x - L * y) * x - y3;
                if (v == 1 || v == -1) oracle.insert({x, y});
            }
        }
        std::set<std::pair<long, long>> got;
        for (auto& s : solver::solve(inst, 20).solutions)
            got.insert({s.x.get_si(), s.y.get_si()});
        if (got != oracle) ++bad;
    }
    return {bad == 0,
            std::to_string(bad) + " of 12 instances disagree with the exhaustive search"};
}

Outcome c9_lemma_suites() {
    int jobs = hw_jobs();
    std::vector<int> fails = parallel_map_range<int>(10, 346, jobs, [](long n) {
        seq::ThueInstance inst = seq::ThueInstance::make(n);
        mpfr_prec_t p = (mpfr_prec_t)(3 * n + 30);
        roots::RootTriple rt = roots::approx_roots(inst, p);
        int bad = 0;
        if (!roots::certify_root_brackets(inst, rt).all_pass()) ++bad;
        if (!roots::certify_log_estimates(inst, rt).all_pass()) ++bad;
        units::UnitSystem us = units::build_units(inst, rt);  // regulator window inside
        ConstantTable ct = constants(p);
        Ball n2(mpz_class(mpz_class(n) * n), p);
        Ball lo = Ball::mul(Ball::mul(Ball(2L, p), Ball::mul(ct.log_alpha, ct.log_alpha)), n2);
        Ball hi = Ball::mul(Ball(2L, p), n2);
        if (Ball::cert_le(lo, us.reg) != Cert::True) ++bad;
        if (Ball::cert_le(us.reg, hi) != Cert::True) ++bad;
        for (auto [k, l] : {std::pair<int, int>{3, 2}, {1, 3}, {1, 2}}) {
            Ball bound = Ball::div(Ball(7L, p), Ball(n, p));
            if (Ball::cert_lt(units::matrix_inv_norm(us, k, l), bound) != Cert::True) ++bad;
        }
        return bad;
    });
    long total = 0;
    for (int f : fails) total += f;
    return {total == 0, std::to_string(total) +
                            " failed checks over 10 <= n <= 346 at 3n+30 bits (requirement: 0)"};
}

Outcome c10_lll_correctness() {
    std::mt19937_64 rng(20250808);
    std::uniform_int_distribution<long> e(-50, 50);
    int bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        red::IntLattice b{{{e(rng), e(rng), e(rng)},
                          {e(rng), e(rng), e(rng)},
                          {e(rng), e(rng), e(rng)}}};
        if (red::det(b) == 0) {
            --trial;
            continue;
        }
        red::IntLattice out = red::lll(b);
        mpz_class d0 = red::det(b), d1 = red::det(out);
        if (d0 != d1 && d0 != -d1) ++bad;
        if (!red::is_lll_reduced(out)) ++bad;
        // brute-force shortest vector with coefficients in [-25, 25]
        mpz_class best = -1;
        for (long a = -25; a <= 25; ++a)
            for (long bb = -25; bb <= 25; ++bb)
                for (long c = -25; c <= 25; ++c) {
                    if (a == 0 && bb == 0 && c == 0) continue;
                    mpz_class v0 = a * b.rows[0][0] + bb * b.rows[1][0] + c * b.rows[2][0];
                    mpz_class v1 = a * b.rows[0][1] + bb * b.rows[1][1] + c * b.rows[2][1];
                    mpz_class v2 = a * b.rows[0][2] + bb * b.rows[1][2] + c * b.rows[2][2];
                    mpz_class nrm = v0 * v0 + v1 * v1 + v2 * v2;
                    if (best < 0 || nrm < best) best = nrm;
                }
        mpz_class got = red::dot(out.rows[0], out.rows[0]);
        if (got > 4 * best) ++bad;  // ||b1|| within factor 2 of the oracle
    }
    return {bad == 0, std::to_string(bad) + " violations over 1000 random bases"};
}

using CriterionFn = Outcome (*)();

struct Criterion {
    const char* name;
    CriterionFn fn;
};

const Criterion kCriteria[] = {
    {"baker-constant", c1_baker_constant},
    {"initial-bound", c2_initial_bound},
    {"phase1-chain", c3_phase1_chain},
    {"phase2-elimination", c4_phase2},
    {"convergent-lemma", c5_convergents},
    {"phase3-threshold", c6_phase3},
    {"solution-sets", c7_solution_sets},
    {"oracle-equivalence", c8_oracle_equivalence},
    {"lemma-suites", c9_lemma_suites},
    {"lll-correctness", c10_lll_correctness},
};

int run_one(int idx) {
    const Criterion& c = kCriteria[idx];
    Outcome o;
    try {
        o = c.fn();
    } catch (const std::exception& ex) {
        o.pass = false;
        o.detail = std::string("exception: ") + ex.what();
    }
    printf("criterion %02d [%s] %s - %s\n", idx + 1, c.name, o.pass ? "PASS" : "FAIL",
           o.detail.c_str());
    fflush(stdout);
    return o.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    int which = 0;  // 0 = all
    for (int i = 1; i + 1 < argc + 1; ++i) {
        if (i + 1 < argc && std::strcmp(argv[i], "--criterion") == 0)
            which = std::atoi(argv[i + 1]);
    }
    int fails = 0;
    if (which >= 1 && which <= 10) {
        fails = run_one(which - 1);
    } else {
        for (int i = 0; i < 10; ++i) fails += run_one(i);
        printf("%d of 10 criteria failed\n", fails);
    }
    return fails;
}
