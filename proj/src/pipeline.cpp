#include "thuefib/pipeline.hpp"

#include <stdexcept>

#include "thuefib/bounds.hpp"
#include "thuefib/parallel.hpp"

namespace thuefib::pipe {

namespace {

constexpr long kSmallNLimit = 48;  // solved directly; phases cover n >= 49
constexpr long kEnumBox = 20;      // default exponent box for small n

SolvedEntry solve_one(long n, const std::vector<red::PerN>& boxes) {
    SolvedEntry se;
    se.n = n;
    seq::ThueInstance inst = seq::ThueInstance::make(n);
    if (n < 10) {
        se.provenance = "oracle-verified";
        se.set = solver::solve(inst, kEnumBox);
        return se;
    }
    const red::PerN* pn = nullptr;
    for (const auto& b : boxes)
        if (b.n == n) pn = &b;
    if (pn == nullptr) throw std::runtime_error("pipeline: missing box for n");
    se.provenance = "reduction-certified";
    if (pn->eliminated) {
        // |y| >= 2 excluded outright; the solution set is the trivial one.
        se.set = solver::trivial_solutions(inst);
        return se;
    }
    long box = kEnumBox;
    if (pn->b_box.fits_slong_p()) box = std::max(box, pn->b_box.get_si());
    se.set = solver::solve(inst, box);
    return se;
}

}  // namespace

Certificate run_all(const Config& config) {
    Certificate cert;
    cert.config = config;
    int jobs = std::max(1, config.jobs);
    red::PhaseOptions opts;
    opts.jobs = jobs;
    opts.delta = config.lll_delta;
    opts.min_prec = config.precision_bits;

    if (config.max_n > 0) {
        // Restricted mode: direct solving only.
        cert.partial = true;
        cert.initial_bound = config.max_n;
        std::vector<red::PerN> boxes;
        if (config.max_n >= 10)
            boxes = parallel_map_range<red::PerN>(
                10, std::min(config.max_n, kSmallNLimit), jobs,
                [&](long n) { return red::exponent_box(n, opts); });
        for (long n = 1; n <= config.max_n; ++n) {
            if (n > kSmallNLimit)
                throw std::invalid_argument("run_all: --max-n beyond the direct range");
            cert.solved.push_back(solve_one(n, boxes));
        }
        cert.small_boxes = std::move(boxes);
        return cert;
    }

    // 1. Absolute bound on n.
    cert.initial_bound = bounds::initial_n_bound();

    // 2. Phase 1: n-independent reduction chain.
    red::Phase1Config p1cfg;
    p1cfg.delta = config.lll_delta;
    red::Phase1Result p1 = red::phase1(cert.initial_bound.get_si(), p1cfg);
    cert.phase1_chain = p1.chain;
    cert.phase1_steps = p1.steps;
    long fixpoint = p1.chain.back();
    if (fixpoint <= kSmallNLimit)
        throw std::runtime_error("pipeline: phase 1 descended below the direct range");

    // 3. Phase 2 per-n elimination over [49, fixpoint].
    cert.phase2 = red::phase2(kSmallNLimit + 1, fixpoint, opts);
    long thr2 = cert.phase2.threshold;
    for (const auto& pn : cert.phase2.per_n)
        if (pn.n > thr2 && !pn.eliminated)
            throw std::runtime_error("pipeline: phase 2 left n=" + std::to_string(pn.n));

    // 4. Convergent lemma on the surviving range, then phase 3.
    if (thr2 > kSmallNLimit) {
        cert.convergent_lo = kSmallNLimit + 1;
        cert.convergent_hi = thr2;
        auto conv = parallel_map_range<std::pair<long, bool>>(
            cert.convergent_lo, cert.convergent_hi, jobs,
            [](long n) { return std::make_pair(n, red::convergent_check(n)); });
        cert.convergent_results = conv;
        for (auto& [n, pass] : conv)
            if (!pass)
                throw std::runtime_error("pipeline: convergent check failed at n=" +
                                         std::to_string(n));
        cert.phase3 = red::phase3(cert.convergent_lo, cert.convergent_hi, opts);
        if (cert.phase3.threshold > kSmallNLimit)
            throw std::runtime_error("pipeline: phase 3 threshold above the direct range");
        for (const auto& pn : cert.phase3.per_n)
            if (!pn.eliminated)
                throw std::runtime_error("pipeline: phase 3 left n=" +
                                         std::to_string(pn.n));
    } else {
        cert.convergent_lo = kSmallNLimit + 1;
        cert.convergent_hi = kSmallNLimit;  // empty range
        cert.phase3.lo = cert.convergent_lo;
        cert.phase3.hi = cert.convergent_hi;
        cert.phase3.threshold = thr2;
    }

    // 5. Certified exponent boxes for 10..48, then solve 1..48.
    cert.small_boxes = parallel_map_range<red::PerN>(
        10, kSmallNLimit, jobs, [&](long n) { return red::exponent_box(n, opts); });
    auto solved = parallel_map_range<SolvedEntry>(
        1, kSmallNLimit, jobs, [&](long n) { return solve_one(n, cert.small_boxes); });
    cert.solved = std::move(solved);

    // 6. Eliminated ranges partition [49, initial_bound].
    if (thr2 > kSmallNLimit)
        cert.eliminated.push_back(
            {mpz_class(kSmallNLimit + 1), mpz_class(thr2), "phase3"});
    if (fixpoint > thr2)
        cert.eliminated.push_back({mpz_class(thr2 + 1), mpz_class(fixpoint), "phase2"});
    if (cert.initial_bound > fixpoint)
        cert.eliminated.push_back({mpz_class(fixpoint + 1), cert.initial_bound, "phase1"});

    VerifyReport rep = verify(cert);
    if (!rep.ok)
        throw std::runtime_error("pipeline: certificate self-check failed: " +
                                 rep.errors.front());
    return cert;
}

}  // namespace thuefib::pipe
