// Command-line front end: prove (full pipeline), solve, reduce, verify-cert.
// Exit codes: 0 certified, 1 certification failure, 2 bad input.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>

#include "thuefib/bounds.hpp"
#include "thuefib/pipeline.hpp"

using namespace thuefib;

namespace {

int run_prove(const pipe::Config& cfg) {
    pipe::Certificate cert = pipe::run_all(cfg);
    std::string path = cfg.out_path.empty() ? "certificate.json" : cfg.out_path;
    pipe::write_certificate(cert, path);
    std::cout << "initial bound  " << cert.initial_bound.get_str() << "\n";
    if (!cert.partial) {
        std::cout << "phase1 chain   ";
        for (size_t i = 0; i < cert.phase1_chain.size(); ++i)
            std::cout << (i ? " -> " : "") << cert.phase1_chain[i];
        std::cout << "\nphase2 threshold " << cert.phase2.threshold
                  << "\nphase3 threshold " << cert.phase3.threshold << "\n";
    }
    long exceptions = 0;
    for (auto& se : cert.solved)
        for (auto& s : se.set.solutions)
            if (!s.trivial) ++exceptions;
    std::cout << "solved " << cert.solved.size() << " instances, " << exceptions / 2
              << " non-trivial solution pairs\n";
    std::cout << "certificate written to " << path << "\n";
    return 0;
}

int run_solve(long n, long box) {
    seq::ThueInstance inst = seq::ThueInstance::make(n);
    solver::SolutionSet set = solver::solve(inst, box);
    for (auto& s : set.solutions)
        std::cout << "(" << s.x.get_str() << ", " << s.y.get_str()
                  << ")  value " << (s.value > 0 ? "+1" : "-1")
                  << (s.trivial ? "  [trivial]" : "") << "\n";
    return 0;
}

int run_reduce(int phase, long n_min, long n_max, int jobs) {
    if (phase == 1) {
        long start = bounds::initial_n_bound();
        std::cout << "initial bound " << start << "\n";
        red::Phase1Result res = red::phase1(start);
        for (size_t i = 0; i < res.chain.size(); ++i)
            std::cout << (i ? " -> " : "") << res.chain[i];
        std::cout << "\n";
        return 0;
    }
    red::PhaseResult pr =
        phase == 2 ? red::phase2(n_min, n_max, jobs) : red::phase3(n_min, n_max, jobs);
    for (auto& pn : pr.per_n)
        std::cout << "n=" << pn.n << (pn.eliminated ? "  eliminated" : "  open")
                  << "  n~=" << pn.n_tilde << "\n";
    std::cout << "threshold " << pr.threshold << "\n";
    return 0;
}

int run_verify(const std::string& path) {
    pipe::Certificate cert;
    try {
        cert = pipe::read_certificate(path);
    } catch (const std::exception& e) {
        std::cerr << "bad input: " << e.what() << "\n";
        return 2;
    }
    pipe::VerifyReport rep = pipe::verify(cert);
    if (rep.ok) {
        std::cout << "certificate OK (" << rep.checks << " exact checks)\n";
        return 0;
    }
    for (auto& e : rep.errors) std::cout << "FAIL: " << e << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"complete solver for the Fibonacci/Lucas family of cubic Thue equations"};
    app.require_subcommand(1);

    pipe::Config cfg;
    long precision_bits = 0;
    std::string delta = "3/4";
    int jobs = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--precision-bits", precision_bits,
                        "working precision override (0 = per-operation defaults)");
        cmd->add_option("--lll-delta", delta, "LLL parameter (rational, default 3/4)");
        cmd->add_option("--jobs", jobs, "worker threads for per-n work");
    };

    CLI::App* prove = app.add_subcommand("prove", "run the full pipeline");
    long max_n = 0;
    std::string out_path;
    prove->add_option("--max-n", max_n, "restrict to direct solving of n <= max-n");
    prove->add_option("--out", out_path, "certificate output path");
    add_common(prove);

    CLI::App* solve = app.add_subcommand("solve", "solve a single instance");
    long n = 0;
    long box = 20;
    solve->add_option("--n", n, "family parameter")->required();
    solve->add_option("--box", box, "exponent box bound");
    add_common(solve);

    CLI::App* reduce = app.add_subcommand("reduce", "run one reduction phase");
    int phase = 1;
    long n_min = 49, n_max = 132;
    reduce->add_option("--phase", phase, "1, 2 or 3")->required();
    reduce->add_option("--n-min", n_min, "range start (phases 2/3)");
    reduce->add_option("--n-max", n_max, "range end (phases 2/3)");
    add_common(reduce);

    CLI::App* vc = app.add_subcommand("verify-cert", "re-check a certificate");
    std::string cert_path;
    vc->add_option("file", cert_path, "certificate path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (prove->parsed()) {
            cfg.precision_bits = precision_bits;
            cfg.lll_delta = mpq_class(delta);
            cfg.jobs = jobs;
            cfg.max_n = max_n;
            cfg.out_path = out_path;
            return run_prove(cfg);
        }
        if (solve->parsed()) return run_solve(n, box);
        if (reduce->parsed()) {
            if (phase < 1 || phase > 3) {
                std::cerr << "bad phase\n";
                return 2;
            }
            return run_reduce(phase, n_min, n_max, jobs);
        }
        if (vc->parsed()) return run_verify(cert_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
