// The machine-checkable record of a full run: every bound, reduction step,
// convergent check and solution set, with integers serialized as decimal
// strings.  verify() re-checks the exact-integer content without repeating
// any floating-point work.

#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "thuefib/reduction.hpp"
#include "thuefib/solver.hpp"

namespace thuefib::pipe {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "1.0.0";

struct Config {
    long precision_bits = 0;  // 0 = per-operation defaults
    mpq_class lll_delta{3, 4};
    int jobs = 1;
    long max_n = 0;  // 0 = full pipeline; otherwise solve 1..max_n only
    std::string out_path;
};

struct SolvedEntry {
    long n = 0;
    std::string provenance;  // "reduction-certified" | "oracle-verified"
    solver::SolutionSet set;
};

struct EliminatedRange {
    mpz_class lo, hi;
    std::string by;  // "phase1" | "phase2" | "phase3"
};

struct Certificate {
    bool partial = false;
    Config config;
    mpz_class initial_bound;
    std::vector<long> phase1_chain;
    std::vector<red::ReductionState> phase1_steps;
    red::PhaseResult phase2;
    long convergent_lo = 0, convergent_hi = -1;
    std::vector<std::pair<long, bool>> convergent_results;
    red::PhaseResult phase3;
    std::vector<red::PerN> small_boxes;  // per-n boxes for 10..48
    std::vector<SolvedEntry> solved;
    std::vector<EliminatedRange> eliminated;
};

nlohmann::ordered_json to_json(const Certificate& cert);
Certificate from_json(const nlohmann::ordered_json& j);

void write_certificate(const Certificate& cert, const std::string& path);
Certificate read_certificate(const std::string& path);

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> errors;
    int checks = 0;

    void fail(const std::string& why) {
        ok = false;
        errors.push_back(why);
    }
};

// Exact-integer re-verification: solution sets, lattice step conditions,
// determinant preservation, reducedness, distance bounds, and coverage.
VerifyReport verify(const Certificate& cert);

}  // namespace thuefib::pipe
