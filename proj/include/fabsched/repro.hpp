#pragma once

// The reproduction table: every published figure this engine is expected to
// hit, each as one pass/fail check. Shared by the acceptance test binary and
// the `fabsched reproduce` subcommand.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fabsched {

struct CriterionResult {
    std::string id;       // e.g. "C3a"
    std::string what;
    std::string computed;
    std::string expected;
    bool pass = false;
};

struct ReproOptions {
    std::string only;   // substring filter on criterion ids, empty = all
    int parallel = 1;   // worker threads for the sweep criteria
    bool verbose = false;
};

std::vector<CriterionResult> run_reproduction(const ReproOptions& opts,
                                              const std::function<void(const CriterionResult&)>& on_result = {});

std::string reproduction_to_json(const std::vector<CriterionResult>& results);

// Randomized oracle sweeps backing the equivalence criteria; also reused by
// the unit tests. Deterministic for a given seed.
struct OracleRun {
    int cases = 0;
    int failures = 0;
    std::string first_failure; // empty when all cases agree
};

// branch-and-bound vs exhaustive enumeration on tiny random instances,
// cycling capacity modes and objectives
OracleRun run_solver_oracle(int cases, std::uint64_t seed);

// per-machine switching DP vs exhaustive on/off subset enumeration
OracleRun run_timeline_oracle(int cases, std::uint64_t seed);

} // namespace fabsched
