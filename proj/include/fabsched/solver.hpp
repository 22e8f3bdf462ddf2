#pragma once

// Exact depth-first branch-and-bound over the time grid. Branching order is
// fixed (job, routing position, machine id, start hour) so results are
// deterministic; admissible bounds plus greedy incumbents close the stock
// fab instances at the root.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fabsched/model.hpp"
#include "fabsched/verify.hpp"

namespace fabsched {

enum class ObjectiveKind {
    MinMakespan,
    MinEnergy,      // utilisation energy; on-time energy when dynamic
    MaxEnergy,      // utilisation energy ceiling (epsilon-study bracket)
    MaxThroughput,
    WeightedSum,    // alpha*makespan + (1-alpha)*TE, raw units
    FirstFeasible,  // stop at the first feasible schedule
};

struct Objective {
    ObjectiveKind kind = ObjectiveKind::MinMakespan;
    Rat alpha = Rat::of(1); // used by WeightedSum only

    static Objective min_makespan() { return {ObjectiveKind::MinMakespan, Rat::of(1)}; }
    static Objective min_energy() { return {ObjectiveKind::MinEnergy, Rat::of(1)}; }
    static Objective max_energy() { return {ObjectiveKind::MaxEnergy, Rat::of(1)}; }
    static Objective max_throughput() { return {ObjectiveKind::MaxThroughput, Rat::of(1)}; }
    static Objective weighted(Rat alpha) { return {ObjectiveKind::WeightedSum, alpha}; }
    static Objective first_feasible() { return {ObjectiveKind::FirstFeasible, Rat::of(1)}; }
    std::string name() const;
};

enum class SolveStatus {
    Optimal,
    FeasibleBound,    // incumbent exists, proof interrupted by a limit
    Infeasible,       // proven empty (or instance fails validation)
    HorizonExhausted, // limit hit before any feasible schedule was found
};

std::string solve_status_name(SolveStatus s);

struct Limits {
    double time_limit_s = 0;        // 0 = unlimited
    std::int64_t node_budget = 0;   // 0 = unlimited
};

struct SolveResult {
    SolveStatus status = SolveStatus::Infeasible;
    std::optional<ScheduleSolution> solution;
    std::vector<MachineTimeline> timelines; // one per machine when dynamic
    Rat objective_value;  // makespan h / energy centi-KWh per 100 / jobs / weighted
    Rat dual_bound;       // proven bound on the objective
    std::int64_t nodes_explored = 0;
    double wall_time_s = 0;
    std::string note;     // certificate or limit explanation

    bool optimal() const { return status == SolveStatus::Optimal; }
    // utilisation (or on-time, when dynamic) energy of the witness, centi-KWh
    CentiKwh witness_energy = 0;
    int witness_makespan = 0;
};

std::string solve_result_to_json(const SolveResult& r, bool include_wall_time = true);

SolveResult solve(const Instance& inst, const ModelConfig& config,
                  const Objective& objective, const Limits& limits = {});

// Admissible bound on the objective given a partial assignment (records for
// a prefix of (job, routing position) pairs in branching order).
Rat lower_bound(const Instance& inst, const ModelConfig& config,
                const Objective& objective,
                const std::vector<Assignment>& partial);

enum class GreedyFlavor {
    EarliestFree, // earliest feasible start, machine id breaks ties
    Cheapest,     // cheapest eligible machine, then earliest start on it
    Priciest,     // most expensive eligible machine first
};

// Earliest-start list schedule in job-major routing order. Returns nothing
// when the caps cannot be met. Feasible by construction (verifier-checked in
// tests), used to seed the search and by the FIFO study.
std::optional<ScheduleSolution> greedy_upper_bound(const Instance& inst,
                                                   const ModelConfig& config,
                                                   GreedyFlavor flavor,
                                                   int active_jobs);

// Exhaustive reference solver for tiny cases: enumerates job activation sets
// and every (machine, start) pick with only feasibility pruning, evaluating
// candidates through check_solution semantics. Refuses num_jobs > 3 or
// horizon > 14 (throws std::invalid_argument).
SolveResult brute_force_solve(const Instance& inst, const ModelConfig& config,
                              const Objective& objective);

// Total utilisation energy of a schedule, centi-KWh.
CentiKwh utilisation_energy_total(const Instance& inst, const ScheduleSolution& sol);

// Minimum-on-time timelines for every machine of a schedule (dynamic mode).
// With all_on_at_start, idle machines also get the shortest legal run from
// hour 1 instead of staying off.
std::vector<MachineTimeline> best_timelines(const Instance& inst, const ScheduleSolution& sol,
                                            bool all_on_at_start = false);

// Total on-time energy of a timeline set, centi-KWh.
CentiKwh timeline_energy_total(const Instance& inst, const std::vector<MachineTimeline>& tls);

} // namespace fabsched
