#pragma once

// Epsilon-constraint studies over (makespan, energy, throughput) and the
// raw weighted-sum scalarization. Sweep points re-solve lexicographically so
// reported numbers are optimizer outputs, not incidental witness values.

#include <optional>
#include <string>
#include <vector>

#include "fabsched/solver.hpp"

namespace fabsched {

struct ParetoPoint {
    int makespan_h = 0;
    CentiKwh energy = 0;
    int throughput = 0;
    std::string objective_mode;
};

struct ParetoFront {
    std::vector<ParetoPoint> points;
};

// Drops dominated points (makespan and energy minimized, throughput
// maximized); keeps first-seen order among the survivors.
ParetoFront pareto_filter(const std::vector<ParetoPoint>& points);

std::string front_to_csv(const ParetoFront& front);

// One energy-capped re-solve at the fixed-throughput minimum makespan.
struct EnergyScenario {
    CentiKwh cap = 0;
    CentiKwh energy = 0;        // greatest energy at the optimal makespan under cap
    int makespan_h = 0;
    std::vector<int> busy_h;    // per machine id
};

struct FixedThroughputStudy {
    int throughput = 0;
    int min_makespan_h = 0;
    CentiKwh te_min = 0;        // least utilisation energy at the minimum makespan
    CentiKwh te_max = 0;        // greatest utilisation energy at the minimum makespan
    std::vector<EnergyScenario> scenarios;
    ParetoFront front;          // dominance-filtered, single point per makespan
};

// Fixes throughput, finds the minimum makespan, brackets the energies
// reachable at that makespan and grids `steps` energy caps inclusively
// between them; each cap is re-solved lexicographically.
FixedThroughputStudy epsilon_sweep_fixed_throughput(const Instance& inst,
                                                    int throughput,
                                                    int steps,
                                                    const Limits& limits = {});

struct ThroughputSweepPoint {
    int makespan_cap = 0;
    int throughput = 0;
    CentiKwh energy = 0;   // utilisation TE; on-time energy when dynamic
    int makespan_h = 0;    // witness makespan, may exceed the cap by p-1
    SolveStatus status = SolveStatus::Optimal;
};

struct ThroughputSweep {
    bool dynamic = false;
    std::vector<ThroughputSweepPoint> points;
    ParetoFront front;
};

// Grids `steps` integer makespan caps on 1..horizon_max; per cap maximizes
// throughput then minimizes energy at that throughput. Caps below the
// single-job critical path yield (0, 0) without solving. `parallel` solves
// that many grid points concurrently (results merged in cap order).
ThroughputSweep throughput_energy_sweep(const Instance& inst, int horizon_max,
                                        int steps, bool dynamic,
                                        const Limits& limits = {}, int parallel = 1);

// Scalarized trade-off at fixed throughput: alpha*makespan + (1-alpha)*TE in
// raw units (hours, KWh).
SolveResult weighted_sum_solve(const Instance& inst, int throughput, Rat alpha,
                               const Limits& limits = {});

} // namespace fabsched
