#pragma once

// FIFO dispatch baseline: every operation processes jobs in job order
// (job j's visit k starts only after job j-1's visit k completed). Machine
// choice is a policy knob because the energy spread between the extreme
// policies is the point of the study.

#include <string>
#include <vector>

#include "fabsched/solver.hpp"

namespace fabsched {

enum class FifoMachinePolicy {
    SolverFree,    // earliest-free channel, machine id breaks ties
    Cheapest,      // lowest-power eligible machine always
    MostExpensive, // highest-power eligible machine always
};

std::string fifo_policy_name(FifoMachinePolicy p);

struct FifoConfig {
    int throughput = 0;     // jobs to push through
    int horizon = 0;        // start-hour grid for this run
    FifoMachinePolicy machine_policy = FifoMachinePolicy::SolverFree;
};

// First verifier-feasible FIFO schedule under the policy order; no objective
// is optimized. objective_value/witness fields carry the resulting TE.
SolveResult fifo_solve(const Instance& inst, const FifoConfig& config);

struct FifoSweepPoint {
    int horizon_h = 0;
    CentiKwh energy = 0;
    int makespan_h = 0;
};

// One solver_free fifo_solve per horizon in [from_h, to_h].
std::vector<FifoSweepPoint> fifo_sweep(const Instance& inst, int throughput,
                                       int from_h, int to_h);

std::string fifo_sweep_to_csv(const std::vector<FifoSweepPoint>& points);

} // namespace fabsched
