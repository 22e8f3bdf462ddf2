#pragma once

// Feasibility semantics in one place. check_solution is the single source of
// truth used by the solver, the heuristics and every test: a schedule (plus
// timelines when machines are switched dynamically) is feasible iff it
// produces zero violations under a given ModelConfig.

#include <optional>
#include <string>
#include <vector>

#include "fabsched/model.hpp"

namespace fabsched {

enum class CapacityMode { TaskChannel, StrictMachine };

struct ModelConfig {
    CapacityMode capacity_mode = CapacityMode::TaskChannel;
    bool dynamic_switching = false;
    bool fifo = false;              // implies symmetry_breaking
    bool symmetry_breaking = false;
    bool all_on_at_start = false;   // literal reading: every machine on at t=1
    std::optional<int> fixed_throughput;
    std::optional<CentiKwh> energy_cap;  // cap on total utilisation energy
    std::optional<int> makespan_cap;     // bounds start hours like the horizon

    ModelConfig normalized() const {
        ModelConfig c = *this;
        if (c.fifo) c.symmetry_breaking = true;
        return c;
    }
};

enum class ViolationKind {
    MalformedIndex,
    AssignmentOnce,   // active job misses/duplicates an operation
    Eligibility,
    HorizonBounds,    // start outside 1..window or completion past window+1
    Capacity,
    Precedence,
    Symmetry,
    Fifo,
    StartupExclusion, // op starts within startup_h hours of a switch-on
    OffWhileBusy,     // occupied hour not covered by an on-run
    SwitchAlgebra,    // ill-formed runs (overlap, order, zero-length gap)
    MinOnTime,
    ThroughputMismatch,
    EnergyCap,
    MakespanCap,
};

std::string violation_kind_name(ViolationKind k);

struct Violation {
    ViolationKind kind;
    // offending (job, op, machine, hour); -1 where a slot does not apply
    int job = -1;
    int op = -1;
    int machine = -1;
    int hour = -1;
    std::string message;
};

std::string violations_to_json(const std::vector<Violation>& violations);

// Full feasibility check. `timelines` must cover every machine (by id) when
// config.dynamic_switching is set; otherwise it is ignored.
std::vector<Violation> check_solution(const Instance& inst,
                                      const ModelConfig& config,
                                      const ScheduleSolution& sol,
                                      const std::vector<MachineTimeline>& timelines = {});

struct Interval {
    int first = 0;
    int last = 0;
    int len() const { return last - first + 1; }
};

struct ChannelUse {
    int op = 0;
    int machine = 0;
    std::vector<Interval> busy; // sorted, disjoint for feasible schedules
};

// Busy intervals grouped per (operation, machine) channel, sorted by
// (routing position, machine id). Purely descriptive; no feasibility check.
std::vector<ChannelUse> occupancy(const Instance& inst, const ScheduleSolution& sol);

// Merged per-machine busy blocks (adjacent or overlapping channel hours
// coalesced). Each block's first hour is some operation's start hour, which
// is what the startup-exclusion rule needs. Input to optimize_timeline.
std::vector<Interval> machine_busy_blocks(const Instance& inst,
                                          const ScheduleSolution& sol,
                                          int machine);

} // namespace fabsched
