#pragma once

// Core dataset and solution types for the re-entrant flexible job shop.
// Time is a grid of integer hours 1..horizon. An assignment started at hour s
// with process time p occupies hours [s, s+p-1]; the grid bounds start hours,
// so the last completion may land on horizon+1.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fabsched/num.hpp"

namespace fabsched {

struct MachineDef {
    int id = 0;
    std::string name;
    int power_cw = 0;  // centi-KW while switched on
    int startup_h = 0; // hours after switch-on before an op may start
    int min_on_h = 0;  // minimum run length when followed by a switch-off
};

struct OperationDef {
    int id = 0;
    std::string name;
    // eligible machine id -> process time in hours
    std::map<int, int> eligible;

    int process_time(int machine) const;
    int min_process_time() const;
};

struct Instance {
    std::vector<MachineDef> machines;
    std::vector<OperationDef> operations;
    std::vector<int> routing; // operation ids, visit order shared by all jobs
    int num_jobs = 0;
    int horizon = 0;

    const MachineDef& machine(int id) const { return machines.at(static_cast<size_t>(id)); }
    const OperationDef& operation(int id) const { return operations.at(static_cast<size_t>(id)); }
    // sum over the routing of the fastest eligible process time
    int critical_path_h() const;
};

struct Assignment {
    int job = 0;
    int op = 0; // operation id
    int machine = 0;
    int start = 0;
};

struct ScheduleSolution {
    std::vector<Assignment> assignments; // kept sorted by (job, op routing position)
    std::vector<int> active_jobs;        // sorted ascending

    int throughput() const { return static_cast<int>(active_jobs.size()); }
};

int completion_hour(const Instance& inst, const Assignment& a);
// last occupied hour over all assignments; 0 for an empty schedule
int makespan(const Instance& inst, const ScheduleSolution& sol);

// One maximal on-run of a machine: switched on at `on`, last on-hour `off`.
// A run whose `off` is before the horizon implies a switch-off event at
// off+1; a run ending exactly at the horizon has no switch-off event.
struct OnRun {
    int on = 0;
    int off = 0;
};

struct MachineTimeline {
    int machine = 0;
    std::vector<OnRun> runs; // disjoint, sorted, gaps of at least one hour

    int total_on_h() const;
    bool on_at(int hour) const;
};

// Per-machine utilisation energy (busy hours x power, counting each
// operation's hours even where channels overlap in real time).
struct EnergyReport {
    std::vector<int> busy_h;          // indexed by machine id
    std::vector<CentiKwh> energy;     // indexed by machine id
    CentiKwh total = 0;
};

struct ValidationIssue {
    std::string where;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

ValidationReport validate_instance(const Instance& inst);

// State-task-network expansion: one workstation visited `visits` times
// becomes that many distinct operations sharing the workstation's machines.
struct Workstation {
    std::string name;
    std::vector<int> machines;
    std::vector<int> visit_times; // process hours per visit, size = visit count
};

// visit_order lists (workstation index, visit index) pairs covering every
// visit exactly once; the result is (operations, routing) in that order.
// Throws std::invalid_argument when the order references undefined visits or
// misses/duplicates one.
std::pair<std::vector<OperationDef>, std::vector<int>>
expand_stn(const std::vector<Workstation>& stations,
           const std::vector<std::pair<int, int>>& visit_order);

// The five-machine Intel Minifab dataset: two diffusers, two implanters and
// one lithographer, six-step re-entrant routing.
Instance build_minifab(int num_jobs = 5, int horizon = 40);

// JSON round trip. Parsing validates shape and referential integrity but not
// the semantic checks of validate_instance.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

// FNV-1a over the canonical JSON form, for run manifests.
std::string instance_hash(const Instance& inst);

} // namespace fabsched
