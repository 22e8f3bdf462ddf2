#include "fabsched/fifo.hpp"

#include <map>
#include <sstream>
#include <utility>

namespace fabsched {

std::string fifo_policy_name(FifoMachinePolicy p) {
    switch (p) {
        case FifoMachinePolicy::SolverFree: return "solver_free";
        case FifoMachinePolicy::Cheapest: return "cheapest";
        case FifoMachinePolicy::MostExpensive: return "most_expensive";
    }
    return "unknown";
}

namespace {

// fixed-machine dispatch: every job's visit k runs on one chosen machine, in
// job order, as early as the channel and the job's own route allow
SolveResult fifo_fixed_policy(const Instance& inst, const FifoConfig& config, bool expensive) {
    int window = inst.horizon;
    SolveResult r;
    ScheduleSolution sol;
    std::map<std::pair<int, int>, int> lane_free; // (routing pos, machine) -> next free hour
    int K = static_cast<int>(inst.routing.size());
    std::vector<int> prev_start(static_cast<size_t>(K), 0), prev_p(static_cast<size_t>(K), 0);
    int ms = 0;
    for (int j = 0; j < config.throughput; ++j) {
        sol.active_jobs.push_back(j);
        int ready = 1;
        for (int q = 0; q < K; ++q) {
            int op = inst.routing[static_cast<size_t>(q)];
            const auto& def = inst.operation(op);
            int pick = -1;
            for (const auto& [m, p] : def.eligible) {
                (void)p;
                if (pick < 0) {
                    pick = m;
                    continue;
                }
                int a = inst.machine(m).power_cw, b = inst.machine(pick).power_cw;
                if (expensive ? a > b : a < b) pick = m;
            }
            int p = def.process_time(pick);
            int s = ready;
            if (j > 0) s = std::max(s, prev_start[static_cast<size_t>(q)] + prev_p[static_cast<size_t>(q)]);
            auto& free_at = lane_free[{q, pick}];
            s = std::max(s, free_at == 0 ? 1 : free_at);
            if (s > window || s + p - 1 > window + 1) {
                r.status = SolveStatus::Infeasible;
                r.note = "job " + std::to_string(j) + " cannot start visit " + std::to_string(q) +
                         " within the horizon";
                return r;
            }
            sol.assignments.push_back({j, op, pick, s});
            free_at = s + p;
            ready = s + p;
            prev_start[static_cast<size_t>(q)] = s;
            prev_p[static_cast<size_t>(q)] = p;
            ms = std::max(ms, s + p - 1);
        }
    }
    r.status = SolveStatus::Optimal;
    r.solution = std::move(sol);
    r.witness_makespan = ms;
    r.witness_energy = utilisation_energy_total(inst, *r.solution);
    r.objective_value = Rat::of(r.witness_energy, 100);
    r.dual_bound = r.objective_value;
    r.note = "fifo " + fifo_policy_name(config.machine_policy);
    return r;
}

} // namespace

SolveResult fifo_solve(const Instance& inst, const FifoConfig& config) {
    Instance local = inst;
    if (config.horizon > 0) local.horizon = config.horizon;
    if (config.throughput < 1 || config.throughput > local.num_jobs) {
        SolveResult r;
        r.status = SolveStatus::Infeasible;
        r.note = "throughput outside 1..num_jobs";
        return r;
    }
    if (auto rep = validate_instance(local); !rep.ok()) {
        SolveResult r;
        r.status = SolveStatus::Infeasible;
        r.note = "instance invalid: " + rep.summary();
        return r;
    }
    if (config.machine_policy != FifoMachinePolicy::SolverFree)
        return fifo_fixed_policy(local, config,
                                 config.machine_policy == FifoMachinePolicy::MostExpensive);

    ModelConfig cfg;
    cfg.fifo = true;
    cfg.fixed_throughput = config.throughput;
    SolveResult r = solve(local, cfg, Objective::first_feasible());
    if (r.solution) {
        r.witness_energy = utilisation_energy_total(local, *r.solution);
        r.objective_value = Rat::of(r.witness_energy, 100);
        r.dual_bound = r.objective_value;
        r.note = "fifo solver_free";
    }
    return r;
}

std::vector<FifoSweepPoint> fifo_sweep(const Instance& inst, int throughput, int from_h,
                                       int to_h) {
    std::vector<FifoSweepPoint> out;
    for (int h = from_h; h <= to_h; ++h) {
        FifoConfig cfg;
        cfg.throughput = throughput;
        cfg.horizon = h;
        cfg.machine_policy = FifoMachinePolicy::SolverFree;
        SolveResult r = fifo_solve(inst, cfg);
        FifoSweepPoint pt;
        pt.horizon_h = h;
        if (r.solution) {
            pt.energy = r.witness_energy;
            pt.makespan_h = r.witness_makespan;
        }
        out.push_back(pt);
    }
    return out;
}

std::string fifo_sweep_to_csv(const std::vector<FifoSweepPoint>& points) {
    std::ostringstream out;
    out << "horizon_h,energy_kwh,makespan_h\n";
    for (const auto& p : points)
        out << p.horizon_h << ',' << kwh_str(p.energy) << ',' << p.makespan_h << '\n';
    return out.str();
}

} // namespace fabsched
