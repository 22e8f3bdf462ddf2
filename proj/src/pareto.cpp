#include "fabsched/pareto.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace fabsched {

namespace {

bool dominates(const ParetoPoint& a, const ParetoPoint& b) {
    bool no_worse = a.makespan_h <= b.makespan_h && a.energy <= b.energy &&
                    a.throughput >= b.throughput;
    bool strictly = a.makespan_h < b.makespan_h || a.energy < b.energy ||
                    a.throughput > b.throughput;
    return no_worse && strictly;
}

bool same_coords(const ParetoPoint& a, const ParetoPoint& b) {
    return a.makespan_h == b.makespan_h && a.energy == b.energy &&
           a.throughput == b.throughput;
}

} // namespace

ParetoFront pareto_filter(const std::vector<ParetoPoint>& points) {
    ParetoFront front;
    for (size_t i = 0; i < points.size(); ++i) {
        bool keep = true;
        for (size_t k = 0; k < points.size() && keep; ++k) {
            if (k == i) continue;
            if (dominates(points[k], points[i])) keep = false;
            // among exact duplicates only the first survives
            if (k < i && same_coords(points[k], points[i])) keep = false;
        }
        if (keep) front.points.push_back(points[i]);
    }
    return front;
}

std::string front_to_csv(const ParetoFront& front) {
    std::ostringstream out;
    out << "makespan_h,energy_kwh,throughput,objective_mode\n";
    for (const auto& p : front.points)
        out << p.makespan_h << ',' << kwh_str(p.energy) << ',' << p.throughput << ','
            << p.objective_mode << '\n';
    return out.str();
}

FixedThroughputStudy epsilon_sweep_fixed_throughput(const Instance& inst, int throughput,
                                                    int steps, const Limits& limits) {
    FixedThroughputStudy study;
    study.throughput = throughput;
    if (throughput == 0) {
        study.front.points.push_back({0, 0, 0, "empty"});
        return study;
    }

    ModelConfig base;
    base.fixed_throughput = throughput;

    SolveResult ms_r = solve(inst, base, Objective::min_makespan(), limits);
    if (!ms_r.solution) return study; // infeasible count; empty study
    study.min_makespan_h = ms_r.witness_makespan;

    ModelConfig at_ms = base;
    at_ms.makespan_cap = study.min_makespan_h;
    SolveResult lo = solve(inst, at_ms, Objective::min_energy(), limits);
    SolveResult hi = solve(inst, at_ms, Objective::max_energy(), limits);
    study.te_min = lo.witness_energy;
    study.te_max = hi.witness_energy;

    // inclusive energy-cap grid between the two extremes
    std::vector<CentiKwh> caps;
    if (study.te_min == study.te_max || steps <= 1) {
        caps.push_back(study.te_max);
    } else {
        int n = std::max(steps, 2);
        for (int i = 0; i < n; ++i) {
            CentiKwh c = study.te_min +
                         (study.te_max - study.te_min) * static_cast<CentiKwh>(i) /
                             static_cast<CentiKwh>(n - 1);
            if (caps.empty() || caps.back() != c) caps.push_back(c);
        }
        if (caps.back() != study.te_max) caps.push_back(study.te_max);
    }

    std::vector<ParetoPoint> pts;
    for (CentiKwh cap : caps) {
        ModelConfig capped = base;
        capped.energy_cap = cap;
        SolveResult r1 = solve(inst, capped, Objective::min_makespan(), limits);
        if (!r1.solution) continue;
        EnergyScenario sc;
        sc.cap = cap;
        sc.makespan_h = r1.witness_makespan;
        ModelConfig tight = capped;
        tight.makespan_cap = sc.makespan_h;
        SolveResult r2 = solve(inst, tight, Objective::max_energy(), limits);
        const SolveResult& wit = r2.solution ? r2 : r1;
        sc.energy = wit.witness_energy;
        sc.busy_h.assign(inst.machines.size(), 0);
        for (const auto& a : wit.solution->assignments)
            sc.busy_h[static_cast<size_t>(a.machine)] +=
                inst.operation(a.op).process_time(a.machine);
        study.scenarios.push_back(sc);
        pts.push_back({sc.makespan_h, sc.energy, throughput,
                       "min-makespan|te-cap=" + kwh_str(cap)});
    }
    study.front = pareto_filter(pts);
    return study;
}

namespace {

ThroughputSweepPoint sweep_point(const Instance& inst, int cap, bool dynamic,
                                 const Limits& limits) {
    ThroughputSweepPoint pt;
    pt.makespan_cap = cap;
    // reporting convention: a cap counts wafers only when a whole pass fits
    // inside it, even though the grid lets a final op spill one hour past
    if (cap < inst.critical_path_h()) {
        pt.status = SolveStatus::Optimal;
        return pt;
    }
    ModelConfig cfg;
    cfg.makespan_cap = cap;
    cfg.dynamic_switching = dynamic;
    SolveResult r1 = solve(inst, cfg, Objective::max_throughput(), limits);
    pt.status = r1.status;
    int n = r1.objective_value.den == 0
                ? 0
                : static_cast<int>(r1.objective_value.num / r1.objective_value.den);
    pt.throughput = n;
    if (n == 0 || !r1.solution) return pt;
    ModelConfig fixed = cfg;
    fixed.fixed_throughput = n;
    SolveResult r2 = solve(inst, fixed, Objective::min_energy(), limits);
    if (r2.solution) {
        pt.energy = r2.witness_energy;
        pt.makespan_h = r2.witness_makespan;
        if (r2.status != SolveStatus::Optimal) pt.status = r2.status;
    } else {
        pt.energy = r1.witness_energy;
        pt.makespan_h = r1.witness_makespan;
    }
    return pt;
}

} // namespace

ThroughputSweep throughput_energy_sweep(const Instance& inst, int horizon_max, int steps,
                                        bool dynamic, const Limits& limits, int parallel) {
    ThroughputSweep sweep;
    sweep.dynamic = dynamic;

    std::vector<int> caps;
    if (steps <= 0 || steps >= horizon_max) {
        for (int c = 1; c <= horizon_max; ++c) caps.push_back(c);
    } else if (steps == 1) {
        caps.push_back(horizon_max);
    } else {
        for (int i = 0; i < steps; ++i) {
            int c = 1 + static_cast<int>((static_cast<long long>(horizon_max - 1) * i) /
                                         (steps - 1));
            if (caps.empty() || caps.back() != c) caps.push_back(c);
        }
    }

    sweep.points.assign(caps.size(), ThroughputSweepPoint{});
    std::atomic<size_t> cursor{0};
    auto work = [&] {
        for (size_t i = cursor.fetch_add(1); i < caps.size(); i = cursor.fetch_add(1))
            sweep.points[i] = sweep_point(inst, caps[i], dynamic, limits);
    };
    int workers = std::max(1, std::min<int>(parallel, static_cast<int>(caps.size())));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 1; t < workers; ++t) pool.emplace_back(work);
        work();
        for (auto& th : pool) th.join();
    }

    std::vector<ParetoPoint> pts;
    for (const auto& p : sweep.points)
        pts.push_back({p.makespan_h, p.energy, p.throughput,
                       "max-throughput|min-energy|cap=" + std::to_string(p.makespan_cap)});
    sweep.front = pareto_filter(pts);
    return sweep;
}

SolveResult weighted_sum_solve(const Instance& inst, int throughput, Rat alpha,
                               const Limits& limits) {
    ModelConfig cfg;
    cfg.fixed_throughput = throughput;
    return solve(inst, cfg, Objective::weighted(alpha), limits);
}

} // namespace fabsched
