#include "fabsched/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "fabsched/timeline_opt.hpp"

namespace fabsched {

namespace {

using Clock = std::chrono::steady_clock;
constexpr std::int64_t kInfScore = std::numeric_limits<std::int64_t>::max() / 4;

// occupancy bitset over hours 1..grid_end
struct HourSet {
    std::vector<std::uint64_t> w;

    void init(int grid_end) { w.assign(static_cast<size_t>(grid_end) / 64 + 1, 0); }
    bool free_range(int a, int b) const {
        for (int h = a; h <= b; ++h)
            if (w[static_cast<size_t>(h) >> 6] & (1ull << (h & 63))) return false;
        return true;
    }
    void set_range(int a, int b) {
        for (int h = a; h <= b; ++h) w[static_cast<size_t>(h) >> 6] |= 1ull << (h & 63);
    }
    void clear_range(int a, int b) {
        for (int h = a; h <= b; ++h) w[static_cast<size_t>(h) >> 6] &= ~(1ull << (h & 63));
    }
};

struct Search {
    const Instance& inst;
    ModelConfig cfg;
    Objective obj;
    int K = 0;
    int n_active = 0;
    int window = 0;    // last allowed start hour
    int grid_end = 0;  // window + 1, last hour a completion may touch
    bool dyn = false;
    bool sym_floor = false;
    bool strict = false;

    std::vector<int> opid;                  // pos -> operation id
    std::vector<std::vector<int>> em;       // pos -> eligible machine ids
    std::vector<std::vector<int>> ep;       // pos -> process times, aligned with em
    std::vector<int> minp;                  // pos -> fastest process time
    std::vector<int> tail;                  // pos -> sum of minp strictly after pos
    std::vector<CentiKwh> min_ew, max_ew;   // pos -> min/max p*power
    std::vector<CentiKwh> mine_tail;        // pos -> sum of min_ew at pos and after
    std::vector<CentiKwh> maxe_tail;        // pos -> sum of max_ew at pos and after
    std::vector<int> dyn_floor;             // pos -> 1 + min startup over eligible (1 if static)

    std::vector<HourSet> lanes;             // per (pos, machine) channel, or per machine in strict mode
    std::vector<std::vector<int>> lane_of;  // pos -> aligned with em

    std::vector<int> mach, start;           // (job*K + pos) -> choice, -1 unassigned
    std::vector<int> ready;                 // job -> floor for its next start
    std::vector<int> done;                  // job -> count of assigned positions
    CentiKwh te = 0;                        // committed utilisation energy
    int msofar = 0;

    // per-machine busy coverage, for dynamic bounds and leaf timelines
    std::vector<std::vector<std::uint8_t>> mcount;
    std::vector<int> munion;

    bool has_inc = false;
    std::int64_t inc_score = kInfScore;
    ScheduleSolution inc_sol;
    std::vector<MachineTimeline> inc_tl;
    CentiKwh inc_energy = 0; // witness energy (on-time when dynamic)
    int inc_ms = 0;

    std::int64_t nodes = 0;
    std::int64_t node_budget = 0; // 0 = unlimited
    Clock::time_point deadline{};
    bool has_deadline = false;
    bool limit_hit = false;
    bool stop = false; // first-feasible short circuit

    Search(const Instance& i, const ModelConfig& c, const Objective& o, int active)
        : inst(i), cfg(c.normalized()), obj(o), n_active(active) {
        K = static_cast<int>(inst.routing.size());
        window = inst.horizon;
        if (cfg.makespan_cap) window = std::min(window, *cfg.makespan_cap);
        grid_end = window + 1;
        dyn = cfg.dynamic_switching;
        strict = cfg.capacity_mode == CapacityMode::StrictMachine;

        bool machine_indep = true;
        opid.resize(static_cast<size_t>(K));
        em.resize(static_cast<size_t>(K));
        ep.resize(static_cast<size_t>(K));
        minp.assign(static_cast<size_t>(K), 0);
        min_ew.assign(static_cast<size_t>(K), 0);
        max_ew.assign(static_cast<size_t>(K), 0);
        dyn_floor.assign(static_cast<size_t>(K), 1);
        for (int q = 0; q < K; ++q) {
            int op = inst.routing[static_cast<size_t>(q)];
            opid[static_cast<size_t>(q)] = op;
            const auto& def = inst.operation(op);
            int pmin = 0, fmin = 0;
            CentiKwh emin = 0, emax = 0;
            for (const auto& [m, p] : def.eligible) {
                em[static_cast<size_t>(q)].push_back(m);
                ep[static_cast<size_t>(q)].push_back(p);
                CentiKwh e = static_cast<CentiKwh>(p) * inst.machine(m).power_cw;
                int f = 1 + (dyn ? inst.machine(m).startup_h : 0);
                if (em[static_cast<size_t>(q)].size() == 1) {
                    pmin = p; emin = emax = e; fmin = f;
                } else {
                    if (p != pmin) machine_indep = false;
                    pmin = std::min(pmin, p);
                    emin = std::min(emin, e);
                    emax = std::max(emax, e);
                    fmin = std::min(fmin, f);
                }
            }
            minp[static_cast<size_t>(q)] = pmin;
            min_ew[static_cast<size_t>(q)] = emin;
            max_ew[static_cast<size_t>(q)] = emax;
            dyn_floor[static_cast<size_t>(q)] = fmin;
        }
        tail.assign(static_cast<size_t>(K) + 1, 0);
        mine_tail.assign(static_cast<size_t>(K) + 1, 0);
        maxe_tail.assign(static_cast<size_t>(K) + 1, 0);
        for (int q = K - 1; q >= 0; --q) {
            tail[static_cast<size_t>(q)] = tail[static_cast<size_t>(q) + 1] + minp[static_cast<size_t>(q)];
            mine_tail[static_cast<size_t>(q)] = mine_tail[static_cast<size_t>(q) + 1] + min_ew[static_cast<size_t>(q)];
            maxe_tail[static_cast<size_t>(q)] = maxe_tail[static_cast<size_t>(q) + 1] + max_ew[static_cast<size_t>(q)];
        }
        // ordering identical jobs by start is value-preserving only when each
        // operation's duration does not depend on the machine
        sym_floor = cfg.symmetry_breaking || (machine_indep && n_active > 1);

        int n_lanes = 0;
        lane_of.resize(static_cast<size_t>(K));
        std::vector<int> machine_lane(inst.machines.size(), -1);
        for (int q = 0; q < K; ++q) {
            for (int m : em[static_cast<size_t>(q)]) {
                if (strict) {
                    if (machine_lane[static_cast<size_t>(m)] < 0) machine_lane[static_cast<size_t>(m)] = n_lanes++;
                    lane_of[static_cast<size_t>(q)].push_back(machine_lane[static_cast<size_t>(m)]);
                } else {
                    lane_of[static_cast<size_t>(q)].push_back(n_lanes++);
                }
            }
        }
        lanes.resize(static_cast<size_t>(n_lanes));
        for (auto& l : lanes) l.init(grid_end);

        mach.assign(static_cast<size_t>(n_active) * static_cast<size_t>(K), -1);
        start.assign(static_cast<size_t>(n_active) * static_cast<size_t>(K), -1);
        ready.assign(static_cast<size_t>(std::max(n_active, 1)), 1);
        done.assign(static_cast<size_t>(std::max(n_active, 1)), 0);
        mcount.assign(inst.machines.size(), std::vector<std::uint8_t>(static_cast<size_t>(grid_end) + 1, 0));
        munion.assign(inst.machines.size(), 0);
    }

    bool over_limit() {
        if (limit_hit) return true;
        if (node_budget && nodes >= node_budget) { limit_hit = true; return true; }
        if (has_deadline && (nodes & 255) == 0 && Clock::now() >= deadline) {
            limit_hit = true;
            return true;
        }
        return false;
    }

    // admissible makespan bound for the current partial assignment
    int lb_makespan() const {
        int ms = msofar;
        // chain bound per unfinished job, collecting earliest starts per position
        // for the channel-load bound below
        std::vector<int> t0(static_cast<size_t>(K), 0);
        std::vector<int> load(static_cast<size_t>(K), 0);
        for (int j = 0; j < n_active; ++j) {
            if (done[static_cast<size_t>(j)] == K) continue;
            int t = ready[static_cast<size_t>(j)];
            for (int q = done[static_cast<size_t>(j)]; q < K; ++q) {
                int s = std::max(t, dyn_floor[static_cast<size_t>(q)]);
                if (load[static_cast<size_t>(q)] == 0 || s < t0[static_cast<size_t>(q)])
                    t0[static_cast<size_t>(q)] = s;
                load[static_cast<size_t>(q)] += minp[static_cast<size_t>(q)];
                t = s + minp[static_cast<size_t>(q)];
            }
            ms = std::max(ms, t - 1);
        }
        // per-position load over its eligible channels
        for (int q = 0; q < K; ++q) {
            if (!load[static_cast<size_t>(q)]) continue;
            int ch = static_cast<int>(em[static_cast<size_t>(q)].size());
            int span = (load[static_cast<size_t>(q)] + ch - 1) / ch;
            ms = std::max(ms, t0[static_cast<size_t>(q)] + span - 1 + tail[static_cast<size_t>(q) + 1]);
        }
        return ms;
    }

    CentiKwh lb_energy_min() const {
        CentiKwh e = te;
        for (int j = 0; j < n_active; ++j)
            e += mine_tail[static_cast<size_t>(done[static_cast<size_t>(j)])];
        return e;
    }

    CentiKwh ub_energy_max() const {
        CentiKwh e = te;
        for (int j = 0; j < n_active; ++j)
            e += maxe_tail[static_cast<size_t>(done[static_cast<size_t>(j)])];
        return e;
    }

    CentiKwh lb_energy_dyn() const {
        CentiKwh e = 0;
        for (size_t m = 0; m < inst.machines.size(); ++m)
            e += static_cast<CentiKwh>(munion[m]) * inst.machines[m].power_cw;
        return e;
    }

    std::int64_t score_of(int ms, CentiKwh energy) const {
        switch (obj.kind) {
            case ObjectiveKind::MinMakespan: return ms;
            case ObjectiveKind::MinEnergy: return energy;
            case ObjectiveKind::MaxEnergy: return -energy;
            case ObjectiveKind::WeightedSum:
                return obj.alpha.num * static_cast<std::int64_t>(ms) * 100 +
                       (obj.alpha.den - obj.alpha.num) * energy;
            case ObjectiveKind::FirstFeasible: return 0;
            case ObjectiveKind::MaxThroughput: return 0; // handled by the outer loop
        }
        return 0;
    }

    std::int64_t lb_score() const {
        switch (obj.kind) {
            case ObjectiveKind::MinMakespan: return lb_makespan();
            case ObjectiveKind::MinEnergy: return dyn ? lb_energy_dyn() : lb_energy_min();
            case ObjectiveKind::MaxEnergy: {
                // no feasible schedule exceeds the energy cap, so it bounds
                // the ceiling as tightly as the per-op maxima
                CentiKwh ub = ub_energy_max();
                if (cfg.energy_cap && *cfg.energy_cap < ub) ub = *cfg.energy_cap;
                return -ub;
            }
            case ObjectiveKind::WeightedSum:
                return obj.alpha.num * static_cast<std::int64_t>(lb_makespan()) * 100 +
                       (obj.alpha.den - obj.alpha.num) * lb_energy_min();
            case ObjectiveKind::FirstFeasible: return 0;
            case ObjectiveKind::MaxThroughput: return 0;
        }
        return 0;
    }

    std::vector<Interval> busy_blocks(int m) const {
        std::vector<Interval> out;
        const auto& cnt = mcount[static_cast<size_t>(m)];
        int h = 1;
        while (h <= grid_end) {
            if (!cnt[static_cast<size_t>(h)]) { ++h; continue; }
            int b = h;
            while (h <= grid_end && cnt[static_cast<size_t>(h)]) ++h;
            out.push_back({b, h - 1});
        }
        return out;
    }

    std::vector<MachineTimeline> leaf_timelines() const {
        std::vector<MachineTimeline> out;
        for (size_t m = 0; m < inst.machines.size(); ++m) {
            const auto& md = inst.machines[m];
            // timelines live on the full horizon grid even under a makespan
            // cap: a run ending at the cap still has a switch-off event, so
            // the min-on waiver only applies at the real horizon
            out.push_back(optimize_timeline(busy_blocks(static_cast<int>(m)), md.id,
                                            md.startup_h, md.min_on_h, inst.horizon));
        }
        return out;
    }

    ScheduleSolution snapshot() const {
        ScheduleSolution s;
        for (int j = 0; j < n_active; ++j) {
            s.active_jobs.push_back(j);
            for (int q = 0; q < K; ++q) {
                size_t d = static_cast<size_t>(j) * static_cast<size_t>(K) + static_cast<size_t>(q);
                s.assignments.push_back({j, opid[static_cast<size_t>(q)], mach[d], start[d]});
            }
        }
        return s;
    }

    void offer_leaf() {
        std::vector<MachineTimeline> tl;
        CentiKwh energy = te;
        if (dyn) {
            tl = leaf_timelines();
            CentiKwh on = 0;
            for (const auto& t : tl)
                on += static_cast<CentiKwh>(t.total_on_h()) * inst.machine(t.machine).power_cw;
            if (obj.kind == ObjectiveKind::MinEnergy) energy = on;
            std::int64_t sc = score_of(msofar, energy);
            if (!has_inc || sc < inc_score) {
                has_inc = true;
                inc_score = sc;
                inc_sol = snapshot();
                inc_tl = std::move(tl);
                inc_energy = on;
                inc_ms = msofar;
            }
        } else {
            std::int64_t sc = score_of(msofar, energy);
            if (!has_inc || sc < inc_score) {
                has_inc = true;
                inc_score = sc;
                inc_sol = snapshot();
                inc_tl.clear();
                inc_energy = te;
                inc_ms = msofar;
            }
        }
        if (obj.kind == ObjectiveKind::FirstFeasible) stop = true;
    }

    // load a full or partial schedule as the committed state; entries that do
    // not fit the grid or eligibility are ignored rather than trusted
    void load(const std::vector<Assignment>& partial) {
        std::vector<int> pos_of(inst.operations.size(), -1);
        for (int q = 0; q < K; ++q) pos_of[static_cast<size_t>(opid[static_cast<size_t>(q)])] = q;
        for (const auto& a : partial) {
            if (a.job < 0 || a.job >= n_active) continue;
            if (a.op < 0 || a.op >= static_cast<int>(inst.operations.size())) continue;
            int q = pos_of[static_cast<size_t>(a.op)];
            if (q < 0) continue;
            const auto& def = inst.operation(a.op);
            auto it = def.eligible.find(a.machine);
            if (it == def.eligible.end()) continue;
            if (a.start < 1 || a.start + it->second - 1 > grid_end) continue;
            place(a.job, q, a.machine, a.start);
        }
    }

    void place(int j, int q, int m, int s) {
        size_t d = static_cast<size_t>(j) * static_cast<size_t>(K) + static_cast<size_t>(q);
        int p = inst.operation(opid[static_cast<size_t>(q)]).process_time(m);
        mach[d] = m;
        start[d] = s;
        done[static_cast<size_t>(j)]++;
        int comp = s + p - 1;
        if (comp + 1 > ready[static_cast<size_t>(j)]) ready[static_cast<size_t>(j)] = comp + 1;
        msofar = std::max(msofar, comp);
        te += static_cast<CentiKwh>(p) * inst.machine(m).power_cw;
        size_t mi = 0;
        while (em[static_cast<size_t>(q)][mi] != m) ++mi;
        lanes[static_cast<size_t>(lane_of[static_cast<size_t>(q)][mi])].set_range(s, comp);
        auto& cnt = mcount[static_cast<size_t>(m)];
        for (int h = s; h <= comp; ++h)
            if (cnt[static_cast<size_t>(h)]++ == 0) munion[static_cast<size_t>(m)]++;
    }

    void unplace(int j, int q, int m, int s, int prev_ready, int prev_ms) {
        size_t d = static_cast<size_t>(j) * static_cast<size_t>(K) + static_cast<size_t>(q);
        int p = inst.operation(opid[static_cast<size_t>(q)]).process_time(m);
        mach[d] = -1;
        start[d] = -1;
        done[static_cast<size_t>(j)]--;
        ready[static_cast<size_t>(j)] = prev_ready;
        msofar = prev_ms;
        int comp = s + p - 1;
        te -= static_cast<CentiKwh>(p) * inst.machine(m).power_cw;
        size_t mi = 0;
        while (em[static_cast<size_t>(q)][mi] != m) ++mi;
        lanes[static_cast<size_t>(lane_of[static_cast<size_t>(q)][mi])].clear_range(s, comp);
        auto& cnt = mcount[static_cast<size_t>(m)];
        for (int h = s; h <= comp; ++h)
            if (--cnt[static_cast<size_t>(h)] == 0) munion[static_cast<size_t>(m)]--;
    }

    void dfs(int d) {
        if (stop || over_limit()) return;
        int D = n_active * K;
        if (d == D) {
            offer_leaf();
            return;
        }
        int j = d / K;
        int q = d % K;
        int floor0 = std::max(ready[static_cast<size_t>(j)], 1);
        if (j > 0) {
            size_t dprev = static_cast<size_t>(j - 1) * static_cast<size_t>(K) + static_cast<size_t>(q);
            if (cfg.fifo) {
                int pm = inst.operation(opid[static_cast<size_t>(q)]).process_time(mach[dprev]);
                floor0 = std::max(floor0, start[dprev] + pm);
            } else if (sym_floor) {
                floor0 = std::max(floor0, start[dprev]);
            }
        }
        for (size_t mi = 0; mi < em[static_cast<size_t>(q)].size(); ++mi) {
            int m = em[static_cast<size_t>(q)][mi];
            int p = ep[static_cast<size_t>(q)][mi];
            int f = floor0;
            if (dyn) f = std::max(f, 1 + inst.machine(m).startup_h);
            int smax = std::min(window, grid_end + 1 - p);
            HourSet& lane = lanes[static_cast<size_t>(lane_of[static_cast<size_t>(q)][mi])];
            for (int s = f; s <= smax; ++s) {
                // this job's own chain can only finish later as s grows
                if (s + p - 1 + tail[static_cast<size_t>(q) + 1] > window + 1) break;
                if (!lane.free_range(s, s + p - 1)) continue;
                int prev_ready = ready[static_cast<size_t>(j)];
                int prev_ms = msofar;
                place(j, q, m, s);
                ++nodes;
                bool cut = false;
                if (lb_makespan() > window + 1) cut = true;
                if (!cut && cfg.energy_cap && lb_energy_min() > *cfg.energy_cap) cut = true;
                if (!cut && has_inc && obj.kind != ObjectiveKind::FirstFeasible &&
                    lb_score() >= inc_score)
                    cut = true;
                if (!cut) dfs(d + 1);
                unplace(j, q, m, s, prev_ready, prev_ms);
                if (stop || limit_hit) return;
                // for makespan-bearing objectives, once this start alone already
                // matches the incumbent, later starts cannot improve on it
                if (has_inc &&
                    (obj.kind == ObjectiveKind::MinMakespan ||
                     (obj.kind == ObjectiveKind::WeightedSum && obj.alpha.num > 0))) {
                    std::int64_t floor_score =
                        obj.kind == ObjectiveKind::MinMakespan
                            ? std::max<std::int64_t>(msofar, s + p - 1 + tail[static_cast<size_t>(q) + 1])
                            : obj.alpha.num *
                                      std::max<std::int64_t>(msofar,
                                                             s + p - 1 + tail[static_cast<size_t>(q) + 1]) *
                                      100 +
                                  (obj.alpha.den - obj.alpha.num) * lb_energy_min();
                    if (floor_score >= inc_score) break;
                }
            }
        }
    }
};

Rat score_to_rat(const Objective& obj, std::int64_t score) {
    switch (obj.kind) {
        case ObjectiveKind::MinMakespan: return Rat::of(score);
        case ObjectiveKind::MinEnergy: return Rat::of(score, 100);
        case ObjectiveKind::MaxEnergy: return Rat::of(-score, 100);
        case ObjectiveKind::WeightedSum: return Rat::of(score, obj.alpha.den * 100);
        default: return Rat::of(score);
    }
}

std::vector<GreedyFlavor> seed_order(const Objective& obj) {
    switch (obj.kind) {
        case ObjectiveKind::MinEnergy:
            return {GreedyFlavor::Cheapest, GreedyFlavor::EarliestFree, GreedyFlavor::Priciest};
        case ObjectiveKind::MaxEnergy:
            return {GreedyFlavor::Priciest, GreedyFlavor::EarliestFree, GreedyFlavor::Cheapest};
        default:
            return {GreedyFlavor::EarliestFree, GreedyFlavor::Cheapest, GreedyFlavor::Priciest};
    }
}

// packs utilisation energy up to the cap: per operation take the priciest
// machine that still leaves the cheapest completion of everything else
// inside the budget; returns a schedule whose energy is as close to the
// cap as the per-op price lattice allows
std::optional<ScheduleSolution> greedy_pack_energy(const Instance& inst, const ModelConfig& config,
                                                   int active_jobs, CentiKwh cap) {
    ModelConfig cfg = config.normalized();
    int K = static_cast<int>(inst.routing.size());
    int window = inst.horizon;
    if (cfg.makespan_cap) window = std::min(window, *cfg.makespan_cap);
    bool dyn = cfg.dynamic_switching;
    bool strict = cfg.capacity_mode == CapacityMode::StrictMachine;

    // cheapest energy for the routing suffix starting at position q
    std::vector<CentiKwh> cheap_tail(static_cast<size_t>(K) + 1, 0);
    for (int q = K - 1; q >= 0; --q) {
        const auto& def = inst.operation(inst.routing[static_cast<size_t>(q)]);
        CentiKwh emin = 0;
        bool first = true;
        for (const auto& [m, p] : def.eligible) {
            CentiKwh e = static_cast<CentiKwh>(p) * inst.machine(m).power_cw;
            if (first || e < emin) emin = e;
            first = false;
        }
        cheap_tail[static_cast<size_t>(q)] = cheap_tail[static_cast<size_t>(q) + 1] + emin;
    }

    std::vector<HourSet> lanes;
    std::map<std::pair<int, int>, int> lane_id; // (pos or -1, machine)
    auto lane_for = [&](int q, int m) -> HourSet& {
        auto key = std::make_pair(strict ? -1 : q, m);
        auto it = lane_id.find(key);
        if (it == lane_id.end()) {
            it = lane_id.emplace(key, static_cast<int>(lanes.size())).first;
            lanes.emplace_back();
            lanes.back().init(window + 1);
        }
        return lanes[static_cast<size_t>(it->second)];
    };

    ScheduleSolution out;
    CentiKwh committed = 0;
    std::vector<int> prev_start(static_cast<size_t>(K), 0), prev_p(static_cast<size_t>(K), 0);
    for (int j = 0; j < active_jobs; ++j) {
        out.active_jobs.push_back(j);
        int ready = 1;
        for (int q = 0; q < K; ++q) {
            int op = inst.routing[static_cast<size_t>(q)];
            const auto& def = inst.operation(op);
            // budget that must stay free for every op after this one
            CentiKwh rest = cheap_tail[static_cast<size_t>(q) + 1] +
                            static_cast<CentiKwh>(active_jobs - 1 - j) * cheap_tail[0];
            std::vector<std::pair<long long, int>> order; // priciest first
            for (const auto& [m, p] : def.eligible)
                order.push_back({-static_cast<long long>(p) * inst.machine(m).power_cw, m});
            std::sort(order.begin(), order.end());
            int best_m = -1, best_s = 0;
            for (auto [key, m] : order) {
                int p = def.process_time(m);
                CentiKwh e = static_cast<CentiKwh>(p) * inst.machine(m).power_cw;
                if (committed + e + rest > cap) continue;
                int f = ready;
                if (j > 0) {
                    if (cfg.fifo)
                        f = std::max(f, prev_start[static_cast<size_t>(q)] + prev_p[static_cast<size_t>(q)]);
                    else
                        f = std::max(f, prev_start[static_cast<size_t>(q)]);
                }
                if (dyn) f = std::max(f, 1 + inst.machine(m).startup_h);
                int smax = std::min(window, window + 2 - p);
                HourSet& lane = lane_for(q, m);
                int s = f;
                while (s <= smax && !lane.free_range(s, s + p - 1)) ++s;
                if (s > smax) continue;
                best_m = m;
                best_s = s;
                break;
            }
            if (best_m < 0) return std::nullopt;
            int p = def.process_time(best_m);
            committed += static_cast<CentiKwh>(p) * inst.machine(best_m).power_cw;
            lane_for(q, best_m).set_range(best_s, best_s + p - 1);
            out.assignments.push_back({j, op, best_m, best_s});
            ready = best_s + p;
            prev_start[static_cast<size_t>(q)] = best_s;
            prev_p[static_cast<size_t>(q)] = p;
        }
    }
    return out;
}

struct FixedOutcome {
    bool feasible = false;
    bool exhausted = false; // search space fully explored
    Search* search = nullptr;
};

// one fixed-active-set solve; search object owns the incumbent
void run_fixed(Search& S, const Limits& limits, std::int64_t nodes_before,
               std::optional<Clock::time_point> deadline) {
    bool budget_gone = false;
    if (limits.node_budget) {
        std::int64_t remaining = limits.node_budget - nodes_before;
        if (remaining <= 0)
            budget_gone = true;
        else
            S.node_budget = remaining;
    }
    if (deadline) {
        S.has_deadline = true;
        S.deadline = *deadline;
    }

    // greedy incumbents; infeasible or cap-breaking seeds are dropped
    auto offer_seed = [&](const ScheduleSolution& sol) {
        CentiKwh ute = utilisation_energy_total(S.inst, sol);
        if (S.cfg.energy_cap && ute > *S.cfg.energy_cap) return;
        int ms = makespan(S.inst, sol);
        CentiKwh energy = ute;
        std::vector<MachineTimeline> tl;
        if (S.dyn) {
            tl = best_timelines(S.inst, sol);
            CentiKwh on = 0;
            for (const auto& t : tl)
                on += static_cast<CentiKwh>(t.total_on_h()) * S.inst.machine(t.machine).power_cw;
            if (S.obj.kind == ObjectiveKind::MinEnergy) energy = on;
            std::int64_t sc = S.score_of(ms, energy);
            if (!S.has_inc || sc < S.inc_score) {
                S.has_inc = true;
                S.inc_score = sc;
                S.inc_sol = sol;
                S.inc_tl = std::move(tl);
                S.inc_energy = on;
                S.inc_ms = ms;
            }
        } else {
            std::int64_t sc = S.score_of(ms, energy);
            if (!S.has_inc || sc < S.inc_score) {
                S.has_inc = true;
                S.inc_score = sc;
                S.inc_sol = sol;
                S.inc_energy = ute;
                S.inc_ms = ms;
            }
        }
    };
    for (GreedyFlavor fl : seed_order(S.obj)) {
        auto sol = greedy_upper_bound(S.inst, S.cfg, fl, S.n_active);
        if (!sol) continue;
        offer_seed(*sol);
        if (S.obj.kind == ObjectiveKind::FirstFeasible && S.has_inc) return;
    }
    // an energy ceiling pairs with a cap-filling pack, so grids of caps
    // close at the root instead of enumerating start permutations
    if (S.obj.kind == ObjectiveKind::MaxEnergy && S.cfg.energy_cap) {
        auto sol = greedy_pack_energy(S.inst, S.cfg, S.n_active, *S.cfg.energy_cap);
        if (sol) offer_seed(*sol);
    }

    std::int64_t root = S.lb_score();
    if (S.has_inc && S.obj.kind != ObjectiveKind::FirstFeasible && S.inc_score <= root)
        return; // seed already meets the bound
    if (S.lb_makespan() > S.window + 1) return; // cannot fit at all
    if (S.cfg.energy_cap && S.lb_energy_min() > *S.cfg.energy_cap) return;
    if (budget_gone) {
        S.limit_hit = true;
        return;
    }
    S.dfs(0);
}

SolveResult assemble(Search& S, std::int64_t root_score, double wall) {
    SolveResult r;
    r.nodes_explored = S.nodes;
    r.wall_time_s = wall;
    bool ff = S.obj.kind == ObjectiveKind::FirstFeasible;
    if (S.has_inc) {
        if (S.limit_hit && !ff) {
            r.status = SolveStatus::FeasibleBound;
            r.note = S.node_budget && S.nodes >= S.node_budget ? "node budget reached"
                                                               : "time limit reached";
            r.dual_bound = score_to_rat(S.obj, root_score);
        } else {
            r.status = SolveStatus::Optimal;
            r.note = S.inc_score <= root_score ? "closed at the root bound" : "search exhausted";
            r.dual_bound = ff ? Rat::of(1) : score_to_rat(S.obj, S.inc_score);
        }
        r.objective_value = ff ? Rat::of(1) : score_to_rat(S.obj, S.inc_score);
        r.solution = S.inc_sol;
        r.timelines = S.inc_tl;
        r.witness_energy = S.inc_energy;
        r.witness_makespan = S.inc_ms;
    } else if (S.limit_hit) {
        r.status = SolveStatus::HorizonExhausted;
        r.note = "limit reached before any feasible schedule";
        r.dual_bound = ff ? Rat::of(1) : score_to_rat(S.obj, root_score);
    } else {
        r.status = SolveStatus::Infeasible;
        r.note = "search space exhausted without a feasible schedule";
        r.dual_bound = ff ? Rat::of(0) : score_to_rat(S.obj, root_score);
    }
    return r;
}

std::optional<Clock::time_point> deadline_from(const Limits& limits, Clock::time_point t0) {
    if (limits.time_limit_s <= 0) return std::nullopt;
    return t0 + std::chrono::duration_cast<Clock::duration>(
                    std::chrono::duration<double>(limits.time_limit_s));
}

SolveResult solve_fixed(const Instance& inst, const ModelConfig& cfg, const Objective& obj,
                        int n_active, const Limits& limits) {
    auto t0 = Clock::now();
    Search S(inst, cfg, obj, n_active);
    std::int64_t root = S.lb_score();
    run_fixed(S, limits, 0, deadline_from(limits, t0));
    double wall = std::chrono::duration<double>(Clock::now() - t0).count();
    return assemble(S, root, wall);
}

SolveResult solve_max_throughput(const Instance& inst, const ModelConfig& cfg,
                                 const Limits& limits) {
    auto t0 = Clock::now();
    auto deadline = deadline_from(limits, t0);
    Objective ff = Objective::first_feasible();

    // wafer count pinned in the config: report whether exactly that count fits
    if (cfg.fixed_throughput) {
        int n = *cfg.fixed_throughput;
        if (n == 0) {
            SolveResult r;
            r.status = SolveStatus::Optimal;
            r.solution = ScheduleSolution{};
            r.objective_value = Rat::of(0);
            r.dual_bound = Rat::of(0);
            r.note = "empty schedule";
            return r;
        }
        ModelConfig c = cfg;
        Search S(inst, c, ff, n);
        std::int64_t nodes = 0;
        if (S.lb_makespan() > S.window + 1) {
            SolveResult r;
            r.status = SolveStatus::Infeasible;
            r.dual_bound = Rat::of(0);
            r.note = "load bound " + std::to_string(S.lb_makespan()) + " exceeds hour " +
                     std::to_string(S.window + 1);
            return r;
        }
        run_fixed(S, limits, 0, deadline);
        nodes = S.nodes;
        SolveResult r = assemble(S, 0, std::chrono::duration<double>(Clock::now() - t0).count());
        r.nodes_explored = nodes;
        if (r.status == SolveStatus::Optimal) {
            r.objective_value = Rat::of(n);
            r.dual_bound = Rat::of(n);
        } else if (r.status == SolveStatus::HorizonExhausted) {
            r.dual_bound = Rat::of(n);
        }
        return r;
    }

    std::int64_t nodes_total = 0;
    int upper_uncertified = -1; // highest n that a limit stopped us from refuting
    bool limit_hit = false;
    for (int n = inst.num_jobs; n >= 1; --n) {
        ModelConfig c = cfg;
        c.fixed_throughput = n;
        Search S(inst, c, ff, n);
        if (S.lb_makespan() > S.window + 1) continue; // certified unachievable
        if (c.energy_cap && S.lb_energy_min() > *c.energy_cap) continue;
        run_fixed(S, limits, nodes_total, deadline);
        nodes_total += S.nodes;
        if (S.has_inc) {
            SolveResult r;
            r.nodes_explored = nodes_total;
            r.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
            r.solution = S.inc_sol;
            r.timelines = S.inc_tl;
            r.witness_energy = S.inc_energy;
            r.witness_makespan = S.inc_ms;
            r.objective_value = Rat::of(n);
            if (upper_uncertified > n) {
                r.status = SolveStatus::FeasibleBound;
                r.dual_bound = Rat::of(upper_uncertified);
                r.note = "limits left throughput " + std::to_string(upper_uncertified) +
                         " unrefuted";
            } else {
                r.status = SolveStatus::Optimal;
                r.dual_bound = Rat::of(n);
                r.note = "every higher throughput certified infeasible";
            }
            return r;
        }
        if (S.limit_hit) {
            limit_hit = true;
            if (upper_uncertified < n) upper_uncertified = n;
        }
    }

    // zero jobs is always feasible
    SolveResult r;
    r.nodes_explored = nodes_total;
    r.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
    r.solution = ScheduleSolution{};
    r.objective_value = Rat::of(0);
    r.witness_makespan = 0;
    r.witness_energy = 0;
    if (limit_hit) {
        r.status = SolveStatus::FeasibleBound;
        r.dual_bound = Rat::of(upper_uncertified);
        r.note = "limits left throughput " + std::to_string(upper_uncertified) + " unrefuted";
    } else {
        r.status = SolveStatus::Optimal;
        r.dual_bound = Rat::of(0);
        r.note = "no positive throughput fits the window";
    }
    return r;
}

void check_config(const Instance& inst, const ModelConfig& cfg, const Objective& obj) {
    if (cfg.makespan_cap && *cfg.makespan_cap < 1)
        throw std::invalid_argument("makespan cap must be at least 1");
    if (cfg.energy_cap && *cfg.energy_cap < 0)
        throw std::invalid_argument("energy cap must be non-negative");
    if (cfg.fixed_throughput && (*cfg.fixed_throughput < 0 || *cfg.fixed_throughput > inst.num_jobs))
        throw std::invalid_argument("fixed throughput must lie in 0..num_jobs");
    if (obj.kind == ObjectiveKind::WeightedSum) {
        if (obj.alpha.num < 0 || obj.alpha.num > obj.alpha.den)
            throw std::invalid_argument("alpha must lie in [0, 1]");
        if (obj.alpha.den > 1000000000)
            throw std::invalid_argument("alpha precision finer than 1e-9 is not supported");
    }
}

} // namespace

std::string Objective::name() const {
    switch (kind) {
        case ObjectiveKind::MinMakespan: return "makespan";
        case ObjectiveKind::MinEnergy: return "energy";
        case ObjectiveKind::MaxEnergy: return "max-energy";
        case ObjectiveKind::MaxThroughput: return "throughput";
        case ObjectiveKind::WeightedSum: return "weighted:" + alpha.str();
        case ObjectiveKind::FirstFeasible: return "first-feasible";
    }
    return "unknown";
}

std::string solve_status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::FeasibleBound: return "feasible_bound";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::HorizonExhausted: return "horizon_exhausted";
    }
    return "unknown";
}

SolveResult solve(const Instance& inst, const ModelConfig& config, const Objective& objective,
                  const Limits& limits) {
    check_config(inst, config, objective);
    auto report = validate_instance(inst);
    if (!report.ok()) {
        SolveResult r;
        r.status = SolveStatus::Infeasible;
        r.note = "instance invalid: " + report.summary();
        return r;
    }
    ModelConfig cfg = config.normalized();
    if (objective.kind == ObjectiveKind::MaxThroughput)
        return solve_max_throughput(inst, cfg, limits);
    int n = cfg.fixed_throughput ? *cfg.fixed_throughput : inst.num_jobs;
    if (n == 0) {
        SolveResult r;
        r.status = SolveStatus::Optimal;
        r.solution = ScheduleSolution{};
        r.objective_value = Rat::of(objective.kind == ObjectiveKind::FirstFeasible ? 1 : 0);
        r.dual_bound = r.objective_value;
        r.note = "no active jobs";
        return r;
    }
    return solve_fixed(inst, cfg, objective, n, limits);
}

Rat lower_bound(const Instance& inst, const ModelConfig& config, const Objective& objective,
                const std::vector<Assignment>& partial) {
    ModelConfig cfg = config.normalized();
    if (objective.kind == ObjectiveKind::MaxThroughput) {
        for (int n = inst.num_jobs; n >= 1; --n) {
            Search S(inst, cfg, objective, n);
            if (S.lb_makespan() <= S.window + 1) return Rat::of(n);
        }
        return Rat::of(0);
    }
    int n = cfg.fixed_throughput ? *cfg.fixed_throughput : inst.num_jobs;
    Search S(inst, cfg, objective, n);
    S.load(partial);
    if (objective.kind == ObjectiveKind::FirstFeasible)
        return Rat::of(S.lb_makespan() <= S.window + 1 ? 1 : 0);
    return score_to_rat(objective, S.lb_score());
}

std::optional<ScheduleSolution> greedy_upper_bound(const Instance& inst,
                                                   const ModelConfig& config,
                                                   GreedyFlavor flavor,
                                                   int active_jobs) {
    ModelConfig cfg = config.normalized();
    int K = static_cast<int>(inst.routing.size());
    int window = inst.horizon;
    if (cfg.makespan_cap) window = std::min(window, *cfg.makespan_cap);
    bool dyn = cfg.dynamic_switching;
    bool strict = cfg.capacity_mode == CapacityMode::StrictMachine;

    std::vector<HourSet> lanes;
    std::map<std::pair<int, int>, int> lane_id; // (pos or -1, machine)
    auto lane_for = [&](int q, int m) -> HourSet& {
        auto key = std::make_pair(strict ? -1 : q, m);
        auto it = lane_id.find(key);
        if (it == lane_id.end()) {
            it = lane_id.emplace(key, static_cast<int>(lanes.size())).first;
            lanes.emplace_back();
            lanes.back().init(window + 1);
        }
        return lanes[static_cast<size_t>(it->second)];
    };

    ScheduleSolution out;
    std::vector<int> prev_start(static_cast<size_t>(K), 0), prev_p(static_cast<size_t>(K), 0);
    for (int j = 0; j < active_jobs; ++j) {
        out.active_jobs.push_back(j);
        int ready = 1;
        for (int q = 0; q < K; ++q) {
            int op = inst.routing[static_cast<size_t>(q)];
            const auto& def = inst.operation(op);
            // candidate machines in the flavor's order
            std::vector<std::pair<long long, int>> order;
            for (const auto& [m, p] : def.eligible) {
                long long key = 0;
                long long ew = static_cast<long long>(p) * inst.machine(m).power_cw;
                if (flavor == GreedyFlavor::Cheapest) key = ew;
                if (flavor == GreedyFlavor::Priciest) key = -ew;
                order.push_back({key, m});
            }
            std::sort(order.begin(), order.end());
            int best_m = -1, best_s = 0;
            for (auto [key, m] : order) {
                int p = def.process_time(m);
                int f = ready;
                if (j > 0) {
                    if (cfg.fifo)
                        f = std::max(f, prev_start[static_cast<size_t>(q)] + prev_p[static_cast<size_t>(q)]);
                    else
                        f = std::max(f, prev_start[static_cast<size_t>(q)]);
                }
                if (dyn) f = std::max(f, 1 + inst.machine(m).startup_h);
                int smax = std::min(window, window + 2 - p);
                HourSet& lane = lane_for(q, m);
                int s = f;
                while (s <= smax && !lane.free_range(s, s + p - 1)) ++s;
                if (s > smax) continue;
                if (best_m < 0 || (flavor == GreedyFlavor::EarliestFree && s < best_s)) {
                    best_m = m;
                    best_s = s;
                }
                if (flavor != GreedyFlavor::EarliestFree) break; // fixed-machine policies
            }
            if (best_m < 0) return std::nullopt;
            int p = def.process_time(best_m);
            lane_for(q, best_m).set_range(best_s, best_s + p - 1);
            out.assignments.push_back({j, op, best_m, best_s});
            ready = best_s + p;
            prev_start[static_cast<size_t>(q)] = best_s;
            prev_p[static_cast<size_t>(q)] = p;
        }
    }
    return out;
}

SolveResult brute_force_solve(const Instance& inst, const ModelConfig& config,
                              const Objective& objective) {
    if (inst.num_jobs > 3 || inst.horizon > 14)
        throw std::invalid_argument("brute force accepts at most 3 jobs and horizon 14");
    check_config(inst, config, objective);
    auto report = validate_instance(inst);
    if (!report.ok()) {
        SolveResult r;
        r.status = SolveStatus::Infeasible;
        r.note = "instance invalid: " + report.summary();
        return r;
    }
    ModelConfig cfg = config.normalized();
    auto t0 = Clock::now();

    struct Best {
        bool found = false;
        std::int64_t score = kInfScore;
        ScheduleSolution sol;
        std::vector<MachineTimeline> tl;
        CentiKwh energy = 0;
        int ms = 0;
    } best;
    std::int64_t nodes = 0;
    // feasibility-style objectives can stop at the first full schedule
    bool stop_at_first = objective.kind == ObjectiveKind::MaxThroughput ||
                         objective.kind == ObjectiveKind::FirstFeasible;

    // enumerate every (machine, start) pick for a fixed ordered active set
    auto enumerate_set = [&](const std::vector<int>& active, auto&& leaf) {
        int K = static_cast<int>(inst.routing.size());
        int n = static_cast<int>(active.size());
        ModelConfig sub = cfg;
        sub.fixed_throughput = n;
        // reuse the search scaffolding for lanes/floors, but walk every start
        Search S(inst, sub, Objective::first_feasible(), n);
        S.sym_floor = cfg.symmetry_breaking; // no implicit pruning in the oracle
        auto rec = [&](auto&& self, int d) -> void {
            if (stop_at_first && best.found) return;
            if (d == n * K) {
                leaf(S, active);
                return;
            }
            int j = d / K, q = d % K;
            int floor0 = std::max(S.ready[static_cast<size_t>(j)], 1);
            if (j > 0) {
                size_t dprev = static_cast<size_t>(j - 1) * static_cast<size_t>(K) + static_cast<size_t>(q);
                if (cfg.fifo) {
                    int pm = inst.operation(S.opid[static_cast<size_t>(q)]).process_time(S.mach[dprev]);
                    floor0 = std::max(floor0, S.start[dprev] + pm);
                } else if (cfg.symmetry_breaking) {
                    floor0 = std::max(floor0, S.start[dprev]);
                }
            }
            for (size_t mi = 0; mi < S.em[static_cast<size_t>(q)].size(); ++mi) {
                int m = S.em[static_cast<size_t>(q)][mi];
                int p = S.ep[static_cast<size_t>(q)][mi];
                int f = floor0;
                if (S.dyn) f = std::max(f, 1 + inst.machine(m).startup_h);
                int smax = std::min(S.window, S.grid_end + 1 - p);
                HourSet& lane = S.lanes[static_cast<size_t>(S.lane_of[static_cast<size_t>(q)][mi])];
                for (int s = f; s <= smax; ++s) {
                    if (s + p - 1 + S.tail[static_cast<size_t>(q) + 1] > S.window + 1) break;
                    if (!lane.free_range(s, s + p - 1)) continue;
                    if (++nodes > 200000000)
                        throw std::runtime_error("brute force enumeration blew up");
                    int prev_ready = S.ready[static_cast<size_t>(j)];
                    int prev_ms = S.msofar;
                    S.place(j, q, m, s);
                    if (!cfg.energy_cap || S.lb_energy_min() <= *cfg.energy_cap) self(self, d + 1);
                    S.unplace(j, q, m, s, prev_ready, prev_ms);
                }
            }
        };
        rec(rec, 0);
    };

    auto offer = [&](Search& S, const std::vector<int>& active) {
        std::vector<MachineTimeline> tl;
        CentiKwh on = 0;
        if (cfg.dynamic_switching) {
            tl = S.leaf_timelines();
            for (const auto& t : tl)
                on += static_cast<CentiKwh>(t.total_on_h()) * inst.machine(t.machine).power_cw;
        }
        std::int64_t sc = 0;
        switch (objective.kind) {
            case ObjectiveKind::MinMakespan: sc = S.msofar; break;
            case ObjectiveKind::MinEnergy: sc = cfg.dynamic_switching ? on : S.te; break;
            case ObjectiveKind::MaxEnergy: sc = -S.te; break;
            case ObjectiveKind::WeightedSum:
                sc = objective.alpha.num * static_cast<std::int64_t>(S.msofar) * 100 +
                     (objective.alpha.den - objective.alpha.num) * S.te;
                break;
            default: sc = 0; break;
        }
        if (!best.found || sc < best.score) {
            ScheduleSolution sol;
            sol.active_jobs = active;
            int K = static_cast<int>(inst.routing.size());
            for (int jj = 0; jj < static_cast<int>(active.size()); ++jj)
                for (int q = 0; q < K; ++q) {
                    size_t d = static_cast<size_t>(jj) * static_cast<size_t>(K) + static_cast<size_t>(q);
                    sol.assignments.push_back({active[static_cast<size_t>(jj)],
                                               S.opid[static_cast<size_t>(q)], S.mach[d],
                                               S.start[d]});
                }
            best.found = true;
            best.score = sc;
            best.sol = std::move(sol);
            best.tl = std::move(tl);
            best.energy = cfg.dynamic_switching ? on : S.te;
            best.ms = S.msofar;
        }
    };

    auto subsets_of_size = [&](int n) {
        std::vector<std::vector<int>> out;
        for (int mask = 0; mask < (1 << inst.num_jobs); ++mask) {
            std::vector<int> set;
            for (int j = 0; j < inst.num_jobs; ++j)
                if (mask & (1 << j)) set.push_back(j);
            if (static_cast<int>(set.size()) == n) out.push_back(set);
        }
        return out;
    };

    SolveResult r;
    if (objective.kind == ObjectiveKind::MaxThroughput) {
        int hi = cfg.fixed_throughput ? *cfg.fixed_throughput : inst.num_jobs;
        int lo = cfg.fixed_throughput ? *cfg.fixed_throughput : 0;
        for (int n = hi; n >= lo; --n) {
            if (n == 0) {
                r.status = SolveStatus::Optimal;
                r.solution = ScheduleSolution{};
                r.objective_value = Rat::of(0);
                r.dual_bound = Rat::of(0);
                r.nodes_explored = nodes;
                return r;
            }
            for (const auto& set : subsets_of_size(n)) {
                best = Best{};
                enumerate_set(set, offer);
                if (best.found) {
                    r.status = SolveStatus::Optimal;
                    r.solution = best.sol;
                    r.timelines = best.tl;
                    r.objective_value = Rat::of(n);
                    r.dual_bound = Rat::of(n);
                    r.witness_energy = best.energy;
                    r.witness_makespan = best.ms;
                    r.nodes_explored = nodes;
                    return r;
                }
            }
        }
        r.status = SolveStatus::Infeasible;
        r.nodes_explored = nodes;
        r.note = "exhaustive enumeration found no feasible schedule";
        return r;
    }

    int n = cfg.fixed_throughput ? *cfg.fixed_throughput : inst.num_jobs;
    best = Best{};
    for (const auto& set : subsets_of_size(n)) enumerate_set(set, offer);
    r.nodes_explored = nodes;
    r.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!best.found) {
        r.status = SolveStatus::Infeasible;
        r.note = "exhaustive enumeration found no feasible schedule";
        return r;
    }
    r.status = SolveStatus::Optimal;
    r.solution = best.sol;
    r.timelines = best.tl;
    r.objective_value = objective.kind == ObjectiveKind::FirstFeasible
                            ? Rat::of(1)
                            : score_to_rat(objective, best.score);
    r.dual_bound = r.objective_value;
    r.witness_energy = best.energy;
    r.witness_makespan = best.ms;
    return r;
}

CentiKwh utilisation_energy_total(const Instance& inst, const ScheduleSolution& sol) {
    CentiKwh total = 0;
    for (const auto& a : sol.assignments)
        total += static_cast<CentiKwh>(inst.operation(a.op).process_time(a.machine)) *
                 inst.machine(a.machine).power_cw;
    return total;
}

std::vector<MachineTimeline> best_timelines(const Instance& inst, const ScheduleSolution& sol,
                                            bool all_on_at_start) {
    std::vector<MachineTimeline> out;
    for (const auto& md : inst.machines) {
        auto blocks = machine_busy_blocks(inst, sol, md.id);
        if (blocks.empty() && all_on_at_start) {
            MachineTimeline t;
            t.machine = md.id;
            t.runs.push_back({1, std::max(1, std::min(md.min_on_h, inst.horizon))});
            out.push_back(std::move(t));
            continue;
        }
        out.push_back(optimize_timeline(blocks, md.id, md.startup_h, md.min_on_h, inst.horizon));
    }
    return out;
}

CentiKwh timeline_energy_total(const Instance& inst, const std::vector<MachineTimeline>& tls) {
    CentiKwh total = 0;
    for (const auto& t : tls)
        total += static_cast<CentiKwh>(t.total_on_h()) * inst.machine(t.machine).power_cw;
    return total;
}

std::string solve_result_to_json(const SolveResult& r, bool include_wall_time) {
    nlohmann::ordered_json j;
    j["status"] = solve_status_name(r.status);
    j["objective"] = r.objective_value.str();
    j["bound"] = r.dual_bound.str();
    j["nodes"] = r.nodes_explored;
    if (include_wall_time) j["wall_time_s"] = r.wall_time_s;
    j["note"] = r.note;
    j["witness_makespan"] = r.witness_makespan;
    j["witness_energy_kwh"] = kwh_str(r.witness_energy);
    auto arr = nlohmann::ordered_json::array();
    if (r.solution) {
        for (const auto& a : r.solution->assignments) {
            nlohmann::ordered_json e;
            e["job"] = a.job;
            e["op"] = a.op;
            e["machine"] = a.machine;
            e["start"] = a.start;
            arr.push_back(e);
        }
    }
    j["assignments"] = arr;
    auto tls = nlohmann::ordered_json::array();
    for (const auto& t : r.timelines) {
        nlohmann::ordered_json e;
        e["machine"] = t.machine;
        auto runs = nlohmann::ordered_json::array();
        for (const auto& run : t.runs) runs.push_back({run.on, run.off});
        e["runs"] = runs;
        tls.push_back(e);
    }
    j["timelines"] = tls;
    return j.dump(2) + "\n";
}

} // namespace fabsched
