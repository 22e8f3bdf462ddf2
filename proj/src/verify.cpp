#include "fabsched/verify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fabsched {

std::string violation_kind_name(ViolationKind k) {
    switch (k) {
        case ViolationKind::MalformedIndex: return "malformed_index";
        case ViolationKind::AssignmentOnce: return "assignment_once";
        case ViolationKind::Eligibility: return "eligibility";
        case ViolationKind::HorizonBounds: return "horizon_bounds";
        case ViolationKind::Capacity: return "capacity";
        case ViolationKind::Precedence: return "precedence";
        case ViolationKind::Symmetry: return "symmetry";
        case ViolationKind::Fifo: return "fifo";
        case ViolationKind::StartupExclusion: return "startup_exclusion";
        case ViolationKind::OffWhileBusy: return "off_while_busy";
        case ViolationKind::SwitchAlgebra: return "switch_algebra";
        case ViolationKind::MinOnTime: return "min_on_time";
        case ViolationKind::ThroughputMismatch: return "throughput_mismatch";
        case ViolationKind::EnergyCap: return "energy_cap";
        case ViolationKind::MakespanCap: return "makespan_cap";
    }
    return "unknown";
}

std::string violations_to_json(const std::vector<Violation>& violations) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& v : violations) {
        nlohmann::ordered_json j;
        j["kind"] = violation_kind_name(v.kind);
        j["subjects"] = {v.job, v.op, v.machine, v.hour};
        j["message"] = v.message;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

namespace {

int routing_pos(const Instance& inst, int op) {
    for (size_t i = 0; i < inst.routing.size(); ++i)
        if (inst.routing[i] == op) return static_cast<int>(i);
    return -1;
}

} // namespace

std::vector<Violation> check_solution(const Instance& inst,
                                      const ModelConfig& raw_config,
                                      const ScheduleSolution& sol,
                                      const std::vector<MachineTimeline>& timelines) {
    const ModelConfig config = raw_config.normalized();
    std::vector<Violation> out;
    auto add = [&](ViolationKind kind, int job, int op, int machine, int hour, std::string msg) {
        out.push_back({kind, job, op, machine, hour, std::move(msg)});
    };

    const int window = config.makespan_cap ? std::min(inst.horizon, *config.makespan_cap)
                                           : inst.horizon;

    // --- active set -------------------------------------------------------
    std::set<int> active;
    for (int j : sol.active_jobs) {
        if (j < 0 || j >= inst.num_jobs) {
            add(ViolationKind::MalformedIndex, j, -1, -1, -1, "active job out of range");
            continue;
        }
        if (!active.insert(j).second)
            add(ViolationKind::MalformedIndex, j, -1, -1, -1, "job listed active twice");
    }
    if (config.fixed_throughput) {
        if (static_cast<int>(active.size()) != *config.fixed_throughput)
            add(ViolationKind::ThroughputMismatch, -1, -1, -1, -1,
                std::to_string(active.size()) + " active jobs, " +
                    std::to_string(*config.fixed_throughput) + " required");
    } else if (static_cast<int>(active.size()) != inst.num_jobs) {
        add(ViolationKind::ThroughputMismatch, -1, -1, -1, -1,
            "every job must run when no throughput target is set");
    }

    // --- per-assignment shape checks ---------------------------------------
    std::vector<Assignment> good;
    std::map<std::pair<int, int>, int> seen; // (job, op) -> count
    for (const auto& a : sol.assignments) {
        if (a.job < 0 || a.job >= inst.num_jobs || a.op < 0 ||
            a.op >= static_cast<int>(inst.operations.size()) || routing_pos(inst, a.op) < 0) {
            add(ViolationKind::MalformedIndex, a.job, a.op, a.machine, a.start, "bad job/op index");
            continue;
        }
        if (!active.count(a.job)) {
            add(ViolationKind::AssignmentOnce, a.job, a.op, a.machine, a.start,
                "assignment for a job that is not active");
            continue;
        }
        if (++seen[{a.job, a.op}] > 1) {
            add(ViolationKind::AssignmentOnce, a.job, a.op, a.machine, a.start,
                "operation assigned more than once");
            continue;
        }
        const auto& opdef = inst.operation(a.op);
        if (!opdef.eligible.count(a.machine)) {
            add(ViolationKind::Eligibility, a.job, a.op, a.machine, a.start,
                opdef.name + " not runnable on machine " + std::to_string(a.machine));
            continue;
        }
        int comp = completion_hour(inst, a);
        if (a.start < 1 || a.start > inst.horizon || comp > inst.horizon + 1) {
            add(ViolationKind::HorizonBounds, a.job, a.op, a.machine, a.start,
                "start must lie on 1.." + std::to_string(inst.horizon) +
                    " and completion at most " + std::to_string(inst.horizon + 1));
            continue;
        }
        if (config.makespan_cap && (a.start > window || comp > window + 1)) {
            add(ViolationKind::MakespanCap, a.job, a.op, a.machine, a.start,
                "exceeds makespan cap " + std::to_string(*config.makespan_cap));
            continue;
        }
        good.push_back(a);
    }

    // every active job covers the routing exactly once
    for (int j : active) {
        for (int op : inst.routing) {
            if (!seen.count({j, op}))
                add(ViolationKind::AssignmentOnce, j, op, -1, -1, "operation never assigned");
        }
    }

    std::sort(good.begin(), good.end(), [&](const Assignment& a, const Assignment& b) {
        if (a.job != b.job) return a.job < b.job;
        return routing_pos(inst, a.op) < routing_pos(inst, b.op);
    });

    // --- capacity -----------------------------------------------------------
    // key: channel (op, machine) in task mode, machine alone in strict mode
    std::map<std::pair<int, int>, std::vector<const Assignment*>> lanes;
    for (const auto& a : good) {
        int op_key = config.capacity_mode == CapacityMode::TaskChannel ? a.op : -1;
        lanes[{op_key, a.machine}].push_back(&a);
    }
    for (auto& [key, list] : lanes) {
        std::sort(list.begin(), list.end(), [&](const Assignment* a, const Assignment* b) {
            if (a->start != b->start) return a->start < b->start;
            return a->job < b->job;
        });
        for (size_t i = 1; i < list.size(); ++i) {
            int prev_end = completion_hour(inst, *list[i - 1]);
            if (list[i]->start <= prev_end)
                add(ViolationKind::Capacity, list[i]->job, list[i]->op, list[i]->machine,
                    list[i]->start,
                    "overlaps job " + std::to_string(list[i - 1]->job) + " on the same " +
                        (config.capacity_mode == CapacityMode::TaskChannel ? "channel" : "machine"));
        }
    }

    // --- precedence / symmetry / fifo ---------------------------------------
    std::map<std::pair<int, int>, const Assignment*> by_job_op;
    for (const auto& a : good) by_job_op[{a.job, a.op}] = &a;

    for (int j : active) {
        for (size_t k = 1; k < inst.routing.size(); ++k) {
            auto prev = by_job_op.find({j, inst.routing[k - 1]});
            auto cur = by_job_op.find({j, inst.routing[k]});
            if (prev == by_job_op.end() || cur == by_job_op.end()) continue;
            if (cur->second->start < completion_hour(inst, *prev->second) + 1)
                add(ViolationKind::Precedence, j, inst.routing[k], cur->second->machine,
                    cur->second->start, "starts before the previous visit completed");
        }
    }

    if (config.symmetry_breaking || config.fifo) {
        std::vector<int> act(active.begin(), active.end());
        for (size_t i = 1; i < act.size(); ++i) {
            for (int op : inst.routing) {
                auto prev = by_job_op.find({act[i - 1], op});
                auto cur = by_job_op.find({act[i], op});
                if (prev == by_job_op.end() || cur == by_job_op.end()) continue;
                if (config.fifo) {
                    int prev_p = inst.operation(op).process_time(prev->second->machine);
                    if (cur->second->start < prev->second->start + prev_p)
                        add(ViolationKind::Fifo, act[i], op, cur->second->machine,
                            cur->second->start,
                            "overtakes job " + std::to_string(act[i - 1]) + " at this visit");
                } else if (cur->second->start < prev->second->start) {
                    add(ViolationKind::Symmetry, act[i], op, cur->second->machine,
                        cur->second->start,
                        "starts before job " + std::to_string(act[i - 1]) + " at this visit");
                }
            }
        }
    }

    // --- energy cap ----------------------------------------------------------
    if (config.energy_cap) {
        CentiKwh te = 0;
        for (const auto& a : good)
            te += static_cast<CentiKwh>(inst.operation(a.op).process_time(a.machine)) *
                  inst.machine(a.machine).power_cw;
        if (te > *config.energy_cap)
            add(ViolationKind::EnergyCap, -1, -1, -1, -1,
                "utilisation energy " + kwh_str(te) + " exceeds cap " + kwh_str(*config.energy_cap));
    }

    // --- switching timelines --------------------------------------------------
    if (config.dynamic_switching) {
        const int grid_end = inst.horizon + 1; // completions may land here
        std::vector<const MachineTimeline*> tl(inst.machines.size(), nullptr);
        for (const auto& t : timelines) {
            if (t.machine < 0 || t.machine >= static_cast<int>(inst.machines.size())) {
                add(ViolationKind::MalformedIndex, -1, -1, t.machine, -1, "timeline for unknown machine");
                continue;
            }
            tl[static_cast<size_t>(t.machine)] = &t;
        }
        for (size_t m = 0; m < inst.machines.size(); ++m) {
            const auto& mdef = inst.machines[m];
            const MachineTimeline* t = tl[m];
            bool machine_used = false;
            for (const auto& a : good) machine_used |= a.machine == static_cast<int>(m);
            if (!t) {
                if (machine_used)
                    add(ViolationKind::OffWhileBusy, -1, -1, static_cast<int>(m), -1,
                        "machine runs operations but has no timeline");
                continue;
            }
            int prev_off = -1;
            for (const auto& r : t->runs) {
                if (r.on < 1 || r.off < r.on || r.off > grid_end) {
                    add(ViolationKind::SwitchAlgebra, -1, -1, static_cast<int>(m), r.on,
                        "run outside the 1.." + std::to_string(grid_end) + " grid");
                    continue;
                }
                if (prev_off >= 0 && r.on <= prev_off + 1)
                    add(ViolationKind::SwitchAlgebra, -1, -1, static_cast<int>(m), r.on,
                        "runs must be separated by at least one off hour");
                // a run switched off again inside the horizon must have
                // reached the minimum on time; staying on through the end
                // needs no switch-off event
                if (r.off < inst.horizon && r.off - r.on + 1 < mdef.min_on_h)
                    add(ViolationKind::MinOnTime, -1, -1, static_cast<int>(m), r.on,
                        "run of " + std::to_string(r.off - r.on + 1) + " h shorter than min-on " +
                            std::to_string(mdef.min_on_h) + " h");
                prev_off = r.off;
            }
        }
        for (const auto& a : good) {
            const MachineTimeline* t = tl[static_cast<size_t>(a.machine)];
            if (!t) continue; // missing timeline already reported
            int comp = completion_hour(inst, a);
            const OnRun* cover = nullptr;
            for (const auto& r : t->runs)
                if (r.on <= a.start && a.start <= r.off) { cover = &r; break; }
            bool whole = cover && cover->off >= comp;
            if (!whole) {
                for (int h = a.start; h <= comp; ++h) {
                    if (!t->on_at(h)) {
                        add(ViolationKind::OffWhileBusy, a.job, a.op, a.machine, h,
                            "machine off during an occupied hour");
                        break;
                    }
                }
                if (!cover) continue;
            }
            int st = inst.machine(a.machine).startup_h;
            if (a.start - cover->on < st)
                add(ViolationKind::StartupExclusion, a.job, a.op, a.machine, a.start,
                    "starts " + std::to_string(a.start - cover->on) +
                        " h after switch-on, needs " + std::to_string(st));
        }
    }

    return out;
}

std::vector<ChannelUse> occupancy(const Instance& inst, const ScheduleSolution& sol) {
    std::map<std::pair<int, int>, std::vector<Interval>> grouped;
    for (const auto& a : sol.assignments) {
        if (a.op < 0 || a.op >= static_cast<int>(inst.operations.size())) continue;
        if (!inst.operation(a.op).eligible.count(a.machine)) continue;
        grouped[{routing_pos(inst, a.op), a.machine}].push_back({a.start, completion_hour(inst, a)});
    }
    std::vector<ChannelUse> out;
    for (auto& [key, intervals] : grouped) {
        std::sort(intervals.begin(), intervals.end(),
                  [](const Interval& x, const Interval& y) { return x.first < y.first; });
        out.push_back({inst.routing[static_cast<size_t>(key.first)], key.second, std::move(intervals)});
    }
    return out;
}

std::vector<Interval> machine_busy_blocks(const Instance& inst,
                                          const ScheduleSolution& sol,
                                          int machine) {
    std::vector<Interval> raw;
    for (const auto& a : sol.assignments)
        if (a.machine == machine)
            raw.push_back({a.start, completion_hour(inst, a)});
    std::sort(raw.begin(), raw.end(), [](const Interval& x, const Interval& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.last < y.last;
    });
    std::vector<Interval> merged;
    for (const auto& iv : raw) {
        if (!merged.empty() && iv.first <= merged.back().last + 1)
            merged.back().last = std::max(merged.back().last, iv.last);
        else
            merged.push_back(iv);
    }
    return merged;
}

} // namespace fabsched
