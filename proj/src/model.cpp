#include "fabsched/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace fabsched {

using ordered_json = nlohmann::ordered_json;

int OperationDef::process_time(int machine) const {
    auto it = eligible.find(machine);
    if (it == eligible.end())
        throw std::out_of_range("operation " + name + " cannot run on machine " + std::to_string(machine));
    return it->second;
}

int OperationDef::min_process_time() const {
    int best = INT32_MAX;
    for (const auto& [m, p] : eligible) best = std::min(best, p);
    return best == INT32_MAX ? 0 : best;
}

int Instance::critical_path_h() const {
    int total = 0;
    for (int op : routing) total += operation(op).min_process_time();
    return total;
}

int completion_hour(const Instance& inst, const Assignment& a) {
    return a.start + inst.operation(a.op).process_time(a.machine) - 1;
}

int makespan(const Instance& inst, const ScheduleSolution& sol) {
    int last = 0;
    for (const auto& a : sol.assignments) last = std::max(last, completion_hour(inst, a));
    return last;
}

int MachineTimeline::total_on_h() const {
    int total = 0;
    for (const auto& r : runs) total += r.off - r.on + 1;
    return total;
}

bool MachineTimeline::on_at(int hour) const {
    for (const auto& r : runs)
        if (r.on <= hour && hour <= r.off) return true;
    return false;
}

std::string ValidationReport::summary() const {
    if (ok()) return "ok";
    std::string s;
    for (const auto& issue : issues) {
        if (!s.empty()) s += "; ";
        s += issue.where + ": " + issue.detail;
    }
    return s;
}

ValidationReport validate_instance(const Instance& inst) {
    ValidationReport rep;
    auto flag = [&](const std::string& where, const std::string& what) {
        rep.issues.push_back({where, what});
    };

    std::set<int> machine_ids;
    for (size_t i = 0; i < inst.machines.size(); ++i) {
        const auto& m = inst.machines[i];
        if (m.id != static_cast<int>(i)) flag("machine " + m.name, "id must equal its index");
        if (!machine_ids.insert(m.id).second) flag("machine " + m.name, "duplicate id");
        if (m.power_cw < 0) flag("machine " + m.name, "negative power");
        if (m.startup_h < 0) flag("machine " + m.name, "negative startup time");
        if (m.min_on_h < 0) flag("machine " + m.name, "negative minimum-on time");
    }
    std::set<int> op_ids;
    for (size_t i = 0; i < inst.operations.size(); ++i) {
        const auto& op = inst.operations[i];
        if (op.id != static_cast<int>(i)) flag("operation " + op.name, "id must equal its index");
        if (!op_ids.insert(op.id).second) flag("operation " + op.name, "duplicate id");
        if (op.eligible.empty()) flag("operation " + op.name, "no eligible machine");
        for (const auto& [m, p] : op.eligible) {
            if (!machine_ids.count(m)) flag("operation " + op.name, "eligible machine " + std::to_string(m) + " undefined");
            if (p < 1) flag("operation " + op.name, "process time must be at least one hour");
        }
    }
    if (inst.routing.empty()) flag("routing", "empty");
    std::set<int> routed;
    for (int op : inst.routing) {
        if (!op_ids.count(op)) flag("routing", "references undefined operation " + std::to_string(op));
        else if (!routed.insert(op).second) flag("routing", "operation " + std::to_string(op) + " appears twice");
    }
    if (routed.size() != op_ids.size()) flag("routing", "does not cover every operation");
    if (inst.num_jobs < 1) flag("num_jobs", "must be positive");
    if (inst.horizon < 1) flag("horizon", "must be positive");
    if (rep.ok() && inst.horizon < inst.critical_path_h())
        flag("horizon", "shorter than the single-job critical path (" + std::to_string(inst.critical_path_h()) + " h)");
    return rep;
}

std::pair<std::vector<OperationDef>, std::vector<int>>
expand_stn(const std::vector<Workstation>& stations,
           const std::vector<std::pair<int, int>>& visit_order) {
    size_t expected = 0;
    for (const auto& ws : stations) expected += ws.visit_times.size();
    if (visit_order.size() != expected)
        throw std::invalid_argument("visit order must cover every workstation visit exactly once");

    std::set<std::pair<int, int>> seen;
    std::vector<OperationDef> ops;
    std::vector<int> routing;
    for (const auto& [ws_idx, visit] : visit_order) {
        if (ws_idx < 0 || ws_idx >= static_cast<int>(stations.size()))
            throw std::invalid_argument("visit order references undefined workstation " + std::to_string(ws_idx));
        const auto& ws = stations[static_cast<size_t>(ws_idx)];
        if (visit < 0 || visit >= static_cast<int>(ws.visit_times.size()))
            throw std::invalid_argument("visit order references undefined visit " + std::to_string(visit) +
                                        " of workstation " + ws.name);
        if (!seen.insert({ws_idx, visit}).second)
            throw std::invalid_argument("visit order repeats a workstation visit");
        OperationDef op;
        op.id = static_cast<int>(ops.size());
        op.name = ws.name + std::to_string(visit + 1);
        for (int m : ws.machines) op.eligible[m] = ws.visit_times[static_cast<size_t>(visit)];
        routing.push_back(op.id);
        ops.push_back(std::move(op));
    }
    return {ops, routing};
}

Instance build_minifab(int num_jobs, int horizon) {
    Instance inst;
    inst.machines = {
        {0, "Diffuser1", 1, 1, 6},
        {1, "Diffuser2", 2, 1, 6},
        {2, "Implanter1", 10, 2, 4},
        {3, "Implanter2", 20, 2, 4},
        {4, "Lithographer", 10, 1, 8},
    };
    std::vector<Workstation> stations = {
        {"Diffusion", {0, 1}, {2, 1}},
        {"Implantation", {2, 3}, {1, 1}},
        {"Lithography", {4}, {2, 2}},
    };
    std::vector<std::pair<int, int>> order = {
        {0, 0}, {1, 0}, {2, 0}, {1, 1}, {0, 1}, {2, 1},
    };
    auto [ops, routing] = expand_stn(stations, order);
    inst.operations = std::move(ops);
    inst.routing = std::move(routing);
    inst.num_jobs = num_jobs;
    inst.horizon = horizon;
    return inst;
}

std::string instance_to_json(const Instance& inst) {
    ordered_json j;
    j["machines"] = ordered_json::array();
    for (const auto& m : inst.machines) {
        ordered_json jm;
        jm["id"] = m.id;
        jm["name"] = m.name;
        jm["power_kw"] = m.power_cw / 100.0;
        jm["startup_h"] = m.startup_h;
        jm["min_on_h"] = m.min_on_h;
        j["machines"].push_back(jm);
    }
    j["operations"] = ordered_json::array();
    for (const auto& op : inst.operations) {
        ordered_json jo;
        jo["id"] = op.id;
        jo["name"] = op.name;
        ordered_json elig = ordered_json::object();
        for (const auto& [m, p] : op.eligible) elig[std::to_string(m)] = p;
        jo["eligible"] = elig;
        j["operations"].push_back(jo);
    }
    j["routing"] = inst.routing;
    j["num_jobs"] = inst.num_jobs;
    j["horizon"] = inst.horizon;
    return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    Instance inst;
    for (const auto& jm : j.at("machines")) {
        MachineDef m;
        m.id = jm.at("id").get<int>();
        m.name = jm.at("name").get<std::string>();
        double kw = jm.at("power_kw").get<double>();
        m.power_cw = static_cast<int>(std::llround(kw * 100.0));
        m.startup_h = jm.at("startup_h").get<int>();
        m.min_on_h = jm.at("min_on_h").get<int>();
        inst.machines.push_back(std::move(m));
    }
    for (const auto& jo : j.at("operations")) {
        OperationDef op;
        op.id = jo.at("id").get<int>();
        op.name = jo.at("name").get<std::string>();
        for (const auto& [key, val] : jo.at("eligible").items())
            op.eligible[std::stoi(key)] = val.get<int>();
        inst.operations.push_back(std::move(op));
    }
    inst.routing = j.at("routing").get<std::vector<int>>();
    inst.num_jobs = j.at("num_jobs").get<int>();
    inst.horizon = j.at("horizon").get<int>();
    return inst;
}

std::string instance_hash(const Instance& inst) {
    std::string canon = instance_to_json(inst);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace fabsched
