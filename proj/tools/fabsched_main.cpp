// fabsched: exact scheduling runs, trade-off sweeps, dispatch baselines, and
// the stock-figure reproduction table, all against the builtin five-machine
// fab or an instance JSON file.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fabsched/fifo.hpp"
#include "fabsched/model.hpp"
#include "fabsched/num.hpp"
#include "fabsched/pareto.hpp"
#include "fabsched/report.hpp"
#include "fabsched/repro.hpp"
#include "fabsched/solver.hpp"
#include "fabsched/verify.hpp"

namespace fs = std::filesystem;
using namespace fabsched;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.2.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InstanceOpts {
    bool minifab = false;
    std::string path;
    int jobs = -1;    // -1 keeps the builtin or file value
    int horizon = -1;
};

Instance load_instance(const InstanceOpts& o) {
    Instance inst;
    if (!o.path.empty()) {
        std::ifstream f(o.path, std::ios::binary);
        if (!f) throw UsageError("cannot read instance file " + o.path);
        std::stringstream ss;
        ss << f.rdbuf();
        inst = instance_from_json(ss.str());
        if (o.jobs >= 0) inst.num_jobs = o.jobs;
        if (o.horizon >= 0) inst.horizon = o.horizon;
    } else if (o.minifab) {
        inst = build_minifab(o.jobs >= 0 ? o.jobs : 5, o.horizon >= 0 ? o.horizon : 40);
    } else {
        throw UsageError("pick an instance: --minifab or --instance FILE");
    }
    auto rep = validate_instance(inst);
    if (!rep.ok()) throw UsageError("invalid instance: " + rep.summary());
    return inst;
}

CentiKwh parse_kwh(const std::string& text) {
    Rat r = parse_decimal(text);
    std::int64_t scaled = r.num * 100;
    if (scaled % r.den != 0)
        throw UsageError("energy values resolve in 0.01 KWh steps, got " + text);
    return scaled / r.den;
}

Objective parse_objective(const std::string& s) {
    if (s == "makespan") return Objective::min_makespan();
    if (s == "energy") return Objective::min_energy();
    if (s == "max-energy") return Objective::max_energy();
    if (s == "throughput") return Objective::max_throughput();
    if (s == "first-feasible") return Objective::first_feasible();
    if (s.rfind("weighted:", 0) == 0) return Objective::weighted(parse_decimal(s.substr(9)));
    throw UsageError("unknown objective '" + s + "'");
}

std::string fmt(double v, int prec) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(prec) << v;
    return os.str();
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

// every text artifact names the instance it came from; json artifacts carry
// the hash as a field instead
struct ArtifactWriter {
    fs::path dir;
    std::string hash;
    std::vector<std::string> files;

    void write(const std::string& name, const std::string& content, bool hash_comment) {
        fs::create_directories(dir);
        std::ofstream f(dir / name, std::ios::binary);
        if (hash_comment) f << "# instance " << hash << "\n";
        f << content;
        if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
        files.push_back(name);
    }

    void manifest(const std::string& command, const ordered_json& config, double wall_s) {
        ordered_json j;
        j["command"] = command;
        j["tool_version"] = kVersion;
        j["instance_hash"] = hash;
        j["config"] = config;
        j["files"] = files;
        j["wall_time_s"] = wall_s;
        std::ofstream f(dir / "manifest.json", std::ios::binary);
        f << j.dump(2) << "\n";
        if (!f) throw std::runtime_error("cannot write manifest.json");
    }
};

int exit_code_for(SolveStatus st) {
    switch (st) {
        case SolveStatus::Optimal: return 0;
        case SolveStatus::Infeasible: return 3;
        case SolveStatus::FeasibleBound:
        case SolveStatus::HorizonExhausted: return 4;
    }
    return 1;
}

std::string primary_value(const Objective& obj, const SolveResult& r) {
    if (!r.solution) return solve_status_name(r.status);
    switch (obj.kind) {
        case ObjectiveKind::MinMakespan: return std::to_string(r.witness_makespan);
        case ObjectiveKind::MinEnergy:
        case ObjectiveKind::MaxEnergy: return kwh_str(r.witness_energy);
        case ObjectiveKind::MaxThroughput: return r.objective_value.str();
        case ObjectiveKind::WeightedSum: return fmt(r.objective_value.to_double(), 4);
        case ObjectiveKind::FirstFeasible: return "feasible";
    }
    return r.objective_value.str();
}

std::string energy_csv(const Instance& inst, const SolveResult& r, bool dynamic) {
    EnergyReport rep = utilisation_energy(inst, *r.solution);
    std::ostringstream os;
    os << "machine,busy_h,energy_kwh";
    if (dynamic) os << ",on_h,on_time_kwh";
    os << "\n";
    int total_busy = 0, total_on = 0;
    for (const auto& md : inst.machines) {
        auto i = static_cast<size_t>(md.id);
        os << md.name << ',' << rep.busy_h[i] << ',' << kwh_str(rep.energy[i]);
        total_busy += rep.busy_h[i];
        if (dynamic) {
            int on_h = 0;
            for (const auto& tl : r.timelines)
                if (tl.machine == md.id) on_h = tl.total_on_h();
            os << ',' << on_h << ',' << kwh_str(static_cast<CentiKwh>(on_h) * md.power_cw);
            total_on += on_h;
        }
        os << "\n";
    }
    os << "total," << total_busy << ',' << kwh_str(rep.total);
    if (dynamic) os << ',' << total_on << ',' << kwh_str(timeline_energy_total(inst, r.timelines));
    os << "\n";
    return os.str();
}

struct SolveArgs {
    InstanceOpts io;
    std::string objective = "makespan";
    std::string capacity = "task-channel";
    bool dynamic = false;
    bool fifo = false;
    bool all_on_at_start = false;
    bool symmetry = false;
    int throughput = -1;
    std::string energy_cap;
    int makespan_cap = -1;
    double time_limit = 0;
    std::int64_t node_budget = 0;
    std::string out = ".";
};

ModelConfig config_from(const SolveArgs& a) {
    ModelConfig cfg;
    cfg.capacity_mode =
        a.capacity == "strict" ? CapacityMode::StrictMachine : CapacityMode::TaskChannel;
    cfg.dynamic_switching = a.dynamic;
    cfg.fifo = a.fifo;
    cfg.all_on_at_start = a.all_on_at_start;
    cfg.symmetry_breaking = a.symmetry;
    if (a.throughput >= 0) cfg.fixed_throughput = a.throughput;
    if (!a.energy_cap.empty()) cfg.energy_cap = parse_kwh(a.energy_cap);
    if (a.makespan_cap >= 0) cfg.makespan_cap = a.makespan_cap;
    return cfg;
}

ordered_json config_json(const SolveArgs& a, const Instance& inst) {
    ordered_json j;
    j["instance"] = a.io.path.empty() ? "minifab" : a.io.path;
    j["jobs"] = inst.num_jobs;
    j["horizon"] = inst.horizon;
    j["objective"] = a.objective;
    j["capacity"] = a.capacity;
    j["dynamic"] = a.dynamic;
    j["fifo"] = a.fifo;
    j["symmetry_breaking"] = a.symmetry;
    j["all_on_at_start"] = a.all_on_at_start;
    if (a.throughput >= 0) j["throughput"] = a.throughput;
    if (!a.energy_cap.empty()) j["energy_cap_kwh"] = a.energy_cap;
    if (a.makespan_cap >= 0) j["makespan_cap"] = a.makespan_cap;
    j["time_limit_s"] = a.time_limit;
    j["node_budget"] = a.node_budget;
    return j;
}

int cmd_solve(const SolveArgs& a, const std::string& command) {
    Instance inst = load_instance(a.io);
    ModelConfig cfg = config_from(a);
    Objective obj = parse_objective(a.objective);
    SolveResult r = solve(inst, cfg, obj, Limits{a.time_limit, a.node_budget});

    std::cout << primary_value(obj, r) << "\n";
    std::cout << "status " << solve_status_name(r.status)
              << (r.note.empty() ? "" : " (" + r.note + ")") << "\n";
    std::cout << "bound " << r.dual_bound.str() << "\n";
    std::cout << "nodes " << r.nodes_explored << ", wall " << fmt(r.wall_time_s, 3) << " s\n";

    ArtifactWriter w{fs::path(a.out), instance_hash(inst), {}};
    ordered_json result = ordered_json::parse(solve_result_to_json(r));
    result["instance_hash"] = w.hash;
    w.write("result.json", result.dump(2) + "\n", false);
    w.write("instance.json", instance_to_json(inst), false);
    if (r.solution) {
        w.write("gantt.txt", render_gantt(inst, *r.solution, r.timelines), true);
        w.write("energy.csv", energy_csv(inst, r, cfg.dynamic_switching), true);
    }
    w.manifest(command, config_json(a, inst), r.wall_time_s);
    return exit_code_for(r.status);
}

struct ParetoArgs {
    SolveArgs base;
    std::string mode = "fixed-throughput";
    int steps = -1; // -1: 10 scenario caps fixed / every cap in the sweep
    int horizon_max = -1;
    int parallel = 1;
};

int cmd_pareto(const ParetoArgs& p, bool steps_given, const std::string& command) {
    if (steps_given && p.steps <= 0) throw UsageError("--steps must be positive");
    Instance inst = load_instance(p.base.io);
    int tp = p.base.throughput >= 0 ? p.base.throughput : inst.num_jobs;
    if (tp > inst.num_jobs) throw UsageError("--throughput exceeds the wafer count");
    Limits limits{p.base.time_limit, p.base.node_budget};
    auto t0 = std::chrono::steady_clock::now();
    ArtifactWriter w{fs::path(p.base.out), instance_hash(inst), {}};
    ordered_json cj = config_json(p.base, inst);
    cj["mode"] = p.mode;
    cj["steps"] = p.steps;
    cj["parallel"] = p.parallel;

    if (p.mode == "fixed-throughput") {
        int steps = p.steps < 0 ? 10 : p.steps;
        FixedThroughputStudy st = epsilon_sweep_fixed_throughput(inst, tp, steps, limits);
        if (st.front.points.empty()) {
            std::cout << "infeasible: no schedule at throughput " << tp << "\n";
            return 3;
        }
        std::cout << "throughput " << tp << ", makespan optimum " << st.min_makespan_h
                  << " h, energy range [" << kwh_str(st.te_min) << ", " << kwh_str(st.te_max)
                  << "] KWh, " << st.front.points.size() << " front points\n";
        w.write("front.csv", front_to_csv(st.front), true);
        ordered_json sj;
        sj["throughput"] = st.throughput;
        sj["min_makespan_h"] = st.min_makespan_h;
        sj["te_min_kwh"] = kwh_str(st.te_min);
        sj["te_max_kwh"] = kwh_str(st.te_max);
        ordered_json rows = ordered_json::array();
        for (const auto& sc : st.scenarios)
            rows.push_back({{"energy_cap_kwh", kwh_str(sc.cap)},
                            {"energy_kwh", kwh_str(sc.energy)},
                            {"makespan_h", sc.makespan_h},
                            {"busy_h", sc.busy_h}});
        sj["scenarios"] = rows;
        sj["instance_hash"] = w.hash;
        w.write("study.json", sj.dump(2) + "\n", false);
    } else if (p.mode == "throughput-sweep") {
        int horizon_max = p.horizon_max > 0 ? p.horizon_max : inst.horizon;
        int steps = p.steps < 0 ? 0 : p.steps; // 0: every cap 1..horizon_max
        ThroughputSweep sw =
            throughput_energy_sweep(inst, horizon_max, steps, p.base.dynamic, limits, p.parallel);
        std::ostringstream rows;
        rows << "makespan_cap_h,throughput,energy_kwh,makespan_h,status\n";
        for (const auto& pt : sw.points)
            rows << pt.makespan_cap << ',' << pt.throughput << ',' << kwh_str(pt.energy) << ','
                 << pt.makespan_h << ',' << solve_status_name(pt.status) << "\n";
        w.write("sweep.csv", rows.str(), true);
        std::vector<CurvePoint> curves;
        for (const auto& pt : sw.points) {
            curves.push_back({static_cast<double>(pt.makespan_cap),
                              static_cast<double>(pt.throughput), "throughput"});
            curves.push_back({static_cast<double>(pt.makespan_cap), pt.energy / 100.0, "energy_kwh"});
        }
        for (const auto& cp : energy_per_wafer_curve(sw, "kwh_per_wafer")) curves.push_back(cp);
        w.write("curves.csv", curve_to_csv(curves), true);
        w.write("front.csv", front_to_csv(sw.front), true);
        const auto& last = sw.points.back();
        std::cout << "caps 1.." << horizon_max << ": top throughput " << last.throughput
                  << " at cap " << last.makespan_cap << " (energy " << kwh_str(last.energy)
                  << " KWh)\n";
    } else {
        throw UsageError("unknown --mode '" + p.mode + "'");
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    w.manifest(command, cj, wall);
    return 0;
}

struct FifoArgs {
    InstanceOpts io;
    int throughput = -1;
    int from_h = 81;
    int to_h = 105;
    std::string out = ".";
};

int cmd_fifo_sweep(const FifoArgs& a, const std::string& command) {
    Instance inst = load_instance(a.io);
    int tp = a.throughput >= 0 ? a.throughput : inst.num_jobs;
    if (tp < 1 || tp > inst.num_jobs) throw UsageError("--throughput must be in 1..wafer count");
    if (a.from_h < 1 || a.to_h < a.from_h) throw UsageError("need 1 <= --from <= --to");
    auto t0 = std::chrono::steady_clock::now();
    auto pts = fifo_sweep(inst, tp, a.from_h, a.to_h);
    CentiKwh lo = 0, hi = 0;
    for (const auto& p : pts) {
        if (p.energy == 0) continue;
        if (lo == 0 || p.energy < lo) lo = p.energy;
        if (p.energy > hi) hi = p.energy;
    }
    std::cout << pts.size() << " horizons, FIFO energy range [" << kwh_str(lo) << ", "
              << kwh_str(hi) << "] KWh\n";
    ArtifactWriter w{fs::path(a.out), instance_hash(inst), {}};
    w.write("fifo.csv", fifo_sweep_to_csv(pts), true);
    ordered_json cj;
    cj["instance"] = a.io.path.empty() ? "minifab" : a.io.path;
    cj["jobs"] = inst.num_jobs;
    cj["throughput"] = tp;
    cj["from_h"] = a.from_h;
    cj["to_h"] = a.to_h;
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    w.manifest(command, cj, wall);
    return 0;
}

struct ReproArgs {
    std::string only;
    int parallel = 1;
    bool verbose = false;
    std::string out = ".";
};

int cmd_reproduce(const ReproArgs& a, const std::string& command) {
    ReproOptions opts{a.only, a.parallel, a.verbose};
    auto results = run_reproduction(opts, [&](const CriterionResult& r) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ": " << r.computed;
        if (!r.pass) std::cout << " | expected " << r.expected;
        std::cout << "\n";
        if (a.verbose) std::cout << "       " << r.what << "\n";
        std::cout.flush();
    });
    int passed = 0;
    for (const auto& r : results)
        if (r.pass) ++passed;
    std::cout << passed << "/" << results.size() << " criteria pass\n";
    fs::create_directories(a.out);
    std::ofstream f(fs::path(a.out) / "report.json", std::ios::binary);
    f << reproduction_to_json(results);
    if (!f) throw std::runtime_error("cannot write report.json");
    (void)command;
    if (results.empty()) throw UsageError("--only '" + a.only + "' matches no criterion");
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete-hour fab scheduling: exact search, sweeps, and dispatch baselines"};
    app.set_version_flag("--version", std::string("fabsched ") + kVersion);
    app.require_subcommand(1);
    const std::string command = join_args(argc, argv);

    auto add_instance_opts = [](CLI::App* c, InstanceOpts& io) {
        c->add_flag("--minifab", io.minifab, "use the builtin five-machine fab");
        c->add_option("--instance", io.path, "instance JSON file");
        c->add_option("--jobs", io.jobs, "wafer count");
        c->add_option("--horizon", io.horizon, "time grid length in hours");
    };

    SolveArgs sa;
    auto* sv = app.add_subcommand("solve", "optimize one schedule and write its artifacts");
    add_instance_opts(sv, sa.io);
    sv->add_option("--objective", sa.objective,
                   "makespan|energy|max-energy|throughput|first-feasible|weighted:A");
    sv->add_option("--capacity", sa.capacity, "task-channel|strict")
        ->check(CLI::IsMember({"task-channel", "strict"}));
    sv->add_flag("--dynamic", sa.dynamic, "machines may switch off between runs");
    sv->add_flag("--fifo", sa.fifo, "jobs enter every operation in id order");
    sv->add_flag("--all-on-at-start", sa.all_on_at_start, "every machine powers on at hour 1");
    sv->add_flag("--symmetry-breaking", sa.symmetry, "order identical jobs by start hour");
    sv->add_option("--throughput", sa.throughput, "exact wafer count to schedule");
    sv->add_option("--energy-cap", sa.energy_cap, "utilisation energy cap in KWh");
    sv->add_option("--makespan-cap", sa.makespan_cap, "completion deadline in hours");
    auto* sv_tl = sv->add_option("--time-limit", sa.time_limit, "seconds, 0 = unlimited");
    sv->add_option("--node-budget", sa.node_budget, "search nodes, 0 = unlimited");
    sv->add_option("--out", sa.out, "artifact directory");

    ParetoArgs pa;
    auto* pv = app.add_subcommand("pareto", "trade-off fronts and sweeps");
    add_instance_opts(pv, pa.base.io);
    pv->add_option("--mode", pa.mode, "fixed-throughput|throughput-sweep")
        ->check(CLI::IsMember({"fixed-throughput", "throughput-sweep"}));
    auto* pv_steps = pv->add_option("--steps", pa.steps, "scenario count / cap count");
    pv->add_option("--throughput", pa.base.throughput, "wafer count, default all");
    pv->add_option("--horizon-max", pa.horizon_max, "largest makespan cap in the sweep");
    pv->add_flag("--dynamic", pa.base.dynamic, "sweep with switching enabled");
    pv->add_option("--parallel", pa.parallel, "worker threads for sweep points");
    auto* pv_tl = pv->add_option("--time-limit", pa.base.time_limit, "seconds per solve");
    pv->add_option("--node-budget", pa.base.node_budget, "search nodes per solve");
    pv->add_option("--out", pa.base.out, "artifact directory");

    FifoArgs fa;
    auto* fv = app.add_subcommand("fifo-sweep", "free FIFO dispatch across horizons");
    add_instance_opts(fv, fa.io);
    fv->add_option("--throughput", fa.throughput, "wafer count, default all");
    fv->add_option("--from", fa.from_h, "first horizon");
    fv->add_option("--to", fa.to_h, "last horizon");
    fv->add_option("--out", fa.out, "artifact directory");

    ReproArgs ra;
    auto* rv = app.add_subcommand("reproduce", "run the stock-figure acceptance table");
    rv->add_option("--only", ra.only, "substring filter on criterion ids");
    rv->add_option("--parallel", ra.parallel, "worker threads for sweep criteria");
    rv->add_flag("--verbose", ra.verbose, "print what each criterion measures");
    rv->add_option("--out", ra.out, "artifact directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (const char* env = std::getenv("FABSCHED_TIME_LIMIT_S")) {
        if (sv->parsed() && sv_tl->count() == 0) sa.time_limit = std::atof(env);
        if (pv->parsed() && pv_tl->count() == 0) pa.base.time_limit = std::atof(env);
    }

    try {
        if (sv->parsed()) return cmd_solve(sa, command);
        if (pv->parsed()) return cmd_pareto(pa, pv_steps->count() > 0, command);
        if (fv->parsed()) return cmd_fifo_sweep(fa, command);
        if (rv->parsed()) return cmd_reproduce(ra, command);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
