#include "fabsched/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fabsched {

namespace {

const char kGlyphs[] = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

char job_glyph(int job) {
    if (job < 0 || job >= 62) return '?';
    return kGlyphs[job];
}

int glyph_job(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return 10 + (c - 'a');
    if (c >= 'A' && c <= 'Z') return 36 + (c - 'A');
    return -1;
}

} // namespace

EnergyReport utilisation_energy(const Instance& inst, const ScheduleSolution& sol) {
    EnergyReport rep;
    rep.busy_h.assign(inst.machines.size(), 0);
    rep.energy.assign(inst.machines.size(), 0);
    for (const auto& a : sol.assignments) {
        int p = inst.operation(a.op).process_time(a.machine);
        rep.busy_h[static_cast<size_t>(a.machine)] += p;
        rep.energy[static_cast<size_t>(a.machine)] +=
            static_cast<CentiKwh>(p) * inst.machine(a.machine).power_cw;
    }
    for (CentiKwh e : rep.energy) rep.total += e;
    return rep;
}

CentiKwh on_time_energy(const Instance& inst, const std::vector<MachineTimeline>& timelines) {
    return timeline_energy_total(inst, timelines);
}

std::vector<CurvePoint> energy_per_wafer_curve(const ThroughputSweep& sweep,
                                               const std::string& series) {
    std::vector<CurvePoint> out;
    for (const auto& p : sweep.points) {
        if (p.throughput < 2) continue; // per-wafer figure needs at least two wafers
        CurvePoint c;
        c.x = p.makespan_cap;
        c.y = static_cast<double>(p.energy) / 100.0 / p.throughput;
        c.series = series;
        out.push_back(c);
    }
    return out;
}

double fit_slope(const std::vector<CurvePoint>& points) {
    if (points.size() < 2) throw std::invalid_argument("slope needs at least two points");
    double sx = 0, sy = 0;
    for (const auto& p : points) {
        sx += p.x;
        sy += p.y;
    }
    double mx = sx / static_cast<double>(points.size());
    double my = sy / static_cast<double>(points.size());
    double sxx = 0, sxy = 0;
    for (const auto& p : points) {
        sxx += (p.x - mx) * (p.x - mx);
        sxy += (p.x - mx) * (p.y - my);
    }
    if (sxx == 0) throw std::invalid_argument("slope undefined for a single x value");
    return sxy / sxx;
}

std::string curve_to_csv(const std::vector<CurvePoint>& points) {
    std::ostringstream out;
    out << "x,y,series\n";
    for (const auto& p : points) out << p.x << ',' << p.y << ',' << p.series << '\n';
    return out.str();
}

std::string render_gantt(const Instance& inst, const ScheduleSolution& sol,
                         const std::vector<MachineTimeline>& timelines) {
    int width = inst.horizon + 1;

    // channel rows only where something runs, ordered by route then machine
    struct Row {
        std::string label;
        std::string cells;
    };
    std::vector<Row> rows;
    std::map<std::pair<int, int>, size_t> row_of; // (routing pos, machine)
    std::vector<int> pos_of(inst.operations.size(), -1);
    for (size_t q = 0; q < inst.routing.size(); ++q)
        pos_of[static_cast<size_t>(inst.routing[q])] = static_cast<int>(q);

    std::vector<std::pair<std::pair<int, int>, const Assignment*>> keyed;
    for (const auto& a : sol.assignments)
        keyed.push_back({{pos_of[static_cast<size_t>(a.op)], a.machine}, &a});
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second->start < y.second->start;
    });
    for (const auto& [key, a] : keyed) {
        auto it = row_of.find(key);
        if (it == row_of.end()) {
            Row r;
            r.label = inst.operation(a->op).name + "@" + inst.machine(a->machine).name;
            r.cells.assign(static_cast<size_t>(width), '.');
            it = row_of.emplace(key, rows.size()).first;
            rows.push_back(std::move(r));
        }
        int p = inst.operation(a->op).process_time(a->machine);
        for (int h = a->start; h < a->start + p; ++h)
            if (h >= 1 && h <= width)
                rows[it->second].cells[static_cast<size_t>(h - 1)] = job_glyph(a->job);
    }

    // power rows: '!' warmup hours, '#' remaining on hours
    std::vector<Row> power_rows;
    for (const auto& t : timelines) {
        if (t.runs.empty()) continue;
        Row r;
        r.label = inst.machine(t.machine).name + " power";
        r.cells.assign(static_cast<size_t>(width), '.');
        int warm = inst.machine(t.machine).startup_h;
        for (const auto& run : t.runs)
            for (int h = run.on; h <= run.off && h <= width; ++h)
                r.cells[static_cast<size_t>(h - 1)] = h < run.on + warm ? '!' : '#';
        power_rows.push_back(std::move(r));
    }

    size_t lw = 4; // "hour"
    for (const auto& r : rows) lw = std::max(lw, r.label.size());
    for (const auto& r : power_rows) lw = std::max(lw, r.label.size());

    std::ostringstream out;
    auto emit = [&](const std::string& label, const std::string& cells) {
        out << label << std::string(lw - label.size(), ' ') << " |" << cells << "|\n";
    };
    std::string ruler;
    for (int h = 1; h <= width; ++h) ruler += static_cast<char>('0' + h % 10);
    emit("hour", ruler);
    for (const auto& r : rows) emit(r.label, r.cells);
    for (const auto& r : power_rows) emit(r.label, r.cells);
    return out.str();
}

ScheduleSolution parse_gantt(const Instance& inst, const std::string& text) {
    std::map<std::string, int> op_by_name, machine_by_name;
    for (const auto& o : inst.operations) op_by_name[o.name] = o.id;
    for (const auto& m : inst.machines) machine_by_name[m.name] = m.id;

    ScheduleSolution sol;
    std::vector<bool> seen_job;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto bar = line.find('|');
        if (bar == std::string::npos) continue;
        std::string label = line.substr(0, bar);
        while (!label.empty() && label.back() == ' ') label.pop_back();
        if (label == "hour" || label.empty() || label[0] == '#') continue;
        if (label.size() > 6 && label.substr(label.size() - 6) == " power") continue;
        auto at = label.find('@');
        if (at == std::string::npos) continue;
        auto op_it = op_by_name.find(label.substr(0, at));
        auto m_it = machine_by_name.find(label.substr(at + 1));
        if (op_it == op_by_name.end() || m_it == machine_by_name.end()) continue;
        std::string cells = line.substr(bar + 1);
        if (!cells.empty() && cells.back() == '|') cells.pop_back();
        int h = 1;
        size_t i = 0;
        while (i < cells.size()) {
            int job = glyph_job(cells[i]);
            if (job < 0) {
                ++i;
                ++h;
                continue;
            }
            size_t j = i;
            while (j < cells.size() && cells[j] == cells[i]) ++j;
            sol.assignments.push_back({job, op_it->second, m_it->second, h});
            if (job >= static_cast<int>(seen_job.size())) seen_job.resize(static_cast<size_t>(job) + 1, false);
            seen_job[static_cast<size_t>(job)] = true;
            h += static_cast<int>(j - i);
            i = j;
        }
    }
    for (size_t j = 0; j < seen_job.size(); ++j)
        if (seen_job[j]) sol.active_jobs.push_back(static_cast<int>(j));
    std::sort(sol.assignments.begin(), sol.assignments.end(),
              [](const Assignment& a, const Assignment& b) {
                  if (a.job != b.job) return a.job < b.job;
                  if (a.op != b.op) return a.op < b.op;
                  if (a.machine != b.machine) return a.machine < b.machine;
                  return a.start < b.start;
              });
    return sol;
}

} // namespace fabsched
