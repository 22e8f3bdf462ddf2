#pragma once

// Derived reports: energy accounting, regression slopes, per-wafer curves
// and a fixed-width text gantt that parses back to the exact assignments.

#include <string>
#include <vector>

#include "fabsched/model.hpp"
#include "fabsched/pareto.hpp"
#include "fabsched/verify.hpp"

namespace fabsched {

EnergyReport utilisation_energy(const Instance& inst, const ScheduleSolution& sol);

// On-hours per machine times power; centi-KWh.
CentiKwh on_time_energy(const Instance& inst, const std::vector<MachineTimeline>& timelines);

struct CurvePoint {
    double x = 0;
    double y = 0;
    std::string series;
};

// energy-per-finished-wafer along a throughput sweep; skips empty points
std::vector<CurvePoint> energy_per_wafer_curve(const ThroughputSweep& sweep,
                                               const std::string& series);

// Least-squares slope of y on x. Throws std::invalid_argument when fewer
// than two points or a degenerate x-range.
double fit_slope(const std::vector<CurvePoint>& points);

std::string curve_to_csv(const std::vector<CurvePoint>& points);

// Channel-per-row text chart; optional timeline rows show on/startup/off
// hours. Cells are fixed width so the chart is diffable and parseable.
std::string render_gantt(const Instance& inst, const ScheduleSolution& sol,
                         const std::vector<MachineTimeline>& timelines = {});

// Recovers the assignment set from render_gantt output.
ScheduleSolution parse_gantt(const Instance& inst, const std::string& text);

} // namespace fabsched
