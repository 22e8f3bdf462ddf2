#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "fabsched/fifo.hpp"
#include "fabsched/model.hpp"
#include "fabsched/pareto.hpp"
#include "fabsched/report.hpp"
#include "fabsched/solver.hpp"
#include "fabsched/timeline_opt.hpp"

using namespace fabsched;

namespace {

std::vector<std::tuple<int, int, int, int>> keyed(const ScheduleSolution& sol) {
    std::vector<std::tuple<int, int, int, int>> out;
    for (const auto& a : sol.assignments) out.emplace_back(a.job, a.op, a.machine, a.start);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("utilisation energy splits busy hours per machine") {
    Instance fab = build_minifab(1, 40);
    SolveResult r = fifo_solve(fab, FifoConfig{1, 0, FifoMachinePolicy::Cheapest});
    REQUIRE(r.solution.has_value());
    EnergyReport rep = utilisation_energy(fab, *r.solution);
    CHECK(rep.busy_h == std::vector<int>{3, 0, 2, 0, 4});
    CHECK(rep.energy == std::vector<CentiKwh>{3, 0, 20, 0, 40});
    CHECK(rep.total == 63);
}

TEST_CASE("on-time energy prices whole runs") {
    Instance fab = build_minifab(1, 40);
    std::vector<MachineTimeline> tls = {{0, {{1, 6}}}, {4, {{2, 9}}}};
    CHECK(on_time_energy(fab, tls) == 6 * 1 + 8 * 10);
}

TEST_CASE("dynamic witness prices at least its busy hours") {
    Instance fab = build_minifab(1, 12);
    ModelConfig cfg;
    cfg.dynamic_switching = true;
    SolveResult r = solve(fab, cfg, Objective::min_energy());
    REQUIRE(r.status == SolveStatus::Optimal);
    REQUIRE(r.solution.has_value());
    REQUIRE_FALSE(r.timelines.empty());
    CentiKwh on = on_time_energy(fab, r.timelines);
    CHECK(on == r.witness_energy);
    CHECK(on >= utilisation_energy(fab, *r.solution).total);
}

TEST_CASE("energy per wafer along a sweep") {
    Instance fab = build_minifab(4, 15);
    ThroughputSweep sw = throughput_energy_sweep(fab, 15, 0, false);
    auto curve = energy_per_wafer_curve(sw, "static");
    // caps fitting fewer than two wafers carry no per-wafer figure
    REQUIRE(curve.size() == 6);
    for (size_t i = 0; i < curve.size(); ++i) {
        CHECK(curve[i].x == doctest::Approx(10.0 + static_cast<double>(i)));
        CHECK(curve[i].y == doctest::Approx(0.63)); // the all-cheapest wafer
        CHECK(curve[i].series == "static");
    }
    CHECK(fit_slope(curve) == doctest::Approx(0.0));
}

TEST_CASE("least squares slope") {
    SUBCASE("exact line") {
        std::vector<CurvePoint> pts = {{1, 2, "s"}, {2, 4, "s"}, {3, 6, "s"}};
        CHECK(fit_slope(pts) == doctest::Approx(2.0));
    }
    SUBCASE("offset does not matter") {
        std::vector<CurvePoint> pts = {{10, 7, "s"}, {20, 12, "s"}};
        CHECK(fit_slope(pts) == doctest::Approx(0.5));
    }
    SUBCASE("too few points") {
        CHECK_THROWS_AS(fit_slope({}), std::invalid_argument);
        CHECK_THROWS_AS(fit_slope({{1, 1, "s"}}), std::invalid_argument);
    }
    SUBCASE("degenerate x range") {
        std::vector<CurvePoint> pts = {{2, 1, "s"}, {2, 5, "s"}};
        CHECK_THROWS_AS(fit_slope(pts), std::invalid_argument);
    }
}

TEST_CASE("curve CSV") {
    std::vector<CurvePoint> pts = {{9, 0.63, "te"}, {11, 1.26, "te"}};
    CHECK(curve_to_csv(pts) == "x,y,series\n9,0.63,te\n11,1.26,te\n");
}

TEST_CASE("gantt renders fixed-width rows") {
    Instance fab = build_minifab(1, 12);
    SUBCASE("power row marks warmup then on hours") {
        std::vector<MachineTimeline> tls = {{0, {{2, 5}}}};
        std::string text = render_gantt(fab, {}, tls);
        CHECK(text ==
              "hour            |1234567890123|\n"
              "Diffuser1 power |.!###........|\n");
    }
    SUBCASE("each run warms up separately") {
        std::vector<MachineTimeline> tls = {{0, {{1, 3}, {6, 9}}}};
        std::string text = render_gantt(fab, {}, tls);
        CHECK(text.find("|!##..!###....|") != std::string::npos);
    }
    SUBCASE("channel rows carry job glyphs") {
        ScheduleSolution sol;
        sol.active_jobs = {0};
        sol.assignments = {{0, 0, 0, 3}}; // Diffusion1 on Diffuser1, hours 3..4
        std::string text = render_gantt(fab, sol);
        CHECK(text.find("Diffusion1@Diffuser1 |..00.........|") != std::string::npos);
    }
}

TEST_CASE("gantt text parses back to the assignments") {
    SUBCASE("static five wafer witness") {
        Instance fab = build_minifab(5, 40);
        SolveResult r = solve(fab, {}, Objective::min_makespan());
        REQUIRE(r.solution.has_value());
        std::string text = render_gantt(fab, *r.solution);
        ScheduleSolution back = parse_gantt(fab, text);
        CHECK(keyed(back) == keyed(*r.solution));
        CHECK(back.active_jobs == std::vector<int>{0, 1, 2, 3, 4});
    }
    SUBCASE("power rows and junk lines are ignored") {
        Instance fab = build_minifab(2, 14);
        ModelConfig cfg;
        cfg.dynamic_switching = true;
        SolveResult r = solve(fab, cfg, Objective::min_energy());
        REQUIRE(r.solution.has_value());
        std::string text = "# lot 2 wafers |comment cells|\n" + render_gantt(fab, *r.solution, r.timelines) +
                           "free text without bars\n";
        ScheduleSolution back = parse_gantt(fab, text);
        CHECK(keyed(back) == keyed(*r.solution));
    }
    SUBCASE("glyphs beyond 9 map to letters") {
        Instance fab = build_minifab(1, 40);
        ScheduleSolution back =
            parse_gantt(fab, "Diffusion1@Diffuser1 |..aa...|\n");
        REQUIRE(back.assignments.size() == 1);
        CHECK(back.assignments[0].job == 10);
        CHECK(back.assignments[0].op == 0);
        CHECK(back.assignments[0].machine == 0);
        CHECK(back.assignments[0].start == 3);
        CHECK(back.active_jobs == std::vector<int>{10});
    }
}
