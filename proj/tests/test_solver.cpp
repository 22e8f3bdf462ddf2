#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fabsched/model.hpp"
#include "fabsched/solver.hpp"
#include "fabsched/verify.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <vector>

using namespace fabsched;

TEST_CASE("five wafers finish in 17 hours") {
    Instance inst = build_minifab(5, 40);
    ModelConfig cfg;
    SolveResult r = solve(inst, cfg, Objective::min_makespan());
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.objective_value == Rat::of(17));
    CHECK(r.dual_bound == Rat::of(17));
    CHECK(r.witness_makespan == 17);
    REQUIRE(r.solution.has_value());
    CHECK(check_solution(inst, cfg, *r.solution).empty());
    CHECK(makespan(inst, *r.solution) == 17);
    CHECK(r.note.find("root bound") != std::string::npos);
}

TEST_CASE("single wafer extremes") {
    Instance inst = build_minifab(1, 40);
    ModelConfig cfg;
    SolveResult ms = solve(inst, cfg, Objective::min_makespan());
    REQUIRE(ms.status == SolveStatus::Optimal);
    CHECK(ms.objective_value == Rat::of(9));

    SolveResult lo = solve(inst, cfg, Objective::min_energy());
    REQUIRE(lo.status == SolveStatus::Optimal);
    CHECK(lo.objective_value == Rat::of(63, 100));
    CHECK(lo.witness_energy == 63);
    CHECK(utilisation_energy_total(inst, *lo.solution) == 63);

    SolveResult hi = solve(inst, cfg, Objective::max_energy());
    REQUIRE(hi.status == SolveStatus::Optimal);
    CHECK(hi.objective_value == Rat::of(86, 100));
    CHECK(hi.witness_energy == 86);
}

TEST_CASE("fifteen wafers under a 37 hour cap: energy bracket") {
    Instance inst = build_minifab(15, 40);
    ModelConfig cfg;
    cfg.fixed_throughput = 15;
    cfg.makespan_cap = 37;

    SolveResult lo = solve(inst, cfg, Objective::min_energy());
    REQUIRE(lo.status == SolveStatus::Optimal);
    CHECK(lo.objective_value == Rat::of(945, 100));
    CHECK(lo.witness_energy == 945);
    REQUIRE(lo.solution.has_value());
    CHECK(check_solution(inst, cfg, *lo.solution).empty());
    CHECK(makespan(inst, *lo.solution) <= 37);

    SolveResult hi = solve(inst, cfg, Objective::max_energy());
    REQUIRE(hi.status == SolveStatus::Optimal);
    // every wafer on its priciest machines: 15 x 0.86 KWh, reachable within 37 h
    CHECK(hi.objective_value == Rat::of(1290, 100));
    CHECK(hi.witness_energy == 1290);
    REQUIRE(hi.solution.has_value());
    CHECK(check_solution(inst, cfg, *hi.solution).empty());
}

TEST_CASE("root lower bounds are sharp on the stock instances") {
    ModelConfig cfg;
    CHECK(lower_bound(build_minifab(5, 40), cfg, Objective::min_makespan(), {}) == Rat::of(17));
    CHECK(lower_bound(build_minifab(15, 40), cfg, Objective::min_makespan(), {}) == Rat::of(37));

    ModelConfig fixed;
    fixed.fixed_throughput = 37;
    CHECK(lower_bound(build_minifab(37, 120), fixed, Objective::min_energy(), {}) ==
          Rat::of(2331, 100));

    CHECK(lower_bound(build_minifab(40, 80), cfg, Objective::max_throughput(), {}) == Rat::of(37));
}

TEST_CASE("greedy seeds are feasible and sandwich the optimum") {
    Instance inst = build_minifab(5, 40);
    ModelConfig cfg;
    Rat lb = lower_bound(inst, cfg, Objective::min_makespan(), {});
    for (GreedyFlavor f :
         {GreedyFlavor::EarliestFree, GreedyFlavor::Cheapest, GreedyFlavor::Priciest}) {
        auto sol = greedy_upper_bound(inst, cfg, f, 5);
        REQUIRE(sol.has_value());
        CHECK(check_solution(inst, cfg, *sol).empty());
        CHECK(lb <= Rat::of(makespan(inst, *sol)));
    }

    ModelConfig queued;
    queued.fifo = true;
    auto sol = greedy_upper_bound(inst, queued, GreedyFlavor::EarliestFree, 5);
    REQUIRE(sol.has_value());
    CHECK(check_solution(inst, queued, *sol).empty());

    ModelConfig capped;
    capped.makespan_cap = 8; // starts sit on 1..8, the last hour may spill to 9
    CHECK_FALSE(greedy_upper_bound(inst, capped, GreedyFlavor::EarliestFree, 5).has_value());
    auto one = greedy_upper_bound(inst, capped, GreedyFlavor::Cheapest, 1);
    REQUIRE(one.has_value());
    CHECK(makespan(inst, *one) == 9);
    ModelConfig capped_one = capped;
    capped_one.fixed_throughput = 1;
    CHECK(check_solution(inst, capped_one, *one).empty());

    ModelConfig shorter;
    shorter.makespan_cap = 7; // now even one chain cannot start its last op
    CHECK_FALSE(greedy_upper_bound(inst, shorter, GreedyFlavor::Cheapest, 1).has_value());
}

TEST_CASE("maximum throughput") {
    SUBCASE("free count on the 80 hour window") {
        Instance inst = build_minifab(40, 80);
        SolveResult r = solve(inst, ModelConfig{}, Objective::max_throughput());
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.objective_value == Rat::of(37));
        CHECK(r.dual_bound == Rat::of(37));
        REQUIRE(r.solution.has_value());
        CHECK(r.solution->throughput() == 37);
        ModelConfig vcfg;
        vcfg.fixed_throughput = 37;
        CHECK(check_solution(inst, vcfg, *r.solution).empty());
    }
    SUBCASE("pinned count that cannot fit is refuted by the load bound") {
        Instance inst = build_minifab(20, 40);
        ModelConfig cfg;
        cfg.fixed_throughput = 20; // needs 46 busy litho hours ending by 41
        SolveResult r = solve(inst, cfg, Objective::max_throughput());
        CHECK(r.status == SolveStatus::Infeasible);
        CHECK(r.note.find("load bound") != std::string::npos);
    }
    SUBCASE("pinned count that fits") {
        Instance inst = build_minifab(20, 40);
        ModelConfig cfg;
        cfg.fixed_throughput = 15;
        SolveResult r = solve(inst, cfg, Objective::max_throughput());
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.objective_value == Rat::of(15));
        CHECK(r.solution->throughput() == 15);
    }
    SUBCASE("zero is always feasible") {
        Instance inst = build_minifab(5, 40);
        ModelConfig cfg;
        cfg.fixed_throughput = 0;
        SolveResult r = solve(inst, cfg, Objective::max_throughput());
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.objective_value == Rat::of(0));
        CHECK(r.solution->active_jobs.empty());
    }
}

TEST_CASE("first-feasible conventions") {
    Instance inst = build_minifab(2, 14);
    SolveResult r = solve(inst, ModelConfig{}, Objective::first_feasible());
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.objective_value == Rat::of(1));
    CHECK(r.dual_bound == Rat::of(1));
    REQUIRE(r.solution.has_value());
    CHECK(r.solution->throughput() == 2);
    CHECK(check_solution(inst, ModelConfig{}, *r.solution).empty());

    ModelConfig impossible;
    impossible.makespan_cap = 8;
    SolveResult bad = solve(inst, impossible, Objective::first_feasible());
    CHECK(bad.status == SolveStatus::Infeasible);
    CHECK(bad.dual_bound == Rat::of(0));

    ModelConfig none;
    none.fixed_throughput = 0;
    SolveResult empty = solve(inst, none, Objective::first_feasible());
    REQUIRE(empty.status == SolveStatus::Optimal);
    CHECK(empty.objective_value == Rat::of(1));
    CHECK(empty.solution->active_jobs.empty());
}

TEST_CASE("weighted objective matches its definition") {
    Instance inst = build_minifab(2, 14);
    ModelConfig cfg;
    cfg.fixed_throughput = 2;
    auto recompute = [&](const SolveResult& r, const Rat& alpha) {
        std::int64_t score = alpha.num * static_cast<std::int64_t>(r.witness_makespan) * 100 +
                             (alpha.den - alpha.num) * r.witness_energy;
        return Rat::of(score, alpha.den * 100);
    };
    for (Rat alpha : {Rat::of(1), Rat::of(1, 2), Rat::of(0), Rat::of(999, 1000)}) {
        SolveResult r = solve(inst, cfg, Objective::weighted(alpha));
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.objective_value == recompute(r, alpha));
        CHECK(check_solution(inst, cfg, *r.solution).empty());
    }
    // the extremes reduce to the pure objectives
    SolveResult pure_ms = solve(inst, cfg, Objective::min_makespan());
    SolveResult w_ms = solve(inst, cfg, Objective::weighted(Rat::of(1)));
    CHECK(Rat::of(w_ms.witness_makespan) == pure_ms.objective_value);
    SolveResult pure_te = solve(inst, cfg, Objective::min_energy());
    SolveResult w_te = solve(inst, cfg, Objective::weighted(Rat::of(0)));
    CHECK(Rat::of(w_te.witness_energy, 100) == pure_te.objective_value);

    CHECK_THROWS_AS(solve(inst, cfg, Objective::weighted(Rat::of(3, 2))),
                    std::invalid_argument);
}

TEST_CASE("strict machine mode serializes shared machines") {
    Instance one = build_minifab(1, 40);
    ModelConfig strict;
    strict.capacity_mode = CapacityMode::StrictMachine;
    SolveResult r1 = solve(one, strict, Objective::min_makespan());
    REQUIRE(r1.status == SolveStatus::Optimal);
    CHECK(r1.objective_value == Rat::of(9)); // one wafer never queues

    // two ops sharing one machine: channels may overlap, a strict lane cannot
    Instance shared;
    shared.machines = {{0, "m0", 1, 0, 0}};
    OperationDef a;
    a.id = 0;
    a.name = "A";
    a.eligible[0] = 2;
    OperationDef b;
    b.id = 1;
    b.name = "B";
    b.eligible[0] = 1;
    shared.operations = {a, b};
    shared.routing = {0, 1};
    shared.num_jobs = 2;
    shared.horizon = 8;
    REQUIRE(validate_instance(shared).ok());

    SolveResult loose = solve(shared, ModelConfig{}, Objective::min_makespan());
    SolveResult tight = solve(shared, strict, Objective::min_makespan());
    REQUIRE(loose.status == SolveStatus::Optimal);
    REQUIRE(tight.status == SolveStatus::Optimal);
    CHECK(loose.objective_value == Rat::of(5)); // B of one job rides over A of the other
    CHECK(tight.objective_value == Rat::of(6)); // six busy hours queue on one lane
    CHECK(check_solution(shared, strict, *tight.solution).empty());

    // on the stock fab two strict wafers still finish in the channel optimum
    Instance two = build_minifab(2, 40);
    SolveResult l2 = solve(two, ModelConfig{}, Objective::min_makespan());
    SolveResult t2 = solve(two, strict, Objective::min_makespan());
    REQUIRE(l2.status == SolveStatus::Optimal);
    REQUIRE(t2.status == SolveStatus::Optimal);
    CHECK(l2.objective_value == Rat::of(11));
    CHECK(t2.objective_value == Rat::of(11));
    CHECK(check_solution(two, strict, *t2.solution).empty());
}

TEST_CASE("dynamic switching produces verified timelines") {
    Instance inst = build_minifab(1, 12);
    ModelConfig cfg;
    cfg.dynamic_switching = true;
    SolveResult r = solve(inst, cfg, Objective::min_energy());
    REQUIRE(r.status == SolveStatus::Optimal);
    REQUIRE(r.solution.has_value());
    REQUIRE_FALSE(r.timelines.empty());
    CHECK(check_solution(inst, cfg, *r.solution, r.timelines).empty());
    CHECK(r.witness_energy == timeline_energy_total(inst, r.timelines));
    // switched-on hours cover at least the busy hours
    CHECK(r.witness_energy >= utilisation_energy_total(inst, *r.solution));

    SolveResult br = brute_force_solve(inst, cfg, Objective::min_energy());
    REQUIRE(br.status == SolveStatus::Optimal);
    CHECK(r.objective_value == br.objective_value);
}

TEST_CASE("search agrees with exhaustive enumeration on two wafers") {
    Instance inst = build_minifab(2, 14);
    std::vector<ModelConfig> configs(4);
    configs[1].capacity_mode = CapacityMode::StrictMachine;
    configs[2].fifo = true;
    configs[3].dynamic_switching = true;
    std::vector<Objective> objectives = {
        Objective::min_makespan(),
        Objective::min_energy(),
        Objective::max_energy(),
        Objective::weighted(Rat::of(1, 2)),
    };
    for (const auto& cfg : configs) {
        for (const auto& obj : objectives) {
            SolveResult bb = solve(inst, cfg, obj);
            SolveResult br = brute_force_solve(inst, cfg, obj);
            CHECK(bb.status == br.status);
            if (bb.status == SolveStatus::Optimal)
                CHECK(bb.objective_value == br.objective_value);
        }
    }
    SolveResult tp = solve(inst, ModelConfig{}, Objective::max_throughput());
    SolveResult tpb = brute_force_solve(inst, ModelConfig{}, Objective::max_throughput());
    CHECK(tp.status == tpb.status);
    CHECK(tp.objective_value == tpb.objective_value);
}

TEST_CASE("brute force refuses anything beyond toy size") {
    CHECK_THROWS_AS(brute_force_solve(build_minifab(5, 40), ModelConfig{}, Objective::min_makespan()),
                    std::invalid_argument);
    CHECK_THROWS_AS(brute_force_solve(build_minifab(2, 15), ModelConfig{}, Objective::min_makespan()),
                    std::invalid_argument);
}

TEST_CASE("invalid instances are reported, not solved") {
    Instance inst = build_minifab(5, 8); // horizon below the chain
    SolveResult r = solve(inst, ModelConfig{}, Objective::min_makespan());
    CHECK(r.status == SolveStatus::Infeasible);
    CHECK(r.note.find("instance invalid") != std::string::npos);

    ModelConfig bad;
    bad.fixed_throughput = 9;
    CHECK_THROWS_AS(solve(build_minifab(5, 40), bad, Objective::min_makespan()),
                    std::invalid_argument);
}

TEST_CASE("limits surface as bound statuses") {
    Instance inst = build_minifab(2, 16);
    ModelConfig cfg;
    cfg.dynamic_switching = true; // weak root bound, so the search must branch
    SolveResult r = solve(inst, cfg, Objective::min_energy(), Limits{0, 1});
    REQUIRE(r.status == SolveStatus::FeasibleBound);
    CHECK(r.note == "node budget reached");
    REQUIRE(r.solution.has_value());
    CHECK(r.dual_bound <= r.objective_value);
    CHECK(check_solution(inst, cfg, *r.solution, r.timelines).empty());

    SolveResult t = solve(inst, cfg, Objective::min_energy(), Limits{1e-9, 0});
    CHECK(t.status == SolveStatus::FeasibleBound);
    CHECK(t.note == "time limit reached");
}

TEST_CASE("deterministic results and JSON shape") {
    Instance inst = build_minifab(5, 40);
    ModelConfig cfg;
    SolveResult a = solve(inst, cfg, Objective::min_energy());
    SolveResult b = solve(inst, cfg, Objective::min_energy());
    CHECK(solve_result_to_json(a, false) == solve_result_to_json(b, false));

    auto j = nlohmann::json::parse(solve_result_to_json(a));
    CHECK(j["status"] == "optimal");
    CHECK(j.contains("objective"));
    CHECK(j.contains("bound"));
    CHECK(j.contains("nodes"));
    CHECK(j.contains("wall_time_s"));
    CHECK(j.contains("witness_energy_kwh"));
    CHECK(j["assignments"].is_array());
    CHECK(j["assignments"].size() == 30); // 5 jobs x 6 ops
}

TEST_CASE("timelines for all-on baselines") {
    Instance inst = build_minifab(1, 16);
    ScheduleSolution sol;
    // cheapest machines, started after each warmup
    sol.assignments = {
        {0, 0, 0, 2}, {0, 1, 2, 4}, {0, 2, 4, 5},
        {0, 3, 2, 7}, {0, 4, 0, 8}, {0, 5, 4, 9},
    };
    sol.active_jobs = {0};
    auto lean = best_timelines(inst, sol);
    REQUIRE(lean.size() == 5);
    CentiKwh lean_total = timeline_energy_total(inst, lean);
    auto padded = best_timelines(inst, sol, true);
    REQUIRE(padded.size() == 5);
    // idle machines get their shortest legal run: 6 h on M1, 4 h on M3
    CHECK(timeline_energy_total(inst, padded) == lean_total + 6 * 2 + 4 * 20);
    ModelConfig cfg;
    cfg.dynamic_switching = true;
    CHECK(check_solution(inst, cfg, sol, lean).empty());
    CHECK(check_solution(inst, cfg, sol, padded).empty());
}
