#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "fabsched/fifo.hpp"
#include "fabsched/model.hpp"
#include "fabsched/verify.hpp"

using namespace fabsched;

namespace {

// the 37-wafer lot the dispatch study runs on
Instance lot37() { return build_minifab(37, 120); }

void expect_clean(const Instance& inst, int horizon, const SolveResult& r, int throughput) {
    REQUIRE(r.solution.has_value());
    Instance local = inst;
    local.horizon = horizon;
    ModelConfig cfg;
    cfg.fifo = true;
    cfg.fixed_throughput = throughput;
    auto viols = check_solution(local, cfg, *r.solution);
    std::string first = viols.empty() ? std::string() : viols.front().message;
    CHECK_MESSAGE(viols.empty(), first);
}

} // namespace

TEST_CASE("policy names") {
    CHECK(fifo_policy_name(FifoMachinePolicy::SolverFree) == "solver_free");
    CHECK(fifo_policy_name(FifoMachinePolicy::Cheapest) == "cheapest");
    CHECK(fifo_policy_name(FifoMachinePolicy::MostExpensive) == "most_expensive");
}

TEST_CASE("single wafer rides the chosen power extreme") {
    Instance fab = build_minifab(1, 40);
    SUBCASE("cheapest machines") {
        SolveResult r = fifo_solve(fab, FifoConfig{1, 0, FifoMachinePolicy::Cheapest});
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.witness_energy == 63);
        CHECK(r.witness_makespan == 9);
        CHECK(r.objective_value == Rat::of(63, 100));
        CHECK(r.dual_bound == r.objective_value);
        CHECK(r.note == "fifo cheapest");
        expect_clean(fab, fab.horizon, r, 1);
    }
    SUBCASE("hungriest machines") {
        SolveResult r = fifo_solve(fab, FifoConfig{1, 0, FifoMachinePolicy::MostExpensive});
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.witness_energy == 86);
        CHECK(r.witness_makespan == 9);
        CHECK(r.note == "fifo most_expensive");
        expect_clean(fab, fab.horizon, r, 1);
    }
}

TEST_CASE("37 wafers on a 105 h grid span the dispatch energy band") {
    Instance fab = lot37();

    SolveResult cheap = fifo_solve(fab, FifoConfig{37, 105, FifoMachinePolicy::Cheapest});
    REQUIRE(cheap.status == SolveStatus::Optimal);
    CHECK(cheap.witness_energy == 2331);
    CHECK(cheap.witness_makespan == 81);
    expect_clean(fab, 105, cheap, 37);

    SolveResult hungry = fifo_solve(fab, FifoConfig{37, 105, FifoMachinePolicy::MostExpensive});
    REQUIRE(hungry.status == SolveStatus::Optimal);
    CHECK(hungry.witness_energy == 3182);
    CHECK(hungry.witness_makespan == 81);
    expect_clean(fab, 105, hungry, 37);

    // free machine choice ties toward the lower machine id at every visit,
    // which on this fab is also the cheaper machine
    SolveResult free_pick = fifo_solve(fab, FifoConfig{37, 105, FifoMachinePolicy::SolverFree});
    REQUIRE(free_pick.status == SolveStatus::Optimal);
    CHECK(free_pick.witness_energy == 2331);
    CHECK(free_pick.note == "fifo solver_free");
    expect_clean(fab, 105, free_pick, 37);

    // per-wafer energies bracket every policy
    CHECK(cheap.witness_energy == 37 * 63);
    CHECK(hungry.witness_energy == 37 * 86);
}

TEST_CASE("rejections") {
    Instance fab = build_minifab(5, 40);
    SUBCASE("throughput outside the lot") {
        SolveResult r = fifo_solve(fab, FifoConfig{0, 0, FifoMachinePolicy::Cheapest});
        CHECK(r.status == SolveStatus::Infeasible);
        CHECK(r.note == "throughput outside 1..num_jobs");
        r = fifo_solve(fab, FifoConfig{6, 0, FifoMachinePolicy::Cheapest});
        CHECK(r.status == SolveStatus::Infeasible);
        CHECK(r.note == "throughput outside 1..num_jobs");
    }
    SUBCASE("horizon override below the pass time invalidates the instance") {
        SolveResult r = fifo_solve(fab, FifoConfig{5, 8, FifoMachinePolicy::Cheapest});
        CHECK(r.status == SolveStatus::Infeasible);
        CHECK(r.note.rfind("instance invalid:", 0) == 0);
    }
    SUBCASE("overfilled horizon reports infeasible") {
        // 37 wafers pace the final lithography visit to start at hour 80
        SolveResult r = fifo_solve(lot37(), FifoConfig{37, 79, FifoMachinePolicy::Cheapest});
        CHECK(r.status == SolveStatus::Infeasible);
    }
}

TEST_CASE("horizon sweep is flat once the lot fits") {
    Instance fab = lot37();
    auto pts = fifo_sweep(fab, 37, 79, 82);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].horizon_h == 79);
    CHECK(pts[0].energy == 0); // does not fit
    CHECK(pts[0].makespan_h == 0);
    for (size_t i = 1; i < pts.size(); ++i) {
        CHECK(pts[i].horizon_h == 79 + static_cast<int>(i));
        CHECK(pts[i].energy == 2331);
        CHECK(pts[i].makespan_h == 81);
    }

    auto band = fifo_sweep(fab, 37, 81, 105);
    REQUIRE(band.size() == 25);
    for (const auto& p : band) {
        CHECK(p.energy == 2331);
        CHECK(p.makespan_h == 81);
    }
}

TEST_CASE("sweep CSV") {
    std::vector<FifoSweepPoint> pts = {{81, 2331, 81}, {82, 2331, 81}};
    CHECK(fifo_sweep_to_csv(pts) ==
          "horizon_h,energy_kwh,makespan_h\n81,23.310,81\n82,23.310,81\n");
}
