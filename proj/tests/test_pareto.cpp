#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "fabsched/model.hpp"
#include "fabsched/pareto.hpp"

using namespace fabsched;

namespace {

ParetoPoint pp(int ms, CentiKwh e, int tp, const char* mode) {
    return ParetoPoint{ms, e, tp, mode};
}

} // namespace

TEST_CASE("dominance filter drops dominated and duplicate points") {
    SUBCASE("lower energy at equal makespan and throughput wins") {
        std::vector<ParetoPoint> pts = {
            pp(37, 1019, 15, "hot"),
            pp(37, 945, 15, "cool"),
            pp(40, 900, 15, "slow"), // cheaper but slower: incomparable
            pp(37, 945, 15, "dup"),  // exact duplicate of "cool"
        };
        ParetoFront front = pareto_filter(pts);
        REQUIRE(front.points.size() == 2);
        CHECK(front.points[0].objective_mode == "cool");
        CHECK(front.points[1].objective_mode == "slow");
    }
    SUBCASE("throughput is maximized") {
        std::vector<ParetoPoint> pts = {pp(37, 945, 15, "less"), pp(37, 945, 16, "more")};
        ParetoFront front = pareto_filter(pts);
        REQUIRE(front.points.size() == 1);
        CHECK(front.points[0].objective_mode == "more");
    }
    SUBCASE("empty input") {
        CHECK(pareto_filter({}).points.empty());
    }
}

TEST_CASE("front renders as CSV with KWh energies") {
    ParetoFront front;
    front.points.push_back(pp(37, 945, 15, "x"));
    CHECK(front_to_csv(front) ==
          "makespan_h,energy_kwh,throughput,objective_mode\n37,9.450,15,x\n");
}

TEST_CASE("single wafer energy-cap study brackets and walks the TE lattice") {
    // one wafer: TE floor 63, ceiling 86; upgrades per op are +2 (D1), +10
    // (I1), +10 (I2), +1 (D2), so reachable totals are 63 + {0..3,10..13,20..23}
    Instance fab = build_minifab(1, 40);
    FixedThroughputStudy st = epsilon_sweep_fixed_throughput(fab, 1, 5);

    CHECK(st.throughput == 1);
    CHECK(st.min_makespan_h == 9);
    CHECK(st.te_min == 63);
    CHECK(st.te_max == 86);

    REQUIRE(st.scenarios.size() == 5);
    std::vector<CentiKwh> caps, energies;
    for (const auto& sc : st.scenarios) {
        caps.push_back(sc.cap);
        energies.push_back(sc.energy);
        CHECK(sc.makespan_h == 9);
    }
    CHECK(caps == std::vector<CentiKwh>{63, 68, 74, 80, 86});
    // greatest reachable sum under each cap, not the cap itself
    CHECK(energies == std::vector<CentiKwh>{63, 66, 74, 76, 86});

    // tightest cap forces the all-cheapest plan: D on m0, I on m2, L on m4
    CHECK(st.scenarios[0].busy_h == std::vector<int>{3, 0, 2, 0, 4});

    // every scenario shares makespan and throughput, so only the cheapest survives
    REQUIRE(st.front.points.size() == 1);
    CHECK(st.front.points[0].makespan_h == 9);
    CHECK(st.front.points[0].energy == 63);
    CHECK(st.front.points[0].throughput == 1);
    CHECK(st.front.points[0].objective_mode == "min-makespan|te-cap=0.630");
}

TEST_CASE("study edge cases") {
    Instance fab = build_minifab(1, 40);
    SUBCASE("a single step collapses the grid to the ceiling") {
        FixedThroughputStudy st = epsilon_sweep_fixed_throughput(fab, 1, 1);
        REQUIRE(st.scenarios.size() == 1);
        CHECK(st.scenarios[0].cap == 86);
        CHECK(st.scenarios[0].energy == 86);
    }
    SUBCASE("zero throughput publishes the empty point") {
        FixedThroughputStudy st = epsilon_sweep_fixed_throughput(fab, 0, 5);
        CHECK(st.scenarios.empty());
        REQUIRE(st.front.points.size() == 1);
        CHECK(st.front.points[0].makespan_h == 0);
        CHECK(st.front.points[0].energy == 0);
        CHECK(st.front.points[0].throughput == 0);
        CHECK(st.front.points[0].objective_mode == "empty");
    }
    SUBCASE("infeasible throughput leaves the study empty") {
        // 3 wafers need 6 h on the final lithography channel that is first
        // reachable at hour 8, which overruns a 9 h grid
        Instance tight = build_minifab(3, 9);
        FixedThroughputStudy st = epsilon_sweep_fixed_throughput(tight, 3, 5);
        CHECK(st.min_makespan_h == 0);
        CHECK(st.scenarios.empty());
        CHECK(st.front.points.empty());
    }
}

TEST_CASE("throughput sweep over every integer cap") {
    // 4 wafers, 15 h grid; the final lithography channel is reachable at hour
    // 8, so a cap c fits min(4, (c-6)/2) wafers once a whole pass fits
    Instance fab = build_minifab(4, 15);
    ThroughputSweep sw = throughput_energy_sweep(fab, 15, 0, false);

    CHECK_FALSE(sw.dynamic);
    REQUIRE(sw.points.size() == 15);
    for (int c = 1; c <= 15; ++c) {
        const ThroughputSweepPoint& p = sw.points[static_cast<size_t>(c - 1)];
        CHECK(p.makespan_cap == c);
        CHECK(p.status == SolveStatus::Optimal);
        int want_tp = c < 9 ? 0 : std::min(4, (c - 6) / 2);
        CHECK(p.throughput == want_tp);
        CHECK(p.energy == static_cast<CentiKwh>(63) * want_tp);
        CHECK(p.makespan_h == (want_tp == 0 ? 0 : 2 * want_tp + 7));
    }

    // front: the deduplicated staircase, including the idle origin
    REQUIRE(sw.front.points.size() == 5);
    CHECK(sw.front.points[0].objective_mode == "max-throughput|min-energy|cap=1");
    std::vector<int> tps, mss;
    std::vector<CentiKwh> es;
    for (const auto& p : sw.front.points) {
        tps.push_back(p.throughput);
        mss.push_back(p.makespan_h);
        es.push_back(p.energy);
    }
    CHECK(tps == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(mss == std::vector<int>{0, 9, 11, 13, 15});
    CHECK(es == std::vector<CentiKwh>{0, 63, 126, 189, 252});

    SUBCASE("parallel workers reproduce the serial sweep") {
        ThroughputSweep par = throughput_energy_sweep(fab, 15, 0, false, {}, 3);
        REQUIRE(par.points.size() == sw.points.size());
        for (size_t i = 0; i < sw.points.size(); ++i) {
            CHECK(par.points[i].makespan_cap == sw.points[i].makespan_cap);
            CHECK(par.points[i].throughput == sw.points[i].throughput);
            CHECK(par.points[i].energy == sw.points[i].energy);
            CHECK(par.points[i].makespan_h == sw.points[i].makespan_h);
            CHECK(par.points[i].status == sw.points[i].status);
        }
    }
}

TEST_CASE("sweep cap grids") {
    Instance fab = build_minifab(4, 15);
    SUBCASE("four steps spread inclusively") {
        ThroughputSweep sw = throughput_energy_sweep(fab, 15, 4, false);
        REQUIRE(sw.points.size() == 4);
        CHECK(sw.points[0].makespan_cap == 1);
        CHECK(sw.points[1].makespan_cap == 5);
        CHECK(sw.points[2].makespan_cap == 10);
        CHECK(sw.points[3].makespan_cap == 15);
        CHECK(sw.points[0].throughput == 0); // below the 9 h pass time
        CHECK(sw.points[1].throughput == 0);
        CHECK(sw.points[2].throughput == 2);
        CHECK(sw.points[3].throughput == 4);
    }
    SUBCASE("one step keeps only the widest cap") {
        ThroughputSweep sw = throughput_energy_sweep(fab, 15, 1, false);
        REQUIRE(sw.points.size() == 1);
        CHECK(sw.points[0].makespan_cap == 15);
        CHECK(sw.points[0].throughput == 4);
    }
}

TEST_CASE("weighted sum reduces to the pure objectives at the extremes") {
    Instance fab = build_minifab(2, 40);
    SUBCASE("all weight on makespan") {
        SolveResult r = weighted_sum_solve(fab, 2, Rat::of(1));
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.witness_makespan == 11);
        CHECK(r.objective_value == Rat::of(11));
    }
    SUBCASE("all weight on energy") {
        SolveResult r = weighted_sum_solve(fab, 2, Rat::of(0));
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.witness_energy == 126);
        CHECK(r.objective_value == Rat::of(126, 100));
    }
}
