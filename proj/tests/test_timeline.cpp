#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fabsched/model.hpp"
#include "fabsched/repro.hpp"
#include "fabsched/timeline_opt.hpp"
#include "fabsched/verify.hpp"

#include <stdexcept>
#include <vector>

using namespace fabsched;

TEST_CASE("two distant blocks get two runs") {
    std::vector<Interval> blocks = {{2, 3}, {20, 21}};
    MachineTimeline tl = optimize_timeline(blocks, 0, 1, 6, 21);
    CHECK(tl.machine == 0);
    REQUIRE(tl.runs.size() == 2);
    CHECK(tl.runs[0].on == 1);
    CHECK(tl.runs[0].off == 6);  // min-on stretches the first run
    CHECK(tl.runs[1].on == 19);  // warmup hour ahead of the block
    CHECK(tl.runs[1].off == 21); // ends at the horizon: no switch-off, no min-on
    CHECK(tl.total_on_h() == 9);
}

TEST_CASE("a machine with work switches on at the first hour") {
    // late work: the hour-1 run lasts min-on, then the machine rests until
    // a fresh run can warm up right before the block
    MachineTimeline tl = optimize_timeline({{10, 11}}, 3, 1, 2, 12);
    REQUIRE(tl.runs.size() == 2);
    CHECK(tl.machine == 3);
    CHECK(tl.runs[0].on == 1);
    CHECK(tl.runs[0].off == 2);
    CHECK(tl.runs[1].on == 9);
    CHECK(tl.runs[1].off == 11);
    CHECK(tl.total_on_h() == 5);
}

TEST_CASE("staying on can beat paying min-on twice") {
    // splitting costs 6 + 6 hours, one continuous run only 10
    MachineTimeline tl = optimize_timeline({{2, 3}, {9, 10}}, 0, 1, 6, 30);
    REQUIRE(tl.runs.size() == 1);
    CHECK(tl.runs[0].on == 1);
    CHECK(tl.runs[0].off == 10);
    CHECK(tl.total_on_h() == 10);
}

TEST_CASE("min-on is waived for runs reaching the horizon") {
    MachineTimeline tl = optimize_timeline({{2, 3}}, 0, 1, 8, 3);
    REQUIRE(tl.runs.size() == 1);
    CHECK(tl.runs[0].on == 1);
    CHECK(tl.runs[0].off == 3); // 3 h despite the 8 h minimum

    tl = optimize_timeline({{2, 3}}, 0, 1, 8, 12);
    REQUIRE(tl.runs.size() == 1);
    CHECK(tl.runs[0].off == 8); // away from the horizon the minimum binds
}

TEST_CASE("no work means no runs") {
    MachineTimeline tl = optimize_timeline({}, 2, 1, 6, 10);
    CHECK(tl.runs.empty());
    CHECK(tl.total_on_h() == 0);
}

TEST_CASE("adjacent blocks are legal input") {
    MachineTimeline tl = optimize_timeline({{2, 3}, {4, 5}}, 0, 1, 2, 10);
    REQUIRE(tl.runs.size() == 1);
    CHECK(tl.total_on_h() == 5);
}

TEST_CASE("blocks may touch the grid end") {
    MachineTimeline tl = optimize_timeline({{2, 13}}, 0, 1, 4, 12);
    REQUIRE(tl.runs.size() == 1);
    CHECK(tl.runs[0].on == 1);
    CHECK(tl.runs[0].off == 13);
}

TEST_CASE("malformed inputs throw") {
    CHECK_THROWS_AS(optimize_timeline({{1, 2}}, 0, 1, 2, 10), std::invalid_argument);
    CHECK_THROWS_AS(optimize_timeline({{5, 6}, {2, 3}}, 0, 0, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(optimize_timeline({{2, 4}, {4, 6}}, 0, 0, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(optimize_timeline({{2, 14}}, 0, 1, 2, 12), std::invalid_argument);
    CHECK_THROWS_AS(optimize_timeline({{0, 2}}, 0, 0, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(optimize_timeline({{3, 2}}, 0, 0, 0, 10), std::invalid_argument);
}

TEST_CASE("optimized timelines satisfy the dynamic verifier") {
    Instance inst;
    inst.machines = {{0, "M0", 1, 1, 3}};
    OperationDef op;
    op.id = 0;
    op.name = "op";
    op.eligible = {{0, 2}};
    inst.operations = {op};
    inst.routing = {0};
    inst.num_jobs = 2;
    inst.horizon = 12;

    ScheduleSolution sol;
    sol.assignments = {{0, 0, 0, 2}, {1, 0, 0, 9}};
    sol.active_jobs = {0, 1};

    auto blocks = machine_busy_blocks(inst, sol, 0);
    MachineTimeline tl = optimize_timeline(blocks, 0, 1, 3, 12);
    CHECK(tl.total_on_h() == 6); // [1,3] and [8,10]

    ModelConfig cfg;
    cfg.dynamic_switching = true;
    CHECK(check_solution(inst, cfg, sol, {tl}).empty());
}

TEST_CASE("random switching plans match exhaustive search") {
    OracleRun run = run_timeline_oracle(60, 0xf00dULL);
    CHECK(run.cases == 60);
    CHECK_MESSAGE(run.failures == 0, run.first_failure);
}
