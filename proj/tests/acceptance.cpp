#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <iostream>
#include <string>
#include <vector>

#include "fabsched/repro.hpp"

using namespace fabsched;

// One check per published figure. Each criterion prints its own pass/fail
// line so a red run shows exactly which number moved and by how much.
TEST_CASE("published figures reproduce") {
    std::vector<CriterionResult> results = run_reproduction({}, [](const CriterionResult& r) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ": " << r.computed
                  << " | expected " << r.expected << std::endl;
    });
    REQUIRE(results.size() == 28);

    int passed = 0;
    for (const auto& r : results) {
        CHECK_MESSAGE(r.pass, r.id << " (" << r.what << "): computed " << r.computed
                              << ", expected " << r.expected);
        if (r.pass) ++passed;
    }
    std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
}
