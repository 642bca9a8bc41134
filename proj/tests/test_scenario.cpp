#include <doctest.h>

#include "gbell/error.hpp"
#include "gbell/scenario.hpp"

using namespace gbell;

TEST_SUITE("scenario") {

TEST_CASE("cycle layout: contexts, offsets, outcome convention") {
    const Scenario s = n_cycle(5);
    CHECK(s.measurement_count() == 5);
    CHECK(s.context_count() == 5);
    CHECK(s.dim() == 20); // 5 contexts x 2^2 outcomes
    CHECK(s.context(0) == std::vector<int>{0, 1});
    CHECK(s.context(4) == std::vector<int>{0, 4}); // stored sorted
    CHECK(s.offset(0) == 0);
    CHECK(s.offset(1) == 4);
    CHECK(s.label(3) == "B3");
    CHECK(s.measurement_id("B4") == 4);
    CHECK(s.measurement_id("nope") == -1);

    // Tuple index 0 is all-+1; bit order is big-endian over positions.
    CHECK(s.outcome(0, 0, 0) == 1);
    CHECK(s.outcome(0, 0, 1) == 1);
    CHECK(s.outcome(0, 1, 0) == 1);
    CHECK(s.outcome(0, 1, 1) == -1);
    CHECK(s.outcome(0, 2, 0) == -1);
    CHECK(s.outcome(0, 3, 1) == -1);
}

TEST_CASE("cycle needs at least three measurements") {
    CHECK_THROWS_AS(n_cycle(2), InvalidScenarioError);
    CHECK_NOTHROW(n_cycle(3));
}

TEST_CASE("three-cycle contexts are the three edges") {
    const Scenario s = n_cycle(3);
    REQUIRE(s.context_count() == 3);
    CHECK(s.context(0) == std::vector<int>{0, 1});
    CHECK(s.context(1) == std::vector<int>{1, 2});
    CHECK(s.context(2) == std::vector<int>{0, 2});
    CHECK(s.dim() == 12);
}

TEST_CASE("square scenario: rows then columns") {
    const Scenario s = peres_mermin();
    CHECK(s.measurement_count() == 9);
    CHECK(s.context_count() == 6);
    CHECK(s.dim() == 48); // 6 contexts x 2^3
    // Rows first.
    CHECK(s.context(0) == std::vector<int>{pm_cell(1, 1), pm_cell(1, 2), pm_cell(1, 3)});
    CHECK(s.context(2) == std::vector<int>{pm_cell(3, 1), pm_cell(3, 2), pm_cell(3, 3)});
    // Then columns.
    CHECK(s.context(3) == std::vector<int>{pm_cell(1, 1), pm_cell(2, 1), pm_cell(3, 1)});
    CHECK(s.context(5) == std::vector<int>{pm_cell(1, 3), pm_cell(2, 3), pm_cell(3, 3)});
    CHECK(s.label(pm_cell(2, 3)) == "B23");
}

TEST_CASE("single-party side: singleton contexts") {
    const Scenario s = alice_side(2);
    CHECK(s.measurement_count() == 2);
    CHECK(s.context_count() == 2);
    CHECK(s.dim() == 4);
    CHECK(s.context(0) == std::vector<int>{0});
    CHECK_THROWS_AS(alice_side(0), InvalidScenarioError);
}

TEST_CASE("validation: labels and context structure") {
    CHECK_THROWS_AS(Scenario::make({}, {{0}}), InvalidScenarioError);
    CHECK_THROWS_AS(Scenario::make({"a", "a"}, {{0, 1}}), InvalidScenarioError);
    CHECK_THROWS_AS(Scenario::make({"a", "b"}, {{0, 0}}), InvalidScenarioError);
    CHECK_THROWS_AS(Scenario::make({"a", "b"}, {{0}}), InvalidScenarioError);      // b uncovered
    CHECK_THROWS_AS(Scenario::make({"a", "b"}, {{0, 1}, {1}}), InvalidScenarioError); // nested
    CHECK_THROWS_AS(Scenario::make({"a", "b"}, {{0, 2}}), InvalidScenarioError);   // unknown id
    CHECK_NOTHROW(Scenario::make({"a", "b", "c"}, {{0, 1}, {1, 2}}));
}

TEST_CASE("find_context_containing") {
    const Scenario s = peres_mermin();
    CHECK(s.find_context_containing({pm_cell(1, 1), pm_cell(1, 3)}) == 0);
    CHECK(s.find_context_containing({pm_cell(2, 2)}) == 1);
    CHECK(s.find_context_containing({pm_cell(1, 1), pm_cell(2, 2)}) == -1);
}

TEST_CASE("composition: joint contexts ordered by (setting, bob context)") {
    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(3));
    const Scenario& j = bs.joint();
    CHECK(j.measurement_count() == 5);
    CHECK(j.context_count() == 6);
    CHECK(j.dim() == 48); // 6 contexts x 2^3
    // Alice ids come first, so her outcome is the leading tuple bit.
    CHECK(j.context(0) == std::vector<int>{0, 2, 3});
    CHECK(j.context(1) == std::vector<int>{0, 3, 4});
    CHECK(j.context(2) == std::vector<int>{0, 2, 4});
    CHECK(j.context(3) == std::vector<int>{1, 2, 3});
    CHECK(bs.joint_context(1, 2) == 5);
    CHECK(bs.bob_id(2) == 4);
    CHECK(j.label(0) == "A0");
    CHECK(j.label(2) == "B0");
}

TEST_CASE("composition requires singleton contexts on the left") {
    CHECK_THROWS_AS(BellScenario::make(n_cycle(3), n_cycle(3)), UnsupportedCompositionError);
}

TEST_CASE("composed square scenario has the documented size") {
    const BellScenario bs = BellScenario::make(alice_side(2), peres_mermin());
    CHECK(bs.joint().dim() == 192); // 12 contexts x 2^4
    CHECK(bs.joint().context_count() == 12);
}

} // TEST_SUITE
