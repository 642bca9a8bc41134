#include <doctest.h>

#include <vector>

#include "gbell/behavior.hpp"
#include "gbell/error.hpp"
#include "gbell/geometry.hpp"

using namespace gbell;

namespace {

// A signaling table on alice_side(2) x n_cycle(3): Bob's edge distribution
// flips with Alice's setting.
Behavior signaling_example(const BellScenario& bs) {
    std::vector<Rat> t(static_cast<size_t>(bs.joint().dim()), Rat(0));
    const Scenario& j = bs.joint();
    for (int x = 0; x < 2; ++x)
        for (int ci = 0; ci < 3; ++ci) {
            const int jc = bs.joint_context(x, ci);
            // x=0: all mass on (+1,+1,+1); x=1: all mass on (+1,-1,-1).
            const int t_idx = x == 0 ? 0 : 3;
            t[static_cast<size_t>(j.index(jc, t_idx))] = 1;
        }
    return Behavior{bs.joint_ptr(), std::move(t)};
}

} // namespace

TEST_SUITE("behavior") {

TEST_CASE("table validation") {
    ScenarioPtr s = share(n_cycle(3));
    std::vector<Rat> uniform(12, Rat(1, 4));
    CHECK_NOTHROW(behavior_from_table(s, uniform));

    auto bad = uniform;
    bad[0] = Rat(-1, 4);
    bad[1] = Rat(3, 4);
    CHECK_THROWS_AS(behavior_from_table(s, bad), InvalidProbabilityError);

    auto off = uniform;
    off[0] = Rat(1, 2);
    CHECK_THROWS_AS(behavior_from_table(s, off), NormalizationError);

    CHECK_THROWS_AS(behavior_from_table(s, std::vector<Rat>(11, Rat(0))), ScenarioMismatchError);
}

TEST_CASE("uniform and deterministic tables are nondisturbing") {
    ScenarioPtr s = share(n_cycle(4));
    CHECK(check_nd(uniform_behavior(s)).ok());
    CHECK(check_nd(assignment_behavior(s, {1, -1, 1, -1})).ok());

    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(3));
    CHECK(check_nsnd(bs, uniform_behavior(bs.joint_ptr())).ok());
}

TEST_CASE("marginal inconsistency is reported with exact residues") {
    ScenarioPtr s = share(n_cycle(3));
    // The (B1,B2) context sees B1 = +1 with probability 3/4, while the
    // (B0,B1) context insists on 1/2.
    std::vector<Rat> t = {Rat(1, 2), 0,         0,         Rat(1, 2), Rat(3, 4), 0,
                          0,         Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)};
    const Behavior b = behavior_from_table(s, t);
    const auto rep = check_nd(b);
    CHECK_FALSE(rep.ok());
    CHECK(rep.violations.size() >= 2); // B1 disagreement and B2 disagreement
    for (const auto& v : rep.violations) {
        CHECK(v.kind == "marginal-consistency");
        CHECK(v.lhs != v.rhs);
    }
}

TEST_CASE("alice-to-bob signaling is flagged under its own label") {
    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(3));
    const Behavior b = signaling_example(bs);
    const auto rep = check_nsnd(bs, b);
    CHECK_FALSE(rep.ok());
    bool saw_signaling = false;
    for (const auto& v : rep.violations) saw_signaling |= v.kind == "alice-to-bob-signaling";
    CHECK(saw_signaling);
    CHECK_THROWS_AS(bob_marginal(bs, b), SignalingError);
}

TEST_CASE("nsnd report is empty exactly when the joint nd report is") {
    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(3));
    const Behavior good = uniform_behavior(bs.joint_ptr());
    CHECK(check_nd(good).ok() == check_nsnd(bs, good).ok());
    const Behavior bad = signaling_example(bs);
    CHECK(check_nd(bad).ok() == check_nsnd(bs, bad).ok());
}

TEST_CASE("product behavior: marginals and conditionals recover the factors") {
    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(3));
    // Alice: biased coins; Bob: uniform.
    std::vector<Rat> joint(static_cast<size_t>(bs.joint().dim()));
    const Rat pa[2][2] = {{Rat(1, 3), Rat(2, 3)}, {Rat(3, 4), Rat(1, 4)}};
    for (int x = 0; x < 2; ++x)
        for (int ci = 0; ci < 3; ++ci)
            for (int t = 0; t < 8; ++t) {
                const int abit = t >> 2;
                joint[static_cast<size_t>(bs.joint().index(bs.joint_context(x, ci), t))] =
                    pa[x][abit] * Rat(1, 4);
            }
    const Behavior b = behavior_from_table(bs.joint_ptr(), joint);
    REQUIRE(check_nsnd(bs, b).ok());

    const Behavior bm = bob_marginal(bs, b);
    for (const auto& v : bm.p) CHECK(v == Rat(1, 4));

    const Behavior am = alice_marginal(bs, b);
    CHECK(am.p[0] == Rat(1, 3));
    CHECK(am.p[1] == Rat(2, 3));
    CHECK(am.p[2] == Rat(3, 4));
    CHECK(am.p[3] == Rat(1, 4));

    // Conditionals of a product equal the Bob marginal.
    const Behavior c = conditional_behavior(bs, b, 1, -1);
    CHECK(c.p == bm.p);
}

TEST_CASE("conditioning on a null outcome fails loudly") {
    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(3));
    std::vector<int> signs(5, 1);
    const Behavior b = assignment_behavior(bs.joint_ptr(), signs);
    CHECK_NOTHROW(conditional_behavior(bs, b, 0, 1));
    CHECK_THROWS_AS(conditional_behavior(bs, b, 0, -1), ConditioningOnNullError);
}

TEST_CASE("correlators: uniform vanishes, deterministic is a sign product") {
    ScenarioPtr s = share(n_cycle(5));
    const Behavior u = uniform_behavior(s);
    CHECK(correlator(u, std::vector<int>{0}) == 0);
    CHECK(correlator(u, std::vector<int>{3, 4}) == 0);

    const Behavior d = assignment_behavior(s, {1, -1, 1, 1, -1});
    CHECK(correlator(d, std::vector<int>{0, 1}) == -1);
    CHECK(correlator(d, std::vector<int>{4}) == -1);
    CHECK(correlator(d, std::vector<int>{2, 3}) == 1);
    CHECK(correlator(d, std::vector<std::string>{"B0", "B1"}) == -1);

    CHECK_THROWS_AS(correlator(u, std::vector<int>{0, 2}), IncompatibleSetError); // not a context subset
    CHECK_THROWS_AS(correlator(u, std::vector<std::string>{"Bx"}), IncompatibleSetError);
}

TEST_CASE("correlator expansion: all zeros gives the uniform behavior") {
    ScenarioPtr s = share(n_cycle(4));
    const Behavior b = behavior_from_correlators(s, {});
    CHECK(b.p == uniform_behavior(s).p);
}

TEST_CASE("correlator expansion rejects unsatisfiable specs") {
    ScenarioPtr s = share(n_cycle(3));
    CorrelatorSpec spec;
    spec[{0, 1}] = 1;
    spec[{1}] = -1; // edge fully correlated but B1 forced to -1 with B0 free
    spec[{0}] = 1;
    CHECK_THROWS_AS(behavior_from_correlators(s, spec), NotABehaviorError);

    CorrelatorSpec off;
    off[{0, 2}] = Rat(3, 2);
    CHECK_THROWS_AS(behavior_from_correlators(s, off), InvalidProbabilityError);

    CorrelatorSpec incompatible;
    incompatible[{0, 1, 2}] = 1;
    CHECK_THROWS_AS(behavior_from_correlators(s, incompatible), IncompatibleSetError);
}

TEST_CASE("round trip: correlators -> behavior -> correlators") {
    ScenarioPtr s = share(n_cycle(3));
    CorrelatorSpec spec;
    spec[{0}] = Rat(1, 3);
    spec[{1}] = Rat(-1, 5);
    spec[{2}] = 0;
    spec[{0, 1}] = Rat(1, 7);
    spec[{1, 2}] = Rat(2, 5);
    spec[{0, 2}] = Rat(-1, 9);
    const Behavior b = behavior_from_correlators(s, spec);
    const CorrelatorSpec back = extract_correlators(b);
    for (const auto& [ids, val] : spec) CHECK(back.at(ids) == val);
}

TEST_CASE("mixing: validation, identity, and linearity of correlators") {
    ScenarioPtr s = share(n_cycle(3));
    const Behavior a = assignment_behavior(s, {1, 1, 1});
    const Behavior b = assignment_behavior(s, {-1, -1, -1});

    CHECK(mix({a}, {Rat(1)}).p == a.p);
    CHECK_THROWS_AS(mix({a, b}, {Rat(1, 2), Rat(1, 3)}), InvalidMixtureError);
    CHECK_THROWS_AS(mix({a, b}, {Rat(3, 2), Rat(-1, 2)}), InvalidMixtureError);

    const Behavior m = mix({a, b}, {Rat(1, 4), Rat(3, 4)});
    CHECK(check_nd(m).ok());
    CHECK(correlator(m, std::vector<int>{0}) == Rat(1, 4) - Rat(3, 4));
    CHECK(correlator(m, std::vector<int>{0, 1}) == 1); // both components perfectly correlated
}

TEST_CASE("mixture of the bob marginals equals the bob marginal of the mixture") {
    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(3));
    const Behavior u = uniform_behavior(bs.joint_ptr());
    const Behavior d = assignment_behavior(bs.joint_ptr(), {1, -1, -1, 1, -1});
    const Behavior m = mix({u, d}, {Rat(2, 5), Rat(3, 5)});
    const Behavior lhs = bob_marginal(bs, m);
    const Behavior rhs = mix({bob_marginal(bs, u), bob_marginal(bs, d)}, {Rat(2, 5), Rat(3, 5)});
    CHECK(lhs.p == rhs.p);
}

} // TEST_SUITE
