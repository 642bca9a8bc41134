#pragma once

#include <map>
#include <string>
#include <vector>

#include "gbell/rational.hpp"
#include "gbell/scenario.hpp"

namespace gbell {

// Exact-rational probability table over a scenario's coordinate layout.
// Immutable by convention: all operations below are pure.
struct Behavior {
    ScenarioPtr scenario;
    std::vector<Rat> p;

    const Rat& at(int ci, int t) const {
        return p[static_cast<size_t>(scenario->index(ci, t))];
    }
};

// Validates nonnegativity and per-context normalization.
Behavior behavior_from_table(ScenarioPtr scenario, std::vector<Rat> entries);

struct EqualityViolation {
    std::string kind;   // which consistency family failed
    std::string where;  // instance: contexts / settings / outcomes involved
    Rat lhs, rhs;
};

struct ConsistencyReport {
    std::vector<EqualityViolation> violations;
    bool ok() const { return violations.empty(); }
};

// Shared-marginal consistency across every overlapping context pair
// ("marginal-consistency" entries).
ConsistencyReport check_nd(const Behavior& b);

// Consistency for a composed two-party behavior (b lives on bs.joint()).
// Reported kinds:
//   "bob-no-disturbance"     — for one Alice setting, Bob context marginals
//                              disagree on shared measurements
//   "alice-to-bob-signaling" — Bob's statistics depend on Alice's setting
//   "bob-to-alice-signaling" — Alice's statistics depend on Bob's context
// Empty report iff check_nd on the joint scenario is empty.
ConsistencyReport check_nsnd(const BellScenario& bs, const Behavior& b);

// Bob's marginal behavior; throws SignalingError when it depends on the
// Alice setting used to compute it.
Behavior bob_marginal(const BellScenario& bs, const Behavior& b);

// Alice's marginal behavior; throws SignalingError when it depends on the
// Bob context summed over.
Behavior alice_marginal(const BellScenario& bs, const Behavior& b);

// Expectation of the product of outcomes over `subset` (measurement ids,
// any order). The subset must be contained in some context; the result is
// context-independent for nondisturbing behaviors. Empty subset gives 1.
Rat correlator(const Behavior& b, std::vector<int> subset);
Rat correlator(const Behavior& b, const std::vector<std::string>& labels);

// Map from sorted measurement-id subsets to expectations; missing subsets
// mean expectation 0.
using CorrelatorSpec = std::map<std::vector<int>, Rat>;

// Per context of k measurements, probability of an outcome tuple o is
// 2^{-k} (1 + sum over nonempty subsets S of the context of
// <S> * prod_{m in S} o_m). Throws NotABehaviorError (naming the context and
// outcome tuple) if any entry comes out negative; throws IncompatibleSetError
// if a keyed subset lies in no context.
Behavior behavior_from_correlators(ScenarioPtr scenario, const CorrelatorSpec& spec);

// Extracts every correlator the scenario exposes (all nonempty subsets of
// each context, deduplicated) — inverse of behavior_from_correlators.
CorrelatorSpec extract_correlators(const Behavior& b);

// Bob's behavior conditioned on Alice measuring x with outcome a (+1/-1).
// Throws ConditioningOnNullError when p_x(a) = 0.
Behavior conditional_behavior(const BellScenario& bs, const Behavior& b, int x, int a);

// Entrywise convex combination; weights must be nonnegative and sum to 1.
Behavior mix(const std::vector<Behavior>& behaviors, const std::vector<Rat>& weights);

// Uniform distribution in every context.
Behavior uniform_behavior(ScenarioPtr scenario);

} // namespace gbell
