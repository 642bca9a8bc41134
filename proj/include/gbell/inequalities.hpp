#pragma once

#include <string>
#include <vector>

#include "gbell/behavior.hpp"
#include "gbell/geometry.hpp"
#include "gbell/scenario.hpp"

namespace gbell {

// A linear functional on behaviors, written as coefficient-weighted
// correlator terms, together with the bound it satisfies on the relevant
// classical set: value(b) <= bound. Functionals that are naturally stated
// as ">= -bound" are stored negated so that every internal computation uses
// the <=-form; display_flipped records the original orientation for output.
struct Inequality {
    ScenarioPtr scenario;
    CorrelatorSpec terms;
    Rat bound;
    std::string label;
    bool display_flipped = false;

    // Functional value via correlator expansion. Throws ScenarioMismatchError
    // when b lives on a different scenario, IncompatibleSetError when a term
    // is not contained in any context.
    Rat evaluate(const Behavior& b) const;

    // Coordinate-basis coefficients (one entry per behavior coordinate; each
    // term is charged to the first context containing it).
    std::vector<Rat> compile() const;
};

// Affine rescaling S' = (S - bound) / (ambient_max - bound), so that S' <= 0
// on the classical set and max_{ambient} S' = 1.
struct NormalizedInequality {
    Inequality base;
    Rat ambient_max;

    Rat evaluate(const Behavior& b) const;
    Rat rescale(const Rat& raw_value) const;
};

// Computes the ambient maximum of i by exact LP over h (the ND or NSND
// polytope of i's scenario). Throws DegenerateInequalityError when the
// maximum does not exceed the classical bound (no violation is possible, so
// the rescaling is undefined or trivial).
NormalizedInequality normalize(const Inequality& i, const HPolytope& h);

// Validating constructor for arbitrary term lists (used by file readers).
Inequality make_inequality(ScenarioPtr scenario, CorrelatorSpec terms, Rat bound,
                           std::string label, bool display_flipped = false);

// Term-wise sum of two functionals on the same scenario; the bound is the
// sum of bounds (valid, though possibly not tight).
Inequality add(const Inequality& a, const Inequality& b);

// sum_j gamma_j <B_j B_{j+1}> <= n-2 on the n-cycle, for sign vectors gamma
// with an odd number of -1 entries (even counts are not facets and are
// rejected with ConstructionError).
Inequality ncycle_nc(ScenarioPtr cycle, const std::vector<int>& gamma);

// The pentagon inequality: ncycle_nc with gamma = (+,+,+,+,-), bound 3.
Inequality kcbs(ScenarioPtr cycle5);

// <A_0 B_i> + <A_0 B_j> + <A_1 B_i> - <A_1 B_j> <= 2 for an *incompatible*
// pair (B_i, B_j) of Bob measurements. A compatible pair is rejected with
// InvalidPairError: the functional would factor through one context and its
// bound would not separate anything.
Inequality chsh_usual(const BellScenario& bs, int i, int j);

// CHSH with Bob's dichotomic observables replaced by products over
// compatible sets t0 != t1 (each of size 1 or 2, each inside one Bob
// context): <A_0 T_0> + <A_0 T_1> + <A_1 T_0> - <A_1 T_1> <= 2.
Inequality chsh_generalized(const BellScenario& bs, const std::vector<int>& t0,
                            const std::vector<int>& t1);

// The two named product variants on alice_side(2) x n_cycle(n >= 4):
// T_0 = B_0 B_1, T_1 = B_2 B_3  and  T_0 = B_0, T_1 = B_2 B_3.
Inequality chsh_product_pairs(const BellScenario& bs);
Inequality chsh_product_mixed(const BellScenario& bs);

// Chained functional on alice_side(n) x n_cycle(n) with T_j = B_j B_{j+1}:
// sum_j <A_j T_j> + sum_{j<n-1} <A_{j+1} T_j> - <A_0 T_{n-1}> <= 2n-2.
Inequality chained(const BellScenario& bs);

// Grid functional on the 3x3 square: the six full-context products, the
// third column entering negatively; bound 4.
Inequality pm_noncontextuality(ScenarioPtr pm);

// 3<A_0> + sum_j (<B_j B_{j+1}> + <A_0 B_j B_{j+1}>) >= -3 on
// alice_side(1) x n_cycle(5); stored negated (<= 3, display flipped).
Inequality classicality_pentagon(const BellScenario& bs);

// A Bob-scenario functional lifted to the joint scenario of bs (measurement
// m becomes bs.bob_id(m)); bound and label carry over.
Inequality lift_bob(const BellScenario& bs, const Inequality& bob_ineq);

struct TradeoffReport {
    Rat joint_term;    // normalized joint functional at b
    Rat marginal_term; // normalized Bob functional at bob_marginal(b)
    Rat sum;
    bool satisfied;    // sum <= 1
};

// Evaluates a normalized joint inequality on b and a normalized Bob
// inequality on b's Bob marginal, and reports whether the two rescaled
// values sum to at most 1.
TradeoffReport tradeoff_sum(const BellScenario& bs, const Behavior& b,
                            const NormalizedInequality& joint_ineq,
                            const NormalizedInequality& bob_ineq);

} // namespace gbell
