#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gbell/behavior.hpp"
#include "gbell/geometry.hpp"
#include "gbell/scenario.hpp"

namespace gbell::verify {

// One named end-to-end check. `lines` holds the detail records (counts,
// optimum values, certificate summaries) needed to re-verify the claim
// independently; `pass` aggregates every assertion made along the way.
struct CheckReport {
    std::string name;
    bool pass = true;
    std::vector<std::string> lines;

    void note(std::string s) { lines.push_back(std::move(s)); }
    void require(bool ok, std::string what) {
        if (!ok) pass = false;
        lines.push_back((ok ? "ok: " : "FAIL: ") + std::move(what));
    }
};

struct VertexRecord {
    int index;              // position in the enumerated vertex list
    bool local;             // member of the generalized-local polytope
    bool marginal_contextual; // CF(bob marginal) > 0
};

struct VertexClassification {
    std::vector<VertexRecord> records;
    int local_count = 0;
    int marginal_contextual_count = 0;
    int conflict_count = 0; // nonlocal AND marginal-contextual
};

// Enumerated extreme points of the NSND polytope, canonically sorted.
VPolytope nsnd_vertices(const BellScenario& bs, const EnumerateOptions& opts = {});

// Tags every vertex with the two predicates. Locality is decided by the
// deterministic-Alice-marginal shortcut (an NSND extreme point is local iff
// every Alice setting has a deterministic marginal).
VertexClassification classify_vertices(const BellScenario& bs, const VPolytope& verts);

// Classifies all vertices, cross-checks the locality shortcut against the
// nonlocal-fraction LP on `samples` seeded vertices, and reports whether no
// vertex is simultaneously nonlocal and marginal-contextual.
CheckReport check_vertex_exclusion(const BellScenario& bs, const VPolytope& verts,
                                   int samples = 16, std::uint64_t seed = 1);

// Equal mixtures of every unordered pair of contextual cycle vertices have
// contextual fraction exactly 0.
CheckReport check_pair_mixtures(int n);

// Each odd-sign cycle functional attains its nondisturbing maximum n at
// exactly one vertex of the catalogue; LP maxima agree with vertex sweeps.
CheckReport check_cycle_maximizers(int n);

// Every NSND vertex whose Bob marginal equals a contextual cycle vertex
// factorizes exactly as (Alice marginal) x (Bob marginal).
CheckReport check_marginal_factorization(const BellScenario& bs, const VPolytope& verts);

enum class ViolationFamily {
    product_pairs, // T_0 = B_0 B_1, T_1 = B_2 B_3
    product_mixed, // T_0 = B_0,     T_1 = B_2 B_3
    chained_walk,  // chained functional on alice_side(n) x n_cycle(n)
};

// LP-maximum over NSND (4, or 2n for the chained walk), local sweep maximum
// (2, or 2n-2), and an exhaustive maximizer analysis: every vertex of the
// optimum face has a noncontextual Bob marginal satisfying all odd-sign
// cycle functionals; the product_pairs family additionally forces
// <A_0> = <A_1> = <T_0> = <T_1> = 0. Face vertices are enumerated directly
// (faces of NSND have only genuine NSND vertices) and cross-checked against
// `global` by value equality when a full vertex list is supplied.
CheckReport check_max_violation(const BellScenario& bs, ViolationFamily family,
                                const VPolytope* global = nullptr,
                                const EnumerateOptions& opts = {});

// The square-grid joint behavior that maximally violates the grid functional
// (value 6 > 4) and a two-setting functional (value 4 > 2) at once, with
// NLF = CF = NClF = 1 — the witness that the fraction trade-off can fail.
struct GridCounterexample {
    BellScenario scenario;
    Behavior behavior;
    CheckReport report;
};
GridCounterexample square_grid_counterexample();

// Exact LP maxima over NSND of alice_side(2) x n_cycle(5): the two-setting
// functional alone reaches 4, the pentagon functional alone 5, their sum
// only 5.
CheckReport check_monogamy();

// Seeded rational mixtures of NSND vertices: NLF + CF <= NClF holds exactly
// on every sample and every certificate recombines to its input.
CheckReport check_fraction_tradeoff_samples(const BellScenario& bs, const VPolytope& verts,
                                            int samples, std::uint64_t seed);

// Double-description output equals the analytic cycle vertex catalogue as a
// set (2^n + 2^{n-1} points), and LP maxima match sweeps for every odd-sign
// functional.
CheckReport check_cycle_vertex_oracle(int n);

// Quantum demonstration end to end: NSND residual below 1e-12, conditional
// edge sum and classicality value at 5 - 4*sqrt(5) within 1e-9, and after
// rationalization NLF = 0, CF(bob marginal) = 0, NClF > 0 exactly.
CheckReport check_quantum_demo();

// Renders a report as text: header, detail lines, one PASS/FAIL summary.
std::string format_report(const CheckReport& r);

} // namespace gbell::verify
