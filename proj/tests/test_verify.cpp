#include <doctest.h>

#include "gbell/verify.hpp"

#include "gbell/error.hpp"
#include "gbell/inequalities.hpp"
#include "gbell/quantifiers.hpp"

using namespace gbell;
using namespace gbell::verify;

TEST_SUITE_BEGIN("verify");

TEST_CASE("cycle vertex oracle: enumeration equals catalogue") {
    for (int n : {3, 4}) {
        CheckReport r = check_cycle_vertex_oracle(n);
        INFO(format_report(r));
        CHECK(r.pass);
    }
}

TEST_CASE("vertex exclusion on the smallest composed scenario") {
    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(3));
    const VPolytope verts = nsnd_vertices(bs);
    CHECK(verts.count() == 1128);

    const VertexClassification c = classify_vertices(bs, verts);
    CHECK(c.local_count == 48);
    CHECK(c.marginal_contextual_count == 16);
    CHECK(c.conflict_count == 0);

    CheckReport r = check_vertex_exclusion(bs, verts, 8, 2024);
    INFO(format_report(r));
    CHECK(r.pass);

    CheckReport f = check_marginal_factorization(bs, verts);
    INFO(format_report(f));
    CHECK(f.pass);

    // Equivalence property: the absence of a nonlocal-and-marginal-contextual
    // vertex must coincide with the normalized trade-off sum staying <= 1 at
    // every vertex, for every sampled pair of normalized functionals. Both
    // sides are computed independently and compared.
    const HPolytope joint_h = nsnd_hrep(bs);
    const HPolytope bob_h = nd_hrep(bs.bob());
    std::vector<NormalizedInequality> bell;
    for (const auto& [t0, t1] : std::vector<std::pair<std::vector<int>, std::vector<int>>>{
             {{0}, {1}}, {{0}, {1, 2}}, {{0, 1}, {2}}, {{0, 1}, {0, 2}}}) {
        try {
            bell.push_back(normalize(chsh_generalized(bs, t0, t1), joint_h));
        } catch (const DegenerateInequalityError&) {
            // A product pair that no nondisturbing behavior can push past the
            // classical bound has no normalized form; skip it.
        }
    }
    REQUIRE(bell.size() >= 2);
    std::vector<NormalizedInequality> nc;
    for (const std::vector<int>& gamma :
         {std::vector<int>{-1, 1, 1}, std::vector<int>{1, -1, 1}, std::vector<int>{1, 1, -1},
          std::vector<int>{-1, -1, -1}})
        nc.push_back(normalize(ncycle_nc(bs.bob_ptr(), gamma), bob_h));

    bool all_sums_bounded = true;
    for (const std::vector<Rat>& v : verts.vertices) {
        const Behavior b = behavior_from_table(bs.joint_ptr(), v);
        for (const NormalizedInequality& j : bell)
            for (const NormalizedInequality& m : nc)
                if (!tradeoff_sum(bs, b, j, m).satisfied) all_sums_bounded = false;
    }
    CHECK(all_sums_bounded == (c.conflict_count == 0));
    CHECK(all_sums_bounded);
}

TEST_CASE("equal pair-mixtures of contextual vertices stay noncontextual") {
    CheckReport r = check_pair_mixtures(3);
    INFO(format_report(r));
    CHECK(r.pass);
    CHECK(r.lines.size() >= 2);
}

TEST_CASE("odd-sign functionals have unique nondisturbing maximizers") {
    for (int n : {3, 4}) {
        CheckReport r = check_cycle_maximizers(n);
        INFO(format_report(r));
        CHECK(r.pass);
    }
}

TEST_CASE("maximal product-observable violation forces classical marginals") {
    // Face-only maximizer enumeration; the cross-check against a global
    // vertex list runs in the acceptance gate, which owns that enumeration.
    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(4));

    CheckReport pairs = check_max_violation(bs, ViolationFamily::product_pairs);
    INFO(format_report(pairs));
    CHECK(pairs.pass);

    CheckReport mixed = check_max_violation(bs, ViolationFamily::product_mixed);
    INFO(format_report(mixed));
    CHECK(mixed.pass);
}

TEST_CASE("maximal chained violation forces classical marginals") {
    const BellScenario bs = BellScenario::make(alice_side(3), n_cycle(3));
    CheckReport r = check_max_violation(bs, ViolationFamily::chained_walk);
    INFO(format_report(r));
    CHECK(r.pass);
}

TEST_CASE("square-grid counterexample breaks the trade-off") {
    GridCounterexample g = square_grid_counterexample();
    INFO(format_report(g.report));
    CHECK(g.report.pass);
    CHECK(g.scenario.bob().measurement_count() == 9);
    CHECK(g.behavior.p.size() == 192);
}

TEST_CASE("two-functional monogamy on the pentagon scenario") {
    CheckReport r = check_monogamy();
    INFO(format_report(r));
    CHECK(r.pass);
}

TEST_CASE("sampled mixtures satisfy the fraction trade-off") {
    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(3));
    const VPolytope verts = nsnd_vertices(bs);
    CheckReport r = check_fraction_tradeoff_samples(bs, verts, 25, 99);
    INFO(format_report(r));
    CHECK(r.pass);
}

TEST_CASE("quantum pentagon demonstration end to end") {
    CheckReport r = check_quantum_demo();
    INFO(format_report(r));
    CHECK(r.pass);
}

TEST_CASE("report formatting marks failures") {
    CheckReport r{"demo"};
    r.note("context line");
    r.require(true, "good");
    CHECK(r.pass);
    r.require(false, "bad");
    CHECK_FALSE(r.pass);
    const std::string s = format_report(r);
    CHECK(s.find("== demo ==") != std::string::npos);
    CHECK(s.find("ok: good") != std::string::npos);
    CHECK(s.find("FAIL: bad") != std::string::npos);
    CHECK(s.find("RESULT demo FAIL") != std::string::npos);
}

TEST_SUITE_END();
