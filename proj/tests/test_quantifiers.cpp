#include <doctest.h>

#include <random>
#include <vector>

#include "gbell/behavior.hpp"
#include "gbell/error.hpp"
#include "gbell/geometry.hpp"
#include "gbell/inequalities.hpp"
#include "gbell/quantifiers.hpp"
#include "gbell/scenario.hpp"

using namespace gbell;

namespace {

Behavior product_behavior(const BellScenario& bs, const std::vector<int>& alice_signs,
                          const Behavior& bob) {
    return behavior_from_table(bs.joint_ptr(), product_point(bs, alice_signs, bob.p));
}

// A two-setting-per-side box saturating the ambient maximum of the
// product-observable functional with T_0 = B_0 B_1, T_1 = B_1 B_2 on the
// 3-cycle: <A_0 T_0> = <A_1 T_0> = <A_0 T_1> = 1, <A_1 T_1> = -1.
Behavior box_cycle3(const BellScenario& bs) {
    CorrelatorSpec spec;
    spec[{0, bs.bob_id(0), bs.bob_id(1)}] = 1;
    spec[{1, bs.bob_id(0), bs.bob_id(1)}] = 1;
    spec[{0, bs.bob_id(1), bs.bob_id(2)}] = 1;
    spec[{1, bs.bob_id(1), bs.bob_id(2)}] = -1;
    return behavior_from_correlators(bs.joint_ptr(), spec);
}

// The same box on the minimal two-setting scenario (Bob contexts are
// singletons, so the general face-enumeration path is exercised).
Behavior box_two_by_two(const BellScenario& bs) {
    CorrelatorSpec spec;
    spec[{0, bs.bob_id(0)}] = 1;
    spec[{0, bs.bob_id(1)}] = 1;
    spec[{1, bs.bob_id(0)}] = 1;
    spec[{1, bs.bob_id(1)}] = -1;
    return behavior_from_correlators(bs.joint_ptr(), spec);
}

} // namespace

TEST_SUITE("quantifiers") {

TEST_CASE("contextual fraction: vertices of the cycle nondisturbing set") {
    auto c5 = share(n_cycle(5));

    std::vector<int> all_plus(5, 1);
    FractionCertificate det = contextual_fraction(assignment_behavior(c5, all_plus));
    CHECK(det.kind == FractionKind::contextual);
    CHECK(det.value == 0);
    CHECK(!det.free_part.has_value());
    CHECK(det.classical_part.size() == 1);
    CHECK(det.classical_part[0].weight == 1);
    CHECK(det.approximation_radius == 0.0);
    CHECK(certificate_reconstructs(det, assignment_behavior(c5, all_plus)));

    NCycleVertexSpec spec{NCycleVertexSpec::Kind::contextual, {1, 1, 1, 1, -1}};
    const Behavior ctx = ncycle_vertex_behavior(c5, spec);
    FractionCertificate full = contextual_fraction(ctx);
    CHECK(full.value == 1);
    REQUIRE(full.free_part.has_value());
    CHECK(full.free_part->p == ctx.p);
    CHECK(certificate_reconstructs(full, ctx));

    FractionCertificate unif = contextual_fraction(uniform_behavior(c5));
    CHECK(unif.value == 0);
    CHECK(certificate_reconstructs(unif, uniform_behavior(c5)));
}

TEST_CASE("contextual fraction: equal pair-mixtures of contextual vertices vanish") {
    // Full pair loops for n = 3, 4; sampled pairs for n = 5, 6 (the
    // verification binary runs the full loops).
    for (int n : {3, 4}) {
        const auto cycle = share(n_cycle(n));
        std::vector<Behavior> ctx;
        for (const auto& s : ncycle_vertex_specs(n))
            if (s.kind == NCycleVertexSpec::Kind::contextual)
                ctx.push_back(ncycle_vertex_behavior(cycle, s));
        CHECK(static_cast<int>(ctx.size()) == 1 << (n - 1));
        for (size_t i = 0; i < ctx.size(); ++i)
            for (size_t j = i + 1; j < ctx.size(); ++j) {
                const Behavior m = mix({ctx[i], ctx[j]}, {Rat(1) / 2, Rat(1) / 2});
                FractionCertificate c = contextual_fraction(m);
                CHECK(c.value == 0);
                CHECK(certificate_reconstructs(c, m));
            }
    }
    std::mt19937_64 rng(7);
    for (int n : {5, 6}) {
        const auto cycle = share(n_cycle(n));
        std::vector<Behavior> ctx;
        for (const auto& s : ncycle_vertex_specs(n))
            if (s.kind == NCycleVertexSpec::Kind::contextual)
                ctx.push_back(ncycle_vertex_behavior(cycle, s));
        std::uniform_int_distribution<size_t> pick(0, ctx.size() - 1);
        for (int trial = 0; trial < 12; ++trial) {
            size_t i = pick(rng), j = pick(rng);
            if (i == j) continue;
            const Behavior m = mix({ctx[i], ctx[j]}, {Rat(1) / 2, Rat(1) / 2});
            CHECK(contextual_fraction(m).value == 0);
        }
    }
    // Unequal weights leave the lemma's scope: this particular (1/3, 2/3)
    // mixture on the 3-cycle is genuinely contextual.
    auto c3 = share(n_cycle(3));
    NCycleVertexSpec a{NCycleVertexSpec::Kind::contextual, {1, 1, -1}};
    NCycleVertexSpec b{NCycleVertexSpec::Kind::contextual, {-1, -1, -1}};
    const Behavior uneven = mix({ncycle_vertex_behavior(c3, a), ncycle_vertex_behavior(c3, b)},
                                {Rat(1) / 3, Rat(2) / 3});
    CHECK(contextual_fraction(uneven).value > 0);
}

TEST_CASE("nonlocal fraction: products are local, the cycle box is maximally nonlocal") {
    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(3));
    auto c3 = bs.bob_ptr();

    // Product of an Alice assignment with a contextual Bob vertex: local by
    // construction, and the generator list contains it verbatim.
    NCycleVertexSpec spec{NCycleVertexSpec::Kind::contextual, {1, -1, 1}};
    const Behavior prod = product_behavior(bs, {1, -1}, ncycle_vertex_behavior(c3, spec));
    FractionCertificate c = nonlocal_fraction(bs, prod);
    CHECK(c.kind == FractionKind::nonlocal);
    CHECK(c.value == 0);
    CHECK(c.classical_part.size() == 1);
    CHECK(c.classical_part[0].weight == 1);
    CHECK(certificate_reconstructs(c, prod));

    // The box reaches 4 on a product-observable functional whose local
    // bound is 2, so no weight at all can sit on local points.
    const Behavior box = box_cycle3(bs);
    const Inequality game = chsh_generalized(bs, {0, 1}, {1, 2});
    CHECK(game.evaluate(box) == 4);
    FractionCertificate full = nonlocal_fraction(bs, box);
    CHECK(full.value == 1);
    CHECK(full.classical_part.empty());
    REQUIRE(full.free_part.has_value());
    CHECK(full.free_part->p == box.p);
    CHECK(certificate_reconstructs(full, box));

    // Half box, half local product: the functional pins the fraction to 1/2.
    std::vector<int> bob_plus(3, 1);
    const Behavior local = product_behavior(bs, {1, 1}, assignment_behavior(c3, bob_plus));
    const Behavior half = mix({box, local}, {Rat(1) / 2, Rat(1) / 2});
    FractionCertificate hc = nonlocal_fraction(bs, half);
    CHECK(hc.value == Rat(1) / 2);
    CHECK(certificate_reconstructs(hc, half));
    REQUIRE(hc.free_part.has_value());
    CHECK(game.evaluate(*hc.free_part) == 4);
}

TEST_CASE("nonlocal fraction: general face path on singleton Bob contexts") {
    const BellScenario bs = BellScenario::make(
        alice_side(2), Scenario::make({"B0", "B1"}, {{0}, {1}}));
    const Behavior box = box_two_by_two(bs);

    FractionCertificate c = nonlocal_fraction(bs, box);
    CHECK(c.value == 1);
    CHECK(c.classical_part.empty());
    CHECK(certificate_reconstructs(c, box));

    std::vector<int> bob_plus(2, 1);
    const Behavior local =
        product_behavior(bs, {1, 1}, assignment_behavior(bs.bob_ptr(), bob_plus));
    CHECK(nonlocal_fraction(bs, local).value == 0);

    const Behavior half = mix({box, local}, {Rat(1) / 2, Rat(1) / 2});
    FractionCertificate hc = nonlocal_fraction(bs, half);
    CHECK(hc.value == Rat(1) / 2);
    CHECK(certificate_reconstructs(hc, half));
}

TEST_CASE("nonclassical fraction: assignments, products, boxes") {
    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(3));
    auto c3 = bs.bob_ptr();

    std::vector<int> all_plus(5, 1);
    const Behavior det = assignment_behavior(bs.joint_ptr(), all_plus);
    FractionCertificate dc = nonclassical_fraction(bs, det);
    CHECK(dc.kind == FractionKind::nonclassical);
    CHECK(dc.value == 0);
    CHECK(certificate_reconstructs(dc, det));

    CHECK(nonclassical_fraction(bs, uniform_behavior(bs.joint_ptr())).value == 0);

    // Product with a contextual Bob vertex: the Bob marginal already has
    // contextual fraction 1, so nothing classical fits underneath.
    NCycleVertexSpec spec{NCycleVertexSpec::Kind::contextual, {1, 1, -1}};
    const Behavior prod = product_behavior(bs, {1, 1}, ncycle_vertex_behavior(c3, spec));
    FractionCertificate pc = nonclassical_fraction(bs, prod);
    CHECK(pc.value == 1);
    CHECK(certificate_reconstructs(pc, prod));

    const Behavior box = box_cycle3(bs);
    CHECK(nonclassical_fraction(bs, box).value == 1);

    // Mixing toward a classical point scales the fraction at most linearly;
    // here the value is pinned exactly.
    std::vector<int> bob_plus(3, 1);
    const Behavior local = product_behavior(bs, {1, 1}, assignment_behavior(c3, bob_plus));
    const Behavior half = mix({box, local}, {Rat(1) / 2, Rat(1) / 2});
    FractionCertificate hc = nonclassical_fraction(bs, half);
    CHECK(hc.value == Rat(1) / 2);
    CHECK(certificate_reconstructs(hc, half));
}

TEST_CASE("trade-off: nonlocal + contextual <= nonclassical on cycle scenarios") {
    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(3));
    auto c3 = bs.bob_ptr();

    TradeoffQuantifiers u = check_quantifier_tradeoff(bs, uniform_behavior(bs.joint_ptr()));
    CHECK(u.holds);
    CHECK(u.nonlocal.value == 0);
    CHECK(u.contextual.value == 0);
    CHECK(u.nonclassical.value == 0);

    // The box: nonlocal 1, uniform Bob marginal (contextual 0),
    // nonclassical 1 — the relation holds with equality.
    TradeoffQuantifiers t = check_quantifier_tradeoff(bs, box_cycle3(bs));
    CHECK(t.holds);
    CHECK(t.nonlocal.value == 1);
    CHECK(t.contextual.value == 0);
    CHECK(t.nonclassical.value == 1);

    // Product with a contextual vertex: contextual 1, nonlocal 0,
    // nonclassical 1 — equality from the other side.
    NCycleVertexSpec spec{NCycleVertexSpec::Kind::contextual, {-1, 1, 1}};
    const Behavior prod = product_behavior(bs, {1, -1}, ncycle_vertex_behavior(c3, spec));
    TradeoffQuantifiers p = check_quantifier_tradeoff(bs, prod);
    CHECK(p.holds);
    CHECK(p.nonlocal.value == 0);
    CHECK(p.contextual.value == 1);
    CHECK(p.nonclassical.value == 1);

    // Seeded random mixtures of the pieces above keep the relation exact.
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<int> num(1, 6);
    std::vector<Behavior> parts{box_cycle3(bs), prod, uniform_behavior(bs.joint_ptr())};
    std::vector<int> bob_plus(3, 1);
    parts.push_back(product_behavior(bs, {1, 1}, assignment_behavior(c3, bob_plus)));
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Rat> w;
        Rat total = 0;
        for (size_t k = 0; k < parts.size(); ++k) {
            w.push_back(Rat(num(rng)));
            total += w.back();
        }
        for (Rat& x : w) x /= total;
        const Behavior m = mix(parts, w);
        TradeoffQuantifiers tq = check_quantifier_tradeoff(bs, m);
        CHECK(tq.holds);
        CHECK(certificate_reconstructs(tq.nonlocal, m));
        CHECK(certificate_reconstructs(tq.nonclassical, m));
        CHECK(tq.nonlocal.value + tq.contextual.value <= tq.nonclassical.value);
    }
}

TEST_CASE("preconditions: disturbing inputs are rejected") {
    auto c3 = share(n_cycle(3));
    // Context {B0,B1} says B1 = +1 surely; context {B1,B2} says B1 = -1.
    std::vector<Rat> table(static_cast<size_t>(c3->dim()), Rat(0));
    table[static_cast<size_t>(c3->index(0, 0))] = 1; // (+1,+1) in {B0,B1}
    table[static_cast<size_t>(c3->index(1, 2))] = 1; // (-1,+1) in {B1,B2}
    for (int t = 0; t < 4; ++t)
        table[static_cast<size_t>(c3->index(2, t))] = Rat(1) / 4;
    const Behavior bad = behavior_from_table(c3, table);
    CHECK_THROWS_AS(contextual_fraction(bad), SignalingError);

    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(3));
    // Alice's marginal flips with Bob's context: signaling.
    std::vector<Rat> jt(static_cast<size_t>(bs.joint().dim()), Rat(0));
    for (int ci = 0; ci < bs.joint().context_count(); ++ci) {
        if (ci == 0) {
            jt[static_cast<size_t>(bs.joint().index(0, 0))] = 1; // a=+1 surely
            continue;
        }
        for (int t = 0; t < bs.joint().tuple_count(ci); ++t)
            jt[static_cast<size_t>(bs.joint().index(ci, t))] = Rat(1) / 8;
    }
    const Behavior sig = behavior_from_table(bs.joint_ptr(), jt);
    CHECK_THROWS_AS(nonlocal_fraction(bs, sig), SignalingError);
    CHECK_THROWS_AS(nonclassical_fraction(bs, sig), SignalingError);

    const Behavior wrong = uniform_behavior(c3);
    CHECK_THROWS_AS(nonlocal_fraction(bs, wrong), ScenarioMismatchError);
}

} // TEST_SUITE
