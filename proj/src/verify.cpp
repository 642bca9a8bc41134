#include "gbell/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "gbell/error.hpp"
#include "gbell/inequalities.hpp"
#include "gbell/quantifiers.hpp"
#include "gbell/quantum.hpp"

namespace gbell::verify {

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

Rat dot(const std::vector<Rat>& obj, const std::vector<Rat>& v) {
    Rat s = 0;
    for (size_t i = 0; i < obj.size(); ++i)
        if (obj[i] != 0) s += obj[i] * v[i];
    return s;
}

Behavior behavior_of(const BellScenario& bs, const std::vector<Rat>& point) {
    return behavior_from_table(bs.joint_ptr(), point);
}

// Alice's outcome distribution for setting x, read off the first Bob context
// (identical across Bob contexts for NSND points).
std::pair<Rat, Rat> alice_marginal_of(const BellScenario& bs, const std::vector<Rat>& v,
                                      int x) {
    const Scenario& joint = bs.joint();
    const int ci = bs.joint_context(x, 0);
    Rat plus = 0, minus = 0;
    for (int t = 0; t < joint.tuple_count(ci); ++t) {
        const Rat& p = v[static_cast<size_t>(joint.index(ci, t))];
        if (joint.outcome(ci, t, 0) == 1)
            plus += p;
        else
            minus += p;
    }
    return {plus, minus};
}

bool alice_deterministic(const BellScenario& bs, const std::vector<Rat>& v) {
    for (int x = 0; x < bs.alice_measurements(); ++x) {
        const auto [plus, minus] = alice_marginal_of(bs, v, x);
        if (plus != 0 && plus != 1) return false;
        (void)minus;
    }
    return true;
}

std::vector<std::vector<int>> odd_sign_vectors(int n) {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) % 2 == 0) continue;
        std::vector<int> gamma(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) gamma[static_cast<size_t>(i)] = (mask >> i) & 1 ? -1 : 1;
        out.push_back(std::move(gamma));
    }
    return out;
}

std::vector<Behavior> contextual_cycle_vertices(const ScenarioPtr& cycle) {
    std::vector<Behavior> out;
    for (const auto& s : ncycle_vertex_specs(cycle->measurement_count()))
        if (s.kind == NCycleVertexSpec::Kind::contextual)
            out.push_back(ncycle_vertex_behavior(cycle, s));
    return out;
}

} // namespace

VPolytope nsnd_vertices(const BellScenario& bs, const EnumerateOptions& opts) {
    return enumerate_vertices(nsnd_hrep(bs), opts);
}

VertexClassification classify_vertices(const BellScenario& bs, const VPolytope& verts) {
    VertexClassification c;
    c.records.reserve(verts.vertices.size());
    for (size_t i = 0; i < verts.vertices.size(); ++i) {
        const auto& v = verts.vertices[i];
        VertexRecord r;
        r.index = static_cast<int>(i);
        r.local = alice_deterministic(bs, v);
        const Behavior marg = bob_marginal(bs, behavior_of(bs, v));
        r.marginal_contextual = contextual_fraction(marg).value > 0;
        c.local_count += r.local ? 1 : 0;
        c.marginal_contextual_count += r.marginal_contextual ? 1 : 0;
        if (!r.local && r.marginal_contextual) ++c.conflict_count;
        c.records.push_back(r);
    }
    return c;
}

CheckReport check_vertex_exclusion(const BellScenario& bs, const VPolytope& verts,
                                   int samples, std::uint64_t seed) {
    CheckReport rep{"vertex-exclusion"};
    const VertexClassification c = classify_vertices(bs, verts);
    rep.note("vertices: " + std::to_string(verts.count()));
    rep.note("local: " + std::to_string(c.local_count));
    rep.note("nonlocal: " + std::to_string(verts.count() - c.local_count));
    rep.note("contextual Bob marginal: " + std::to_string(c.marginal_contextual_count));
    rep.require(c.conflict_count == 0,
                "no vertex is simultaneously nonlocal and marginal-contextual (conflicts: " +
                    std::to_string(c.conflict_count) + ")");

    // Cross-check the deterministic-Alice-marginal locality shortcut against
    // the nonlocal-fraction LP on a seeded sample.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, verts.vertices.size() - 1);
    int checked = 0, agreed = 0;
    for (int s = 0; s < samples && !verts.vertices.empty(); ++s) {
        const size_t i = pick(rng);
        const Behavior b = behavior_of(bs, verts.vertices[i]);
        const bool lp_local = nonlocal_fraction(bs, b).value == 0;
        ++checked;
        if (lp_local == c.records[i].local) ++agreed;
    }
    rep.require(agreed == checked, "locality shortcut matches the LP on " +
                                       std::to_string(agreed) + "/" + std::to_string(checked) +
                                       " sampled vertices");
    return rep;
}

CheckReport check_pair_mixtures(int n) {
    CheckReport rep{"pair-mixtures"};
    const auto cycle = share(n_cycle(n));
    const std::vector<Behavior> ctx = contextual_cycle_vertices(cycle);
    rep.note("cycle n=" + std::to_string(n) + ", contextual vertices: " +
             std::to_string(ctx.size()));
    int pairs = 0, bad = 0;
    for (size_t i = 0; i < ctx.size(); ++i)
        for (size_t j = i + 1; j < ctx.size(); ++j) {
            const Behavior m = mix({ctx[i], ctx[j]}, {Rat(1) / 2, Rat(1) / 2});
            const FractionCertificate c = contextual_fraction(m);
            ++pairs;
            if (c.value != 0 || !certificate_reconstructs(c, m)) {
                ++bad;
                if (bad <= 5)
                    rep.note("pair (" + std::to_string(i) + "," + std::to_string(j) +
                             "): CF = " + rat_to_string(c.value));
            }
        }
    rep.require(bad == 0, "all " + std::to_string(pairs) +
                              " equal pair-mixtures have contextual fraction 0 with exact "
                              "recombination");
    return rep;
}

CheckReport check_cycle_maximizers(int n) {
    CheckReport rep{"cycle-maximizers"};
    const auto cycle = share(n_cycle(n));
    const VPolytope cat = ncycle_nd_vertices(n);
    const HPolytope nd = nd_hrep(*cycle);
    rep.note("cycle n=" + std::to_string(n) + ", catalogue: " + std::to_string(cat.count()));
    bool all_unique = true, all_match = true, all_lp = true;
    for (const auto& gamma : odd_sign_vectors(n)) {
        const Inequality iq = ncycle_nc(cycle, gamma);
        const auto obj = iq.compile();
        Rat best = dot(obj, cat.vertices[0]);
        size_t attain = 0, arg = 0;
        for (size_t i = 0; i < cat.vertices.size(); ++i) {
            const Rat v = dot(obj, cat.vertices[i]);
            if (v > best) best = v;
        }
        for (size_t i = 0; i < cat.vertices.size(); ++i)
            if (dot(obj, cat.vertices[i]) == best) {
                ++attain;
                arg = i;
            }
        if (best != n || attain != 1) all_unique = false;
        // The unique maximizer must be the matching contextual vertex.
        const Behavior expect = ncycle_vertex_behavior(
            cycle, NCycleVertexSpec{NCycleVertexSpec::Kind::contextual, gamma});
        if (cat.vertices[arg] != expect.p) all_match = false;
        if (maximize_linear(nd, obj).value != best) all_lp = false;
    }
    rep.require(all_unique, "every odd-sign functional attains its maximum " +
                                std::to_string(n) + " at exactly one vertex");
    rep.require(all_match, "each unique maximizer is the sign-matching contextual vertex");
    rep.require(all_lp, "LP maxima agree with catalogue sweeps");
    return rep;
}

CheckReport check_marginal_factorization(const BellScenario& bs, const VPolytope& verts) {
    CheckReport rep{"marginal-factorization"};
    const Scenario& joint = bs.joint();
    const Scenario& bob = bs.bob();
    const std::vector<Behavior> ctx = contextual_cycle_vertices(bs.bob_ptr());

    int qualifying = 0, bad = 0;
    for (const auto& v : verts.vertices) {
        const Behavior b = behavior_of(bs, v);
        const Behavior marg = bob_marginal(bs, b);
        bool is_ctx_vertex = false;
        for (const Behavior& cv : ctx)
            if (marg.p == cv.p) {
                is_ctx_vertex = true;
                break;
            }
        if (!is_ctx_vertex) continue;
        ++qualifying;

        // Exact product check: p(a, b | x, C) = p_x(a) * p_C(b).
        bool product = true;
        for (int x = 0; x < bs.alice_measurements() && product; ++x) {
            const auto [plus, minus] = alice_marginal_of(bs, v, x);
            for (int bc = 0; bc < bob.context_count() && product; ++bc) {
                const int ci = bs.joint_context(x, bc);
                const int kb = bob.context_size(bc);
                for (int t = 0; t < joint.tuple_count(ci); ++t) {
                    const Rat pa = joint.outcome(ci, t, 0) == 1 ? plus : minus;
                    const Rat pb = marg.at(bc, t & ((1 << kb) - 1));
                    if (v[static_cast<size_t>(joint.index(ci, t))] != pa * pb) {
                        product = false;
                        break;
                    }
                }
            }
        }
        if (!product) ++bad;
    }
    rep.note("vertices with a contextual-vertex Bob marginal: " + std::to_string(qualifying));
    rep.require(bad == 0, "all qualifying vertices factorize exactly as p(a)*p(b)");
    return rep;
}

CheckReport check_max_violation(const BellScenario& bs, ViolationFamily family,
                                const VPolytope* global, const EnumerateOptions& opts) {
    CheckReport rep{"max-violation"};
    const int n = bs.bob().measurement_count();

    Inequality iq = [&] {
        switch (family) {
        case ViolationFamily::product_pairs: return chsh_product_pairs(bs);
        case ViolationFamily::product_mixed: return chsh_product_mixed(bs);
        default: return chained(bs);
        }
    }();
    const bool is_chained = family == ViolationFamily::chained_walk;
    const Rat ambient_expected = is_chained ? Rat(2 * n) : Rat(4);
    const Rat local_expected = is_chained ? Rat(2 * n - 2) : Rat(2);
    rep.note("functional: " + iq.label + " on n=" + std::to_string(n));

    const HPolytope h = nsnd_hrep(bs);
    const auto obj = iq.compile();
    const Rat ambient = maximize_linear(h, obj).value;
    rep.require(ambient == ambient_expected,
                "NSND maximum = " + rat_to_string(ambient) + " (expected " +
                    rat_to_string(ambient_expected) + ")");

    const VPolytope locals = local_vertices(bs, ncycle_nd_vertices(n));
    Rat local_max = dot(obj, locals.vertices[0]);
    for (const auto& v : locals.vertices) local_max = std::max(local_max, dot(obj, v));
    rep.require(local_max == local_expected,
                "local maximum = " + rat_to_string(local_max) + " (expected " +
                    rat_to_string(local_expected) + ")");

    // All maximizers: vertices of the optimum face (a face of NSND has only
    // genuine NSND vertices, so this enumeration is complete).
    HPolytope face = h;
    face.eq_coeffs.push_back(obj);
    face.eq_values.push_back(ambient);
    VPolytope maximizers = enumerate_vertices(face, opts);
    rep.note("maximizing vertices: " + std::to_string(maximizers.count()));
    rep.require(maximizers.count() > 0, "optimum face has at least one vertex");

    if (global != nullptr) {
        VPolytope filtered;
        filtered.dim = global->dim;
        for (const auto& v : global->vertices)
            if (dot(obj, v) == ambient) filtered.vertices.push_back(v);
        filtered.sort_canonical();
        VPolytope sorted = maximizers;
        sorted.sort_canonical();
        rep.require(filtered.vertices == sorted.vertices,
                    "face enumeration equals the value-equality filter of the global list (" +
                        std::to_string(filtered.count()) + " points)");
    }

    const auto gammas = odd_sign_vectors(n);
    std::vector<std::vector<Rat>> gamma_objs;
    std::vector<Inequality> bob_funcs;
    for (const auto& g : gammas) bob_funcs.push_back(ncycle_nc(bs.bob_ptr(), g));

    // The product_pairs family forces four expectations to vanish at any
    // maximizer: both Alice settings and both product observables.
    std::vector<std::vector<int>> forced;
    if (family == ViolationFamily::product_pairs) {
        forced.push_back({0});
        forced.push_back({1});
        forced.push_back({bs.bob_id(0), bs.bob_id(1)});
        forced.push_back({bs.bob_id(2), bs.bob_id(3)});
    }

    int bad_marginal = 0, bad_forced = 0, bad_value = 0;
    for (const auto& v : maximizers.vertices) {
        if (dot(obj, v) != ambient) ++bad_value;
        const Behavior b = behavior_of(bs, v);
        const Behavior marg = bob_marginal(bs, b);
        bool nc = contextual_fraction(marg).value == 0;
        for (const Inequality& f : bob_funcs)
            if (f.evaluate(marg) > f.bound) nc = false;
        if (!nc) ++bad_marginal;
        for (const auto& ids : forced)
            if (correlator(b, ids) != 0) ++bad_forced;
    }
    rep.require(bad_value == 0, "every face vertex attains the maximum exactly");
    rep.require(bad_marginal == 0,
                "every maximizer has a noncontextual Bob marginal satisfying all " +
                    std::to_string(bob_funcs.size()) + " odd-sign functionals");
    if (!forced.empty())
        rep.require(bad_forced == 0,
                    "every maximizer has <A_0> = <A_1> = <T_0> = <T_1> = 0");
    return rep;
}

GridCounterexample square_grid_counterexample() {
    const BellScenario bs = BellScenario::make(alice_side(2), peres_mermin());
    const auto id = [&](int m) { return bs.bob_id(m); }; // grid cell -> joint id

    // Correlators of the joint behavior: Bob's six full-context products
    // (third row negative), the four pair terms of the two-setting
    // functional at its algebraic maximum, and the companion triples that
    // keep every context distribution a product form (hence nonnegative).
    CorrelatorSpec spec;
    for (int c = 0; c < 3; ++c) spec[{id(c), id(3 + c), id(6 + c)}] = 1; // columns
    spec[{id(0), id(1), id(2)}] = 1;                                     // row 1
    spec[{id(3), id(4), id(5)}] = 1;                                     // row 2
    spec[{id(6), id(7), id(8)}] = -1;                                    // row 3

    spec[{0, id(0)}] = 1;  // <A_0 B_11>
    spec[{0, id(4)}] = 1;  // <A_0 B_22>
    spec[{1, id(0)}] = 1;  // <A_1 B_11>
    spec[{1, id(4)}] = -1; // <A_1 B_22>

    spec[{0, id(3), id(6)}] = 1;  // <A_0 B_21 B_31>
    spec[{0, id(1), id(7)}] = 1;  // <A_0 B_12 B_32>
    spec[{0, id(1), id(2)}] = 1;  // <A_0 B_12 B_13>
    spec[{0, id(3), id(5)}] = 1;  // <A_0 B_21 B_23>
    spec[{1, id(3), id(6)}] = 1;  // <A_1 B_21 B_31>
    spec[{1, id(1), id(2)}] = 1;  // <A_1 B_12 B_13>
    spec[{1, id(1), id(7)}] = -1; // <A_1 B_12 B_32>
    spec[{1, id(3), id(5)}] = -1; // <A_1 B_21 B_23>

    GridCounterexample out{bs, behavior_from_correlators(bs.joint_ptr(), spec),
                           CheckReport{"grid-counterexample"}};
    CheckReport& rep = out.report;
    const Behavior& b = out.behavior;

    rep.require(check_nsnd(bs, b).ok(), "behavior satisfies every NSND equality exactly");

    const Inequality grid = lift_bob(bs, pm_noncontextuality(bs.bob_ptr()));
    const Rat grid_value = grid.evaluate(b);
    rep.require(grid_value == 6,
                "grid functional value = " + rat_to_string(grid_value) + " (bound 4)");

    const Inequality two = chsh_usual(bs, 0, 4); // B_11 with B_22: incompatible
    const Rat two_value = two.evaluate(b);
    rep.require(two_value == 4,
                "two-setting functional value = " + rat_to_string(two_value) + " (bound 2)");

    const TradeoffQuantifiers t = check_quantifier_tradeoff(bs, b);
    rep.require(t.nonlocal.value == 1, "nonlocal fraction = " + rat_to_string(t.nonlocal.value));
    rep.require(t.contextual.value == 1,
                "contextual fraction of the Bob marginal = " + rat_to_string(t.contextual.value));
    rep.require(t.nonclassical.value == 1,
                "nonclassical fraction = " + rat_to_string(t.nonclassical.value));
    rep.require(!t.holds, "fraction trade-off fails: 1 + 1 > 1");
    rep.require(certificate_reconstructs(t.nonlocal, b) &&
                    certificate_reconstructs(t.nonclassical, b),
                "certificates recombine exactly");

    // Same conclusion through normalized functionals: both rescaled values
    // sit at 1, so their sum is 2 > 1.
    const NormalizedInequality njoint = normalize(two, nsnd_hrep(bs));
    const NormalizedInequality nbob = normalize(pm_noncontextuality(bs.bob_ptr()),
                                                nd_hrep(bs.bob()));
    rep.note("ambient maxima: functional " + rat_to_string(njoint.ambient_max) +
             ", grid " + rat_to_string(nbob.ambient_max));
    const TradeoffReport tr = tradeoff_sum(bs, b, njoint, nbob);
    rep.require(tr.sum == 2 && !tr.satisfied,
                "normalized sum = " + rat_to_string(tr.sum) + " > 1");
    return out;
}

CheckReport check_monogamy() {
    CheckReport rep{"monogamy"};
    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(5));
    const HPolytope h = nsnd_hrep(bs);

    const Inequality two = chsh_usual(bs, 0, 2);
    const Inequality pent = lift_bob(bs, kcbs(bs.bob_ptr()));
    const Rat a = maximize_linear(h, two.compile()).value;
    const Rat b = maximize_linear(h, pent.compile()).value;
    const Rat sum = maximize_linear(h, add(two, pent).compile()).value;
    rep.require(a == 4, "two-setting functional alone: NSND maximum " + rat_to_string(a));
    rep.require(b == 5, "pentagon functional alone: NSND maximum " + rat_to_string(b));
    rep.require(sum == 5, "joint maximum of the sum: " + rat_to_string(sum) +
                              " (strictly below 4 + 5)");
    return rep;
}

CheckReport check_fraction_tradeoff_samples(const BellScenario& bs, const VPolytope& verts,
                                            int samples, std::uint64_t seed) {
    CheckReport rep{"fraction-tradeoff-samples"};
    rep.note("samples: " + std::to_string(samples) + ", seed: " + std::to_string(seed) +
             ", vertex pool: " + std::to_string(verts.count()));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, verts.vertices.size() - 1);
    std::uniform_int_distribution<int> howmany(2, 5);
    std::uniform_int_distribution<int> coin(1, 9);

    int bad = 0, tight = 0;
    for (int s = 0; s < samples; ++s) {
        const int k = howmany(rng);
        std::vector<Rat> point(verts.vertices[0].size(), Rat(0));
        Rat total = 0;
        std::vector<Rat> ws;
        std::vector<size_t> idx;
        for (int i = 0; i < k; ++i) {
            idx.push_back(pick(rng));
            ws.push_back(Rat(coin(rng)));
            total += ws.back();
        }
        for (int i = 0; i < k; ++i) {
            const Rat w = ws[static_cast<size_t>(i)] / total;
            const auto& v = verts.vertices[idx[static_cast<size_t>(i)]];
            for (size_t c = 0; c < point.size(); ++c) point[c] += w * v[c];
        }
        const Behavior b = behavior_of(bs, point);
        const TradeoffQuantifiers t = check_quantifier_tradeoff(bs, b);
        const bool ok = t.holds && certificate_reconstructs(t.nonlocal, b) &&
                        certificate_reconstructs(t.nonclassical, b) &&
                        certificate_reconstructs(t.contextual, bob_marginal(bs, b));
        if (t.nonlocal.value + t.contextual.value == t.nonclassical.value) ++tight;
        if (!ok) {
            ++bad;
            if (bad <= 5)
                rep.note("sample " + std::to_string(s) +
                         ": NLF=" + rat_to_string(t.nonlocal.value) +
                         " CF=" + rat_to_string(t.contextual.value) +
                         " NClF=" + rat_to_string(t.nonclassical.value));
        }
    }
    rep.note("samples with NLF + CF = NClF exactly: " + std::to_string(tight));
    rep.require(bad == 0,
                "NLF + CF <= NClF holds exactly and all certificates recombine on every sample");
    return rep;
}

CheckReport check_cycle_vertex_oracle(int n) {
    CheckReport rep{"cycle-vertex-oracle"};
    const auto cycle = share(n_cycle(n));
    const HPolytope nd = nd_hrep(*cycle);
    VPolytope dd = enumerate_vertices(nd);
    VPolytope cat = ncycle_nd_vertices(n);
    dd.sort_canonical();
    cat.sort_canonical();
    const int expected = (1 << n) + (1 << (n - 1));
    rep.note("cycle n=" + std::to_string(n) + ": enumerated " + std::to_string(dd.count()) +
             ", catalogue " + std::to_string(cat.count()));
    rep.require(dd.count() == expected,
                "vertex count is 2^n + 2^(n-1) = " + std::to_string(expected));
    rep.require(dd.vertices == cat.vertices, "double description equals the analytic catalogue");

    bool lp_ok = true;
    for (const auto& gamma : odd_sign_vectors(n)) {
        const auto obj = ncycle_nc(cycle, gamma).compile();
        Rat sweep = dot(obj, cat.vertices[0]);
        for (const auto& v : cat.vertices) sweep = std::max(sweep, dot(obj, v));
        if (maximize_linear(nd, obj).value != sweep || sweep != n) lp_ok = false;
    }
    rep.require(lp_ok, "LP maxima equal sweep maxima (= n) for all odd-sign functionals");
    return rep;
}

CheckReport check_quantum_demo() {
    CheckReport rep{"quantum-demo"};
    const quantum::PentagonSetup s = quantum::pentagon_setup();
    const quantum::FloatBehavior fb =
        quantum::behavior_from_state(s.scenario, s.state, {s.alice}, s.bob);

    const double target = 5.0 - 4.0 * std::sqrt(5.0);
    const double resid = quantum::nsnd_residual(s.scenario, fb);
    rep.require(resid < 1e-12, "NSND residual " + fmt(resid) + " < 1e-12");

    const double cond = quantum::conditional_edge_sum(fb, 1);
    rep.require(std::abs(cond - target) < 1e-9,
                "conditional (a=+1) edge sum " + fmt(cond) + " = 5 - 4*sqrt(5) within 1e-9");
    const double cls = quantum::classicality_value(fb);
    rep.require(std::abs(cls - target) < 1e-9,
                "classicality value " + fmt(cls) + " = 5 - 4*sqrt(5) within 1e-9");

    const quantum::RationalizedBehavior r = quantum::rationalize_behavior(s.scenario, fb);
    rep.note("rationalization radius: " + fmt(r.approximation_radius));
    rep.require(check_nsnd(s.scenario, r.behavior).ok(),
                "rationalized behavior satisfies NSND exactly");

    FractionCertificate nlf = nonlocal_fraction(s.scenario, r.behavior);
    rep.require(nlf.value == 0, "nonlocal fraction = " + rat_to_string(nlf.value));
    FractionCertificate cf = contextual_fraction(bob_marginal(s.scenario, r.behavior));
    rep.require(cf.value == 0,
                "contextual fraction of the Bob marginal = " + rat_to_string(cf.value));
    FractionCertificate nclf = nonclassical_fraction(s.scenario, r.behavior);
    rep.require(nclf.value > 0, "nonclassical fraction = " + rat_to_string(nclf.value) + " > 0");
    rep.require(certificate_reconstructs(nlf, r.behavior) &&
                    certificate_reconstructs(nclf, r.behavior),
                "certificates recombine exactly");
    return rep;
}

std::string format_report(const CheckReport& r) {
    std::ostringstream os;
    os << "== " << r.name << " ==\n";
    for (const auto& l : r.lines) os << "  " << l << "\n";
    os << "RESULT " << r.name << " " << (r.pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

} // namespace gbell::verify
