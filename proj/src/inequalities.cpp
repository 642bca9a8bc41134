#include "gbell/inequalities.hpp"

#include <algorithm>
#include <sstream>

#include "gbell/error.hpp"

namespace gbell {

namespace {

std::string subset_labels(const Scenario& s, const std::vector<int>& ids) {
    std::string out;
    for (size_t i = 0; i < ids.size(); ++i) {
        if (i) out += " ";
        out += s.label(ids[static_cast<size_t>(i)]);
    }
    return out;
}

void require_alice_settings(const BellScenario& bs, int needed) {
    if (bs.alice_measurements() < needed)
        throw InvalidScenarioError("functional needs " + std::to_string(needed) +
                                   " Alice settings, scenario has " +
                                   std::to_string(bs.alice_measurements()));
}

std::vector<int> checked_bob_set(const BellScenario& bs, const std::vector<int>& t) {
    if (t.empty() || t.size() > 2)
        throw IncompatibleSetError("product observable needs 1 or 2 Bob measurements");
    std::vector<int> sorted = t;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw IncompatibleSetError("repeated Bob measurement in product observable");
    for (int m : sorted)
        if (m < 0 || m >= bs.bob().measurement_count())
            throw IncompatibleSetError("unknown Bob measurement id " + std::to_string(m));
    if (bs.bob().find_context_containing(sorted) < 0)
        throw IncompatibleSetError("Bob measurements {" + subset_labels(bs.bob(), sorted) +
                                   "} are not compatible");
    return sorted;
}

} // namespace

Rat Inequality::evaluate(const Behavior& b) const {
    if (!(*b.scenario == *scenario))
        throw ScenarioMismatchError("behavior and inequality live on different scenarios");
    Rat v = 0;
    for (const auto& [ids, coeff] : terms) v += coeff * correlator(b, ids);
    return v;
}

std::vector<Rat> Inequality::compile() const {
    std::vector<Rat> obj(static_cast<size_t>(scenario->dim()), Rat(0));
    for (const auto& [ids, coeff] : terms) {
        const int ci = scenario->find_context_containing(ids);
        if (ci < 0)
            throw IncompatibleSetError("term {" + subset_labels(*scenario, ids) +
                                       "} is not contained in any context");
        const auto& ctx = scenario->context(ci);
        std::vector<int> pos;
        pos.reserve(ids.size());
        for (int id : ids)
            pos.push_back(
                static_cast<int>(std::lower_bound(ctx.begin(), ctx.end(), id) - ctx.begin()));
        for (int t = 0; t < scenario->tuple_count(ci); ++t) {
            int prod = 1;
            for (int p : pos) prod *= scenario->outcome(ci, t, p);
            obj[static_cast<size_t>(scenario->index(ci, t))] += coeff * prod;
        }
    }
    return obj;
}

Rat NormalizedInequality::rescale(const Rat& raw_value) const {
    return (raw_value - base.bound) / (ambient_max - base.bound);
}

Rat NormalizedInequality::evaluate(const Behavior& b) const { return rescale(base.evaluate(b)); }

NormalizedInequality normalize(const Inequality& i, const HPolytope& h) {
    if (h.dim != i.scenario->dim())
        throw ScenarioMismatchError("polytope dimension does not match the inequality's scenario");
    const Rat ambient_max = maximize_linear(h, i.compile()).value;
    if (ambient_max <= i.bound)
        throw DegenerateInequalityError("functional '" + i.label +
                                        "' cannot be violated over the given polytope (max " +
                                        rat_to_string(ambient_max) + " <= bound " +
                                        rat_to_string(i.bound) + ")");
    return NormalizedInequality{i, ambient_max};
}

Inequality make_inequality(ScenarioPtr scenario, CorrelatorSpec terms, Rat bound,
                           std::string label, bool display_flipped) {
    for (const auto& [ids, coeff] : terms) {
        (void)coeff;
        if (ids.empty()) throw IncompatibleSetError("empty correlator term");
        if (!std::is_sorted(ids.begin(), ids.end()) ||
            std::adjacent_find(ids.begin(), ids.end()) != ids.end())
            throw IncompatibleSetError("correlator term ids must be sorted and distinct");
        for (int id : ids)
            if (id < 0 || id >= scenario->measurement_count())
                throw IncompatibleSetError("unknown measurement id " + std::to_string(id));
        if (scenario->find_context_containing(ids) < 0)
            throw IncompatibleSetError("term {" + subset_labels(*scenario, ids) +
                                       "} is not contained in any context");
    }
    return Inequality{std::move(scenario), std::move(terms), std::move(bound), std::move(label),
                      display_flipped};
}

Inequality add(const Inequality& a, const Inequality& b) {
    if (!(*a.scenario == *b.scenario))
        throw ScenarioMismatchError("cannot add functionals on different scenarios");
    CorrelatorSpec terms = a.terms;
    for (const auto& [ids, coeff] : b.terms) {
        const Rat merged = terms[ids] + coeff;
        if (merged == 0)
            terms.erase(ids);
        else
            terms[ids] = merged;
    }
    return Inequality{a.scenario, std::move(terms), a.bound + b.bound,
                      a.label + "+" + b.label, false};
}

Inequality ncycle_nc(ScenarioPtr cycle, const std::vector<int>& gamma) {
    if (!is_n_cycle(*cycle)) throw InvalidScenarioError("scenario is not an n-cycle");
    const int n = cycle->measurement_count();
    if (static_cast<int>(gamma.size()) != n)
        throw ScenarioMismatchError("need one sign per edge of the cycle");
    int negatives = 0;
    for (int g : gamma) {
        if (g != 1 && g != -1) throw ConstructionError("edge signs must be +1 or -1");
        if (g == -1) ++negatives;
    }
    if (negatives % 2 == 0)
        throw ConstructionError(
            "an even number of -1 edge signs does not give a facet of the noncontextual set");
    CorrelatorSpec terms;
    std::string signs;
    for (int i = 0; i < n; ++i) {
        std::vector<int> edge{i, (i + 1) % n};
        std::sort(edge.begin(), edge.end());
        terms[edge] = gamma[static_cast<size_t>(i)];
        signs += gamma[static_cast<size_t>(i)] == 1 ? '+' : '-';
    }
    return Inequality{std::move(cycle), std::move(terms), Rat(n - 2), "cycle-nc(" + signs + ")",
                      false};
}

Inequality kcbs(ScenarioPtr cycle5) {
    if (cycle5->measurement_count() != 5 || !is_n_cycle(*cycle5))
        throw InvalidScenarioError("the pentagon functional needs the 5-cycle");
    Inequality i = ncycle_nc(std::move(cycle5), {1, 1, 1, 1, -1});
    i.label = "kcbs";
    return i;
}

Inequality chsh_usual(const BellScenario& bs, int i, int j) {
    require_alice_settings(bs, 2);
    const Scenario& bob = bs.bob();
    if (i < 0 || i >= bob.measurement_count() || j < 0 || j >= bob.measurement_count() || i == j)
        throw InvalidPairError("need two distinct Bob measurement ids");
    std::vector<int> pair{i, j};
    std::sort(pair.begin(), pair.end());
    if (bob.find_context_containing(pair) >= 0)
        throw InvalidPairError("Bob measurements " + bob.label(i) + ", " + bob.label(j) +
                               " are compatible; the functional needs an incompatible pair");
    CorrelatorSpec terms;
    terms[{0, bs.bob_id(i)}] = 1;
    terms[{0, bs.bob_id(j)}] = 1;
    terms[{1, bs.bob_id(i)}] = 1;
    terms[{1, bs.bob_id(j)}] = -1;
    return Inequality{bs.joint_ptr(), std::move(terms), Rat(2),
                      "chsh(" + bob.label(i) + "," + bob.label(j) + ")", false};
}

Inequality chsh_generalized(const BellScenario& bs, const std::vector<int>& t0,
                            const std::vector<int>& t1) {
    require_alice_settings(bs, 2);
    const std::vector<int> s0 = checked_bob_set(bs, t0);
    const std::vector<int> s1 = checked_bob_set(bs, t1);
    if (s0 == s1) throw InvalidPairError("the two product observables must differ");
    CorrelatorSpec terms;
    for (int x : {0, 1})
        for (const auto* t : {&s0, &s1}) {
            std::vector<int> ids{x};
            for (int m : *t) ids.push_back(bs.bob_id(m));
            terms[ids] = (x == 1 && t == &s1) ? -1 : 1;
        }
    const auto name = [&](const std::vector<int>& t) {
        std::string out;
        for (size_t k = 0; k < t.size(); ++k) {
            if (k) out += "*";
            out += bs.bob().label(t[k]);
        }
        return out;
    };
    return Inequality{bs.joint_ptr(), std::move(terms), Rat(2),
                      "chsh-product(" + name(s0) + ";" + name(s1) + ")", false};
}

Inequality chsh_product_pairs(const BellScenario& bs) {
    return chsh_generalized(bs, {0, 1}, {2, 3});
}

Inequality chsh_product_mixed(const BellScenario& bs) {
    return chsh_generalized(bs, {0}, {2, 3});
}

Inequality chained(const BellScenario& bs) {
    const int n = bs.alice_measurements();
    if (!is_n_cycle(bs.bob()) || bs.bob().measurement_count() != n)
        throw InvalidScenarioError(
            "chained functional needs n Alice settings against an n-cycle for Bob");
    CorrelatorSpec terms;
    for (int j = 0; j < n; ++j) {
        std::vector<int> edge{bs.bob_id(j), bs.bob_id((j + 1) % n)};
        std::sort(edge.begin(), edge.end());
        std::vector<int> first{j};
        first.insert(first.end(), edge.begin(), edge.end());
        terms[first] = 1;
        // The walk returns to A_0 on the last edge, with opposite sign.
        const int x2 = (j + 1) % n;
        std::vector<int> second{x2};
        second.insert(second.end(), edge.begin(), edge.end());
        terms[second] = (j == n - 1) ? -1 : 1;
    }
    return Inequality{bs.joint_ptr(), std::move(terms), Rat(2 * n - 2),
                      "chained(" + std::to_string(n) + ")", false};
}

Inequality pm_noncontextuality(ScenarioPtr pm) {
    if (!is_square_grid(*pm))
        throw InvalidScenarioError("the grid functional needs the 3x3 square scenario");
    CorrelatorSpec terms;
    for (int c = 0; c < 3; ++c) terms[{c, 3 + c, 6 + c}] = 1; // columns
    terms[{0, 1, 2}] = 1;                                     // rows
    terms[{3, 4, 5}] = 1;
    terms[{6, 7, 8}] = -1;
    return Inequality{std::move(pm), std::move(terms), Rat(4), "square-grid", false};
}

Inequality classicality_pentagon(const BellScenario& bs) {
    if (bs.alice_measurements() != 1 || !is_n_cycle(bs.bob()) ||
        bs.bob().measurement_count() != 5)
        throw InvalidScenarioError(
            "the pentagon classicality functional needs one Alice setting against the 5-cycle");
    // Original orientation: 3<A_0> + sum_j (<B_jB_{j+1}> + <A_0 B_jB_{j+1}>)
    // >= -3. Stored negated so the internal form is <=.
    CorrelatorSpec terms;
    terms[{0}] = -3;
    for (int j = 0; j < 5; ++j) {
        std::vector<int> edge{bs.bob_id(j), bs.bob_id((j + 1) % 5)};
        std::sort(edge.begin(), edge.end());
        terms[edge] = -1;
        std::vector<int> ids{0};
        ids.insert(ids.end(), edge.begin(), edge.end());
        terms[ids] = -1;
    }
    return Inequality{bs.joint_ptr(), std::move(terms), Rat(3), "pentagon-classicality", true};
}

Inequality lift_bob(const BellScenario& bs, const Inequality& bob_ineq) {
    if (!(*bob_ineq.scenario == bs.bob()))
        throw ScenarioMismatchError("functional does not live on this scenario's Bob side");
    CorrelatorSpec terms;
    for (const auto& [ids, coeff] : bob_ineq.terms) {
        std::vector<int> lifted;
        lifted.reserve(ids.size());
        for (int m : ids) lifted.push_back(bs.bob_id(m));
        terms[lifted] = coeff;
    }
    return Inequality{bs.joint_ptr(), std::move(terms), bob_ineq.bound, bob_ineq.label,
                      bob_ineq.display_flipped};
}

TradeoffReport tradeoff_sum(const BellScenario& bs, const Behavior& b,
                            const NormalizedInequality& joint_ineq,
                            const NormalizedInequality& bob_ineq) {
    TradeoffReport r;
    r.joint_term = joint_ineq.evaluate(b);
    r.marginal_term = bob_ineq.evaluate(bob_marginal(bs, b));
    r.sum = r.joint_term + r.marginal_term;
    r.satisfied = r.sum <= 1;
    return r;
}

} // namespace gbell
