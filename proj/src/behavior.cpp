#include "gbell/behavior.hpp"

#include <algorithm>
#include <sstream>

#include "gbell/error.hpp"

namespace gbell {

namespace {

std::string subset_labels(const Scenario& s, const std::vector<int>& ids) {
    std::string out = "{";
    for (size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ",";
        out += s.label(ids[i]);
    }
    return out + "}";
}

std::string assignment_string(const Scenario& s, const std::vector<int>& ids, int bits) {
    const int k = static_cast<int>(ids.size());
    std::string out;
    for (int pos = 0; pos < k; ++pos) {
        if (pos) out += " ";
        out += s.label(ids[static_cast<size_t>(pos)]);
        out += ((bits >> (k - 1 - pos)) & 1) ? "=-1" : "=+1";
    }
    return out;
}

// Marginal probability that the measurements `ids` (all inside context ci)
// take the outcomes encoded by `bits` (same big-endian +1-first convention
// as tuple indices).
Rat context_marginal(const Behavior& b, int ci, const std::vector<int>& ids, int bits) {
    const Scenario& s = *b.scenario;
    const auto& ctx = s.context(ci);
    const int k = s.context_size(ci);
    std::vector<int> pos;
    pos.reserve(ids.size());
    for (int id : ids) {
        auto it = std::lower_bound(ctx.begin(), ctx.end(), id);
        pos.push_back(static_cast<int>(it - ctx.begin()));
    }
    Rat sum = 0;
    for (int t = 0; t < (1 << k); ++t) {
        bool match = true;
        for (size_t i = 0; i < ids.size(); ++i) {
            const int want = (bits >> (static_cast<int>(ids.size()) - 1 - static_cast<int>(i))) & 1;
            const int got = (t >> (k - 1 - pos[i])) & 1;
            if (want != got) { match = false; break; }
        }
        if (match) sum += b.at(ci, t);
    }
    return sum;
}

std::vector<int> shared_ids(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

Behavior behavior_from_table(ScenarioPtr scenario, std::vector<Rat> entries) {
    if (static_cast<int>(entries.size()) != scenario->dim())
        throw ScenarioMismatchError("table has " + std::to_string(entries.size()) +
                                    " entries, scenario has " +
                                    std::to_string(scenario->dim()) + " coordinates");
    for (size_t i = 0; i < entries.size(); ++i)
        if (entries[i] < 0)
            throw InvalidProbabilityError("negative probability " + rat_to_string(entries[i]) +
                                          " at coordinate " + std::to_string(i));
    for (int ci = 0; ci < scenario->context_count(); ++ci) {
        Rat sum = 0;
        for (int t = 0; t < scenario->tuple_count(ci); ++t)
            sum += entries[static_cast<size_t>(scenario->index(ci, t))];
        if (sum != 1)
            throw NormalizationError("context " + subset_labels(*scenario, scenario->context(ci)) +
                                     " sums to " + rat_to_string(sum));
    }
    return Behavior{std::move(scenario), std::move(entries)};
}

ConsistencyReport check_nd(const Behavior& b) {
    const Scenario& s = *b.scenario;
    ConsistencyReport rep;
    for (int i = 0; i < s.context_count(); ++i)
        for (int j = i + 1; j < s.context_count(); ++j) {
            const auto shared = shared_ids(s.context(i), s.context(j));
            if (shared.empty()) continue;
            const int k = static_cast<int>(shared.size());
            for (int bits = 0; bits < (1 << k); ++bits) {
                const Rat lhs = context_marginal(b, i, shared, bits);
                const Rat rhs = context_marginal(b, j, shared, bits);
                if (lhs != rhs)
                    rep.violations.push_back(
                        {"marginal-consistency",
                         subset_labels(s, s.context(i)) + " vs " + subset_labels(s, s.context(j)) +
                             " at " + assignment_string(s, shared, bits),
                         lhs, rhs});
            }
        }
    return rep;
}

ConsistencyReport check_nsnd(const BellScenario& bs, const Behavior& b) {
    if (!(*b.scenario == bs.joint()))
        throw ScenarioMismatchError("behavior does not live on the composed scenario");
    const Scenario& joint = bs.joint();
    const Scenario& bob = bs.bob();
    const int na = bs.alice_measurements();
    const int nc = bs.bob_contexts();
    ConsistencyReport rep;

    // Bob's local consistency, per Alice setting: for overlapping Bob
    // contexts the joint marginal on (Alice outcome, shared Bob outcomes)
    // must agree.
    for (int x = 0; x < na; ++x)
        for (int ci = 0; ci < nc; ++ci)
            for (int cj = ci + 1; cj < nc; ++cj) {
                auto shared_bob = shared_ids(bob.context(ci), bob.context(cj));
                if (shared_bob.empty()) continue;
                std::vector<int> ids{x};
                for (int m : shared_bob) ids.push_back(bs.bob_id(m));
                const int k = static_cast<int>(ids.size());
                for (int bits = 0; bits < (1 << k); ++bits) {
                    const Rat lhs = context_marginal(b, bs.joint_context(x, ci), ids, bits);
                    const Rat rhs = context_marginal(b, bs.joint_context(x, cj), ids, bits);
                    if (lhs != rhs)
                        rep.violations.push_back(
                            {"bob-no-disturbance",
                             subset_labels(bob, bob.context(ci)) + " vs " +
                                 subset_labels(bob, bob.context(cj)) + " at " +
                                 assignment_string(joint, ids, bits),
                             lhs, rhs});
                }
            }

    // Bob's statistics must not depend on the Alice setting.
    for (int ci = 0; ci < nc; ++ci) {
        std::vector<int> ids;
        for (int m : bob.context(ci)) ids.push_back(bs.bob_id(m));
        const int k = static_cast<int>(ids.size());
        for (int x = 0; x < na; ++x)
            for (int xp = x + 1; xp < na; ++xp)
                for (int bits = 0; bits < (1 << k); ++bits) {
                    const Rat lhs = context_marginal(b, bs.joint_context(x, ci), ids, bits);
                    const Rat rhs = context_marginal(b, bs.joint_context(xp, ci), ids, bits);
                    if (lhs != rhs)
                        rep.violations.push_back(
                            {"alice-to-bob-signaling",
                             joint.label(x) + " vs " + joint.label(xp) + " on " +
                                 subset_labels(bob, bob.context(ci)) + " at " +
                                 assignment_string(joint, ids, bits),
                             lhs, rhs});
                }
    }

    // Alice's statistics must not depend on the Bob context (checked on
    // disjoint context pairs; overlapping pairs are covered above).
    for (int x = 0; x < na; ++x) {
        const std::vector<int> ids{x};
        for (int ci = 0; ci < nc; ++ci)
            for (int cj = ci + 1; cj < nc; ++cj) {
                if (!shared_ids(bob.context(ci), bob.context(cj)).empty()) continue;
                for (int bits = 0; bits < 2; ++bits) {
                    const Rat lhs = context_marginal(b, bs.joint_context(x, ci), ids, bits);
                    const Rat rhs = context_marginal(b, bs.joint_context(x, cj), ids, bits);
                    if (lhs != rhs)
                        rep.violations.push_back(
                            {"bob-to-alice-signaling",
                             joint.label(x) + (bits ? "=-1" : "=+1") + " via " +
                                 subset_labels(bob, bob.context(ci)) + " vs " +
                                 subset_labels(bob, bob.context(cj)),
                             lhs, rhs});
                }
            }
    }
    return rep;
}

Behavior bob_marginal(const BellScenario& bs, const Behavior& b) {
    if (!(*b.scenario == bs.joint()))
        throw ScenarioMismatchError("behavior does not live on the composed scenario");
    const Scenario& bob = bs.bob();
    const int na = bs.alice_measurements();
    std::vector<Rat> m(static_cast<size_t>(bob.dim()), Rat(0));
    for (int ci = 0; ci < bs.bob_contexts(); ++ci) {
        const int kb = bob.context_size(ci);
        for (int t = 0; t < (1 << kb); ++t) {
            // Sum over Alice's outcome with her setting fixed to x = 0 ...
            Rat v = b.at(bs.joint_context(0, ci), t) + b.at(bs.joint_context(0, ci), (1 << kb) | t);
            // ... and insist every other setting gives the same value.
            for (int x = 1; x < na; ++x) {
                const Rat w = b.at(bs.joint_context(x, ci), t) +
                              b.at(bs.joint_context(x, ci), (1 << kb) | t);
                if (w != v)
                    throw SignalingError("Bob marginal on " + subset_labels(bob, bob.context(ci)) +
                                         " depends on the " + bs.alice().label(0) + "/" +
                                         bs.alice().label(x) + " setting: " + rat_to_string(v) +
                                         " vs " + rat_to_string(w));
            }
            m[static_cast<size_t>(bob.index(ci, t))] = v;
        }
    }
    return behavior_from_table(bs.bob_ptr(), std::move(m));
}

Behavior alice_marginal(const BellScenario& bs, const Behavior& b) {
    if (!(*b.scenario == bs.joint()))
        throw ScenarioMismatchError("behavior does not live on the composed scenario");
    const Scenario& alice = bs.alice();
    std::vector<Rat> m(static_cast<size_t>(alice.dim()), Rat(0));
    for (int x = 0; x < bs.alice_measurements(); ++x) {
        for (int abit = 0; abit < 2; ++abit) {
            const std::vector<int> ids{x};
            Rat v = context_marginal(b, bs.joint_context(x, 0), ids, abit);
            for (int ci = 1; ci < bs.bob_contexts(); ++ci) {
                const Rat w = context_marginal(b, bs.joint_context(x, ci), ids, abit);
                if (w != v)
                    throw SignalingError("distribution of " + alice.label(x) +
                                         " depends on Bob's context: " + rat_to_string(v) +
                                         " vs " + rat_to_string(w));
            }
            m[static_cast<size_t>(alice.index(x, abit))] = v;
        }
    }
    return behavior_from_table(bs.alice_ptr(), std::move(m));
}

Rat correlator(const Behavior& b, std::vector<int> subset) {
    const Scenario& s = *b.scenario;
    std::sort(subset.begin(), subset.end());
    if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
        throw IncompatibleSetError("repeated measurement in correlator subset");
    for (int id : subset)
        if (id < 0 || id >= s.measurement_count())
            throw IncompatibleSetError("unknown measurement id " + std::to_string(id));
    if (subset.empty()) return Rat(1);
    const int ci = s.find_context_containing(subset);
    if (ci < 0)
        throw IncompatibleSetError("set " + subset_labels(s, subset) +
                                   " is not contained in any context");
    const auto& ctx = s.context(ci);
    const int k = s.context_size(ci);
    std::vector<int> pos;
    for (int id : subset)
        pos.push_back(static_cast<int>(std::lower_bound(ctx.begin(), ctx.end(), id) - ctx.begin()));
    Rat sum = 0;
    for (int t = 0; t < (1 << k); ++t) {
        int sign = 1;
        for (int p : pos) sign *= s.outcome(ci, t, p);
        if (sign > 0)
            sum += b.at(ci, t);
        else
            sum -= b.at(ci, t);
    }
    return sum;
}

Rat correlator(const Behavior& b, const std::vector<std::string>& labels) {
    std::vector<int> ids;
    ids.reserve(labels.size());
    for (const auto& l : labels) {
        const int id = b.scenario->measurement_id(l);
        if (id < 0) throw IncompatibleSetError("unknown measurement label " + l);
        ids.push_back(id);
    }
    return correlator(b, std::move(ids));
}

Behavior behavior_from_correlators(ScenarioPtr scenario, const CorrelatorSpec& spec) {
    const Scenario& s = *scenario;
    for (const auto& [ids, val] : spec) {
        if (ids.empty() || !std::is_sorted(ids.begin(), ids.end()) ||
            std::adjacent_find(ids.begin(), ids.end()) != ids.end())
            throw IncompatibleSetError("correlator keys must be sorted nonempty sets");
        if (s.find_context_containing(ids) < 0)
            throw IncompatibleSetError("set " + subset_labels(s, ids) +
                                       " is not contained in any context");
        if (val < -1 || val > 1)
            throw InvalidProbabilityError("expectation " + rat_to_string(val) +
                                          " outside [-1,1] for " + subset_labels(s, ids));
    }
    std::vector<Rat> table(static_cast<size_t>(s.dim()), Rat(0));
    for (int ci = 0; ci < s.context_count(); ++ci) {
        const auto& ctx = s.context(ci);
        const int k = s.context_size(ci);
        for (int t = 0; t < (1 << k); ++t) {
            Rat v = 1;
            for (int mask = 1; mask < (1 << k); ++mask) {
                std::vector<int> ids;
                int sign = 1;
                for (int pos = 0; pos < k; ++pos)
                    if ((mask >> pos) & 1) {
                        ids.push_back(ctx[static_cast<size_t>(pos)]);
                        sign *= s.outcome(ci, t, pos);
                    }
                const auto it = spec.find(ids);
                if (it == spec.end()) continue;
                if (sign > 0)
                    v += it->second;
                else
                    v -= it->second;
            }
            v /= (1 << k);
            if (v < 0) {
                std::ostringstream msg;
                msg << "correlators force negative probability " << rat_to_string(v)
                    << " in context " << subset_labels(s, ctx) << " at "
                    << assignment_string(s, ctx, t);
                throw NotABehaviorError(msg.str());
            }
            table[static_cast<size_t>(s.index(ci, t))] = v;
        }
    }
    return behavior_from_table(std::move(scenario), std::move(table));
}

CorrelatorSpec extract_correlators(const Behavior& b) {
    const Scenario& s = *b.scenario;
    CorrelatorSpec spec;
    for (int ci = 0; ci < s.context_count(); ++ci) {
        const auto& ctx = s.context(ci);
        const int k = s.context_size(ci);
        for (int mask = 1; mask < (1 << k); ++mask) {
            std::vector<int> ids;
            for (int pos = 0; pos < k; ++pos)
                if ((mask >> pos) & 1) ids.push_back(ctx[static_cast<size_t>(pos)]);
            if (spec.count(ids)) continue;
            Rat val = correlator(b, ids);
            spec.emplace(std::move(ids), std::move(val));
        }
    }
    return spec;
}

Behavior conditional_behavior(const BellScenario& bs, const Behavior& b, int x, int a) {
    if (!(*b.scenario == bs.joint()))
        throw ScenarioMismatchError("behavior does not live on the composed scenario");
    if (x < 0 || x >= bs.alice_measurements())
        throw Error("no such Alice measurement: " + std::to_string(x));
    if (a != 1 && a != -1) throw Error("outcome must be +1 or -1");
    const int abit = a == 1 ? 0 : 1;
    const Rat pa = context_marginal(b, bs.joint_context(x, 0), {x}, abit);
    if (pa == 0)
        throw ConditioningOnNullError("cannot condition on " + bs.alice().label(x) +
                                      (a == 1 ? "=+1" : "=-1") + ": probability 0");
    const Scenario& bob = bs.bob();
    std::vector<Rat> table(static_cast<size_t>(bob.dim()), Rat(0));
    for (int ci = 0; ci < bs.bob_contexts(); ++ci) {
        const int kb = bob.context_size(ci);
        for (int t = 0; t < (1 << kb); ++t)
            table[static_cast<size_t>(bob.index(ci, t))] =
                b.at(bs.joint_context(x, ci), (abit << kb) | t) / pa;
    }
    return behavior_from_table(bs.bob_ptr(), std::move(table));
}

Behavior mix(const std::vector<Behavior>& behaviors, const std::vector<Rat>& weights) {
    if (behaviors.empty() || behaviors.size() != weights.size())
        throw InvalidMixtureError("need equally many behaviors and weights, at least one each");
    Rat total = 0;
    for (const auto& w : weights) {
        if (w < 0) throw InvalidMixtureError("negative weight " + rat_to_string(w));
        total += w;
    }
    if (total != 1) throw InvalidMixtureError("weights sum to " + rat_to_string(total));
    const ScenarioPtr& sc = behaviors.front().scenario;
    for (const auto& b : behaviors)
        if (!(*b.scenario == *sc))
            throw ScenarioMismatchError("mixture components live on different scenarios");
    std::vector<Rat> table(static_cast<size_t>(sc->dim()), Rat(0));
    for (size_t i = 0; i < behaviors.size(); ++i)
        for (size_t j = 0; j < table.size(); ++j)
            table[j] += weights[i] * behaviors[i].p[j];
    return Behavior{sc, std::move(table)};
}

Behavior uniform_behavior(ScenarioPtr scenario) {
    std::vector<Rat> table(static_cast<size_t>(scenario->dim()));
    for (int ci = 0; ci < scenario->context_count(); ++ci) {
        const Rat v = Rat(1) / scenario->tuple_count(ci);
        for (int t = 0; t < scenario->tuple_count(ci); ++t)
            table[static_cast<size_t>(scenario->index(ci, t))] = v;
    }
    return Behavior{std::move(scenario), std::move(table)};
}

} // namespace gbell
