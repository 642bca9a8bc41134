#include "gbell/quantifiers.hpp"

#include <algorithm>

#include "gbell/error.hpp"
#include "gbell/lp.hpp"

namespace gbell {

namespace {

// A generator can carry weight only where the target has mass: with all
// terms nonnegative, any positive entry outside supp(b) forces weight 0.
// Filtering is exact preprocessing, not a heuristic.
bool support_within(const std::vector<Rat>& v, const std::vector<Rat>& b) {
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0 && b[i] == 0) return false;
    return true;
}

std::vector<const std::vector<Rat>*> filter_by_support(
    const std::vector<std::vector<Rat>>& gens, const std::vector<Rat>& b) {
    std::vector<const std::vector<Rat>*> kept;
    for (const auto& g : gens)
        if (support_within(g, b)) kept.push_back(&g);
    return kept;
}

// max sum(w) s.t. sum_g w_g * gen_g + s = b, w >= 0, s >= 0. The optimum mu
// is the weight decomposable onto the generators; the fraction is 1 - mu
// (mu <= 1 automatically: each context block of b sums to 1 and each
// generator's to 1, so sum(w) <= 1 row-wise).
struct DecompositionLp {
    Rat mu;
    std::vector<Rat> weights; // aligned with gens
};

DecompositionLp decomposition_lp(const std::vector<const std::vector<Rat>*>& gens,
                                 const std::vector<Rat>& b) {
    const size_t n = gens.size();
    const size_t dim = b.size();
    if (n == 0) return {Rat(0), {}};
    linalg::RatMat a(dim, std::vector<Rat>(n + dim, Rat(0)));
    std::vector<Rat> cost(n + dim, Rat(0));
    for (size_t c = 0; c < dim; ++c) {
        for (size_t g = 0; g < n; ++g) a[c][g] = (*gens[g])[c];
        a[c][n + c] = 1;
    }
    for (size_t g = 0; g < n; ++g) cost[g] = 1;
    const SimplexResult sr = simplex_max(a, b, cost);
    return {sr.value, std::vector<Rat>(sr.x.begin(), sr.x.begin() + static_cast<long>(n))};
}

FractionCertificate build_certificate(FractionKind kind, const Behavior& b,
                                      const std::vector<const std::vector<Rat>*>& gens) {
    // Exact membership short-circuit: the input is itself a generator.
    for (const auto* g : gens)
        if (*g == b.p) {
            FractionCertificate c;
            c.kind = kind;
            c.value = 0;
            c.classical_part.push_back({Rat(1), *g});
            return c;
        }

    const DecompositionLp lp = decomposition_lp(gens, b.p);
    FractionCertificate c;
    c.kind = kind;
    c.value = 1 - lp.mu;
    std::vector<Rat> residual = b.p;
    for (size_t g = 0; g < lp.weights.size(); ++g) {
        if (lp.weights[g] == 0) continue;
        c.classical_part.push_back({lp.weights[g], *gens[g]});
        for (size_t i = 0; i < residual.size(); ++i) residual[i] -= lp.weights[g] * (*gens[g])[i];
    }
    if (c.value > 0) {
        for (auto& x : residual) x /= c.value;
        c.free_part = Behavior{b.scenario, std::move(residual)};
    }
    return c;
}

} // namespace

FractionCertificate contextual_fraction(const Behavior& b) {
    if (!check_nd(b).ok())
        throw SignalingError(
            "input behavior violates the marginal-consistency equalities; the contextual "
            "fraction is defined only inside the nondisturbing polytope");
    const VPolytope dets = deterministic_vertices(*b.scenario);
    return build_certificate(FractionKind::contextual, b, filter_by_support(dets.vertices, b.p));
}

FractionCertificate nonlocal_fraction(const BellScenario& bs, const Behavior& b,
                                      const EnumerateOptions& opts) {
    if (!(*b.scenario == bs.joint()))
        throw ScenarioMismatchError("behavior does not live on the joint scenario");
    if (!check_nsnd(bs, b).ok())
        throw SignalingError(
            "input behavior violates a no-signaling/no-disturbance equality; the nonlocal "
            "fraction is defined only inside the NSND polytope");

    const Scenario& bob = bs.bob();
    const Scenario& joint = bs.joint();
    const int na = bs.alice_measurements();

    std::vector<std::vector<Rat>> candidates;
    if (is_n_cycle(bob)) {
        const VPolytope products = local_vertices(bs, ncycle_nd_vertices(bob.measurement_count()));
        for (const auto& v : products.vertices)
            if (support_within(v, b.p)) candidates.push_back(v);
    } else {
        // General Bob: for each Alice assignment, b's support selects a face
        // of Bob's nondisturbing polytope; only vertices of these faces can
        // carry weight. Each face is cut out by pinning the Bob coordinates
        // that are dead under some Alice setting, then enumerated exactly.
        const HPolytope bob_nd = nd_hrep(bob);
        for (int bits = 0; bits < (1 << na); ++bits) {
            std::vector<int> signs(static_cast<size_t>(na));
            for (int x = 0; x < na; ++x) signs[static_cast<size_t>(x)] = (bits >> x) & 1 ? -1 : 1;
            HPolytope face = bob_nd;
            for (int ci = 0; ci < bob.context_count(); ++ci) {
                const int kb = bob.context_size(ci);
                for (int t = 0; t < (1 << kb); ++t) {
                    bool dead = false;
                    for (int x = 0; x < na && !dead; ++x) {
                        const int abit = signs[static_cast<size_t>(x)] == 1 ? 0 : 1;
                        dead = b.p[static_cast<size_t>(
                                   joint.index(bs.joint_context(x, ci), (abit << kb) | t))] == 0;
                    }
                    if (!dead) continue;
                    std::vector<Rat> row(static_cast<size_t>(face.dim), Rat(0));
                    row[static_cast<size_t>(bob.index(ci, t))] = 1;
                    face.eq_coeffs.push_back(std::move(row));
                    face.eq_values.push_back(Rat(0));
                }
            }
            try {
                const VPolytope fv = enumerate_vertices(face, opts);
                for (const auto& u : fv.vertices)
                    candidates.push_back(product_point(bs, signs, u));
            } catch (const InfeasibleError&) {
                // This Alice assignment is incompatible with b's support.
            }
        }
    }

    std::vector<const std::vector<Rat>*> gens;
    gens.reserve(candidates.size());
    for (const auto& v : candidates) gens.push_back(&v);
    FractionCertificate c = build_certificate(FractionKind::nonlocal, b, gens);
    return c;
}

FractionCertificate nonclassical_fraction(const BellScenario& bs, const Behavior& b) {
    if (!(*b.scenario == bs.joint()))
        throw ScenarioMismatchError("behavior does not live on the joint scenario");
    if (!check_nsnd(bs, b).ok())
        throw SignalingError(
            "input behavior violates a no-signaling/no-disturbance equality; the nonclassical "
            "fraction is defined only inside the NSND polytope");
    const VPolytope dets = deterministic_vertices(bs.joint());
    return build_certificate(FractionKind::nonclassical, b,
                             filter_by_support(dets.vertices, b.p));
}

bool certificate_reconstructs(const FractionCertificate& c, const Behavior& b) {
    std::vector<Rat> acc(b.p.size(), Rat(0));
    for (const auto& wv : c.classical_part) {
        if (wv.weight < 0 || wv.point.size() != acc.size()) return false;
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += wv.weight * wv.point[i];
    }
    if (c.value > 0) {
        if (!c.free_part || c.free_part->p.size() != acc.size()) return false;
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += c.value * c.free_part->p[i];
    }
    return acc == b.p;
}

TradeoffQuantifiers check_quantifier_tradeoff(const BellScenario& bs, const Behavior& b,
                                              const EnumerateOptions& opts) {
    TradeoffQuantifiers t{nonlocal_fraction(bs, b, opts), contextual_fraction(bob_marginal(bs, b)),
                          nonclassical_fraction(bs, b), false};
    t.holds = t.nonlocal.value + t.contextual.value <= t.nonclassical.value;
    return t;
}

} // namespace gbell
