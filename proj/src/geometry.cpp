#include "gbell/geometry.hpp"

#include <algorithm>

#include "gbell/error.hpp"
#include "gbell/lp.hpp"

namespace gbell {

bool HPolytope::contains(const std::vector<Rat>& x) const {
    if (static_cast<int>(x.size()) != dim) return false;
    for (int i = 0; i < ineq_count(); ++i) {
        Rat v = 0;
        for (int j = 0; j < dim; ++j)
            v += ineq_coeffs[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                 x[static_cast<size_t>(j)];
        if (v > ineq_bounds[static_cast<size_t>(i)]) return false;
    }
    for (int i = 0; i < eq_count(); ++i) {
        Rat v = 0;
        for (int j = 0; j < dim; ++j)
            v += eq_coeffs[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                 x[static_cast<size_t>(j)];
        if (v != eq_values[static_cast<size_t>(i)]) return false;
    }
    return true;
}

void VPolytope::sort_canonical() { std::sort(vertices.begin(), vertices.end()); }

namespace {

void add_nonnegativity(HPolytope& h) {
    for (int i = 0; i < h.dim; ++i) {
        std::vector<Rat> row(static_cast<size_t>(h.dim), Rat(0));
        row[static_cast<size_t>(i)] = -1;
        h.ineq_coeffs.push_back(std::move(row));
        h.ineq_bounds.push_back(Rat(0));
    }
}

void add_normalizations(HPolytope& h, const Scenario& s) {
    for (int ci = 0; ci < s.context_count(); ++ci) {
        std::vector<Rat> row(static_cast<size_t>(h.dim), Rat(0));
        for (int t = 0; t < s.tuple_count(ci); ++t)
            row[static_cast<size_t>(s.index(ci, t))] = 1;
        h.eq_coeffs.push_back(std::move(row));
        h.eq_values.push_back(Rat(1));
    }
}

// Adds +1 coefficients on the tuples of context ci whose outcomes on `ids`
// match `bits`, with the given sign.
void accumulate_marginal(std::vector<Rat>& row, const Scenario& s, int ci,
                         const std::vector<int>& ids, int bits, int sign) {
    const auto& ctx = s.context(ci);
    const int k = s.context_size(ci);
    std::vector<int> pos;
    pos.reserve(ids.size());
    for (int id : ids)
        pos.push_back(static_cast<int>(std::lower_bound(ctx.begin(), ctx.end(), id) - ctx.begin()));
    for (int t = 0; t < (1 << k); ++t) {
        bool match = true;
        for (size_t i = 0; i < ids.size(); ++i) {
            const int want = (bits >> (static_cast<int>(ids.size()) - 1 - static_cast<int>(i))) & 1;
            if (((t >> (k - 1 - pos[i])) & 1) != want) { match = false; break; }
        }
        if (match) row[static_cast<size_t>(s.index(ci, t))] += sign;
    }
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

HPolytope nd_hrep(const Scenario& s) {
    HPolytope h;
    h.dim = s.dim();
    add_nonnegativity(h);
    add_normalizations(h, s);
    for (int ci = 0; ci < s.context_count(); ++ci)
        for (int cj = ci + 1; cj < s.context_count(); ++cj) {
            const auto shared = intersect_sorted(s.context(ci), s.context(cj));
            if (shared.empty()) continue;
            for (int bits = 0; bits < (1 << shared.size()); ++bits) {
                std::vector<Rat> row(static_cast<size_t>(h.dim), Rat(0));
                accumulate_marginal(row, s, ci, shared, bits, +1);
                accumulate_marginal(row, s, cj, shared, bits, -1);
                h.eq_coeffs.push_back(std::move(row));
                h.eq_values.push_back(Rat(0));
            }
        }
    return h;
}

HPolytope nsnd_hrep(const BellScenario& bs) {
    const Scenario& joint = bs.joint();
    const Scenario& bob = bs.bob();
    const int na = bs.alice_measurements();
    const int nc = bs.bob_contexts();
    HPolytope h;
    h.dim = joint.dim();
    add_nonnegativity(h);
    add_normalizations(h, joint);

    // Bob-side consistency per Alice setting.
    for (int x = 0; x < na; ++x)
        for (int ci = 0; ci < nc; ++ci)
            for (int cj = ci + 1; cj < nc; ++cj) {
                const auto shared_bob = intersect_sorted(bob.context(ci), bob.context(cj));
                if (shared_bob.empty()) continue;
                std::vector<int> ids{x};
                for (int mb : shared_bob) ids.push_back(bs.bob_id(mb));
                for (int bits = 0; bits < (1 << ids.size()); ++bits) {
                    std::vector<Rat> row(static_cast<size_t>(h.dim), Rat(0));
                    accumulate_marginal(row, joint, bs.joint_context(x, ci), ids, bits, +1);
                    accumulate_marginal(row, joint, bs.joint_context(x, cj), ids, bits, -1);
                    h.eq_coeffs.push_back(std::move(row));
                    h.eq_values.push_back(Rat(0));
                }
            }

    // Bob's statistics independent of the Alice setting.
    for (int ci = 0; ci < nc; ++ci) {
        std::vector<int> ids;
        for (int mb : bob.context(ci)) ids.push_back(bs.bob_id(mb));
        for (int x = 0; x + 1 < na; ++x)
            for (int bits = 0; bits < (1 << ids.size()); ++bits) {
                std::vector<Rat> row(static_cast<size_t>(h.dim), Rat(0));
                accumulate_marginal(row, joint, bs.joint_context(x, ci), ids, bits, +1);
                accumulate_marginal(row, joint, bs.joint_context(x + 1, ci), ids, bits, -1);
                h.eq_coeffs.push_back(std::move(row));
                h.eq_values.push_back(Rat(0));
            }
    }

    // Alice's statistics independent of the Bob context (disjoint pairs;
    // overlapping pairs are already covered by the first family).
    for (int x = 0; x < na; ++x) {
        const std::vector<int> ids{x};
        for (int ci = 0; ci < nc; ++ci)
            for (int cj = ci + 1; cj < nc; ++cj) {
                if (!intersect_sorted(bob.context(ci), bob.context(cj)).empty()) continue;
                for (int bits = 0; bits < 2; ++bits) {
                    std::vector<Rat> row(static_cast<size_t>(h.dim), Rat(0));
                    accumulate_marginal(row, joint, bs.joint_context(x, ci), ids, bits, +1);
                    accumulate_marginal(row, joint, bs.joint_context(x, cj), ids, bits, -1);
                    h.eq_coeffs.push_back(std::move(row));
                    h.eq_values.push_back(Rat(0));
                }
            }
    }
    return h;
}

Behavior assignment_behavior(ScenarioPtr s, const std::vector<int>& signs) {
    if (static_cast<int>(signs.size()) != s->measurement_count())
        throw ScenarioMismatchError("assignment length does not match measurement count");
    for (int v : signs)
        if (v != 1 && v != -1) throw Error("assignment entries must be +1 or -1");
    std::vector<Rat> table(static_cast<size_t>(s->dim()), Rat(0));
    for (int ci = 0; ci < s->context_count(); ++ci) {
        const auto& ctx = s->context(ci);
        int t = 0;
        for (size_t pos = 0; pos < ctx.size(); ++pos)
            t = (t << 1) | (signs[static_cast<size_t>(ctx[pos])] == 1 ? 0 : 1);
        table[static_cast<size_t>(s->index(ci, t))] = 1;
    }
    return Behavior{std::move(s), std::move(table)};
}

VPolytope deterministic_vertices(const Scenario& s) {
    const int n = s.measurement_count();
    ScenarioPtr sp = share(s);
    VPolytope v;
    v.dim = s.dim();
    v.vertices.reserve(static_cast<size_t>(1) << n);
    for (int bits = 0; bits < (1 << n); ++bits) {
        std::vector<int> signs(static_cast<size_t>(n));
        for (int m = 0; m < n; ++m) signs[static_cast<size_t>(m)] = (bits >> m) & 1 ? -1 : 1;
        v.vertices.push_back(assignment_behavior(sp, signs).p);
    }
    v.sort_canonical();
    return v;
}

std::vector<NCycleVertexSpec> ncycle_vertex_specs(int n) {
    if (n < 3) throw InvalidScenarioError("cycle scenario needs n >= 3");
    std::vector<NCycleVertexSpec> specs;
    specs.reserve((static_cast<size_t>(1) << n) + (static_cast<size_t>(1) << (n - 1)));
    for (int bits = 0; bits < (1 << n); ++bits) {
        NCycleVertexSpec spec;
        spec.kind = NCycleVertexSpec::Kind::deterministic;
        for (int m = 0; m < n; ++m) spec.signs.push_back((bits >> m) & 1 ? -1 : 1);
        specs.push_back(std::move(spec));
    }
    for (int bits = 0; bits < (1 << n); ++bits) {
        int negatives = 0;
        for (int m = 0; m < n; ++m) negatives += (bits >> m) & 1;
        if (negatives % 2 == 0) continue;
        NCycleVertexSpec spec;
        spec.kind = NCycleVertexSpec::Kind::contextual;
        for (int m = 0; m < n; ++m) spec.signs.push_back((bits >> m) & 1 ? -1 : 1);
        specs.push_back(std::move(spec));
    }
    return specs;
}

Behavior ncycle_vertex_behavior(ScenarioPtr cycle, const NCycleVertexSpec& spec) {
    const int n = cycle->measurement_count();
    if (static_cast<int>(spec.signs.size()) != n)
        throw ScenarioMismatchError("sign vector length does not match the cycle length");
    if (spec.kind == NCycleVertexSpec::Kind::deterministic)
        return assignment_behavior(std::move(cycle), spec.signs);
    int negatives = 0;
    for (int v : spec.signs) {
        if (v != 1 && v != -1) throw Error("signs must be +1 or -1");
        if (v == -1) ++negatives;
    }
    if (negatives % 2 == 0)
        throw ConstructionError("contextual cycle vertex needs an odd number of -1 signs");
    // Singleton expectations vanish; edge (B_i, B_{i+1}) gets gamma_i.
    CorrelatorSpec corr;
    for (int i = 0; i < n; ++i) {
        std::vector<int> edge{i, (i + 1) % n};
        std::sort(edge.begin(), edge.end());
        corr[edge] = spec.signs[static_cast<size_t>(i)];
    }
    return behavior_from_correlators(std::move(cycle), corr);
}

VPolytope ncycle_nd_vertices(int n) {
    ScenarioPtr cycle = share(n_cycle(n));
    VPolytope v;
    v.dim = cycle->dim();
    for (const auto& spec : ncycle_vertex_specs(n))
        v.vertices.push_back(ncycle_vertex_behavior(cycle, spec).p);
    v.sort_canonical();
    return v;
}

std::vector<Rat> product_point(const BellScenario& bs, const std::vector<int>& alice_signs,
                               const std::vector<Rat>& bob_point) {
    if (static_cast<int>(alice_signs.size()) != bs.alice_measurements())
        throw ScenarioMismatchError("Alice assignment length mismatch");
    if (static_cast<int>(bob_point.size()) != bs.bob().dim())
        throw ScenarioMismatchError("Bob point dimension mismatch");
    const Scenario& joint = bs.joint();
    const Scenario& bob = bs.bob();
    std::vector<Rat> out(static_cast<size_t>(joint.dim()), Rat(0));
    for (int x = 0; x < bs.alice_measurements(); ++x) {
        const int abit = alice_signs[static_cast<size_t>(x)] == 1 ? 0 : 1;
        for (int ci = 0; ci < bs.bob_contexts(); ++ci) {
            const int kb = bob.context_size(ci);
            const int jc = bs.joint_context(x, ci);
            for (int t = 0; t < (1 << kb); ++t)
                out[static_cast<size_t>(joint.index(jc, (abit << kb) | t))] =
                    bob_point[static_cast<size_t>(bob.index(ci, t))];
        }
    }
    return out;
}

VPolytope local_vertices(const BellScenario& bs, const VPolytope& bob_vertices) {
    if (bob_vertices.dim != bs.bob().dim())
        throw ScenarioMismatchError("Bob vertex list has the wrong dimension");
    if (bob_vertices.vertices.empty())
        throw ConstructionError("Bob vertex list is empty; enumerate Bob's polytope first");
    const int na = bs.alice_measurements();
    VPolytope v;
    v.dim = bs.joint().dim();
    v.vertices.reserve((static_cast<size_t>(1) << na) * bob_vertices.vertices.size());
    for (int bits = 0; bits < (1 << na); ++bits) {
        std::vector<int> signs(static_cast<size_t>(na));
        for (int x = 0; x < na; ++x) signs[static_cast<size_t>(x)] = (bits >> x) & 1 ? -1 : 1;
        for (const auto& q : bob_vertices.vertices)
            v.vertices.push_back(product_point(bs, signs, q));
    }
    v.sort_canonical();
    return v;
}

namespace {

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat v = 0;
    for (size_t i = 0; i < a.size(); ++i) v += a[i] * b[i];
    return v;
}

// True when the inequality rows are exactly one nonnegativity row -x_i <= 0
// per coordinate (any order); simplex standard form then applies directly.
bool pure_nonnegativity(const HPolytope& h) {
    if (h.ineq_count() != h.dim) return false;
    std::vector<char> seen(static_cast<size_t>(h.dim), 0);
    for (int i = 0; i < h.ineq_count(); ++i) {
        if (h.ineq_bounds[static_cast<size_t>(i)] != 0) return false;
        int coord = -1;
        for (int j = 0; j < h.dim; ++j) {
            const Rat& c = h.ineq_coeffs[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (c == 0) continue;
            if (c != -1 || coord >= 0) return false;
            coord = j;
        }
        if (coord < 0 || seen[static_cast<size_t>(coord)]) return false;
        seen[static_cast<size_t>(coord)] = 1;
    }
    return true;
}

std::vector<int> tight_rows_at(const HPolytope& h, const std::vector<Rat>& x) {
    std::vector<int> tight;
    for (int i = 0; i < h.ineq_count(); ++i)
        if (dot(h.ineq_coeffs[static_cast<size_t>(i)], x) == h.ineq_bounds[static_cast<size_t>(i)])
            tight.push_back(i);
    return tight;
}

// Walks from an optimal point to an optimal vertex: while the active
// constraints do not pin the point, move along a direction of their kernel
// until a new inequality becomes tight.
std::vector<Rat> purify_to_vertex(const HPolytope& h, std::vector<Rat> x) {
    for (;;) {
        linalg::RatMat tight = h.eq_coeffs;
        for (int i : tight_rows_at(h, x)) tight.push_back(h.ineq_coeffs[static_cast<size_t>(i)]);
        linalg::IntMat ti;
        ti.reserve(tight.size());
        for (const auto& row : tight) ti.push_back(linalg::scale_to_integers(row));
        const linalg::IntMat kernel = linalg::integer_kernel(ti);
        if (kernel.empty()) return x;
        std::vector<Rat> d(kernel[0].begin(), kernel[0].end());
        // Find the nearest blocking inequality along +d, else along -d.
        for (int attempt = 0; attempt < 2; ++attempt) {
            std::optional<Rat> step;
            for (int i = 0; i < h.ineq_count(); ++i) {
                const Rat ad = dot(h.ineq_coeffs[static_cast<size_t>(i)], d);
                if (ad <= 0) continue;
                const Rat slack =
                    h.ineq_bounds[static_cast<size_t>(i)] - dot(h.ineq_coeffs[static_cast<size_t>(i)], x);
                const Rat t = slack / ad;
                if (!step || t < *step) step = t;
            }
            if (step) {
                for (int j = 0; j < h.dim; ++j) x[static_cast<size_t>(j)] += *step * d[static_cast<size_t>(j)];
                break;
            }
            if (attempt == 1)
                throw UnboundedPolytopeError("polytope is unbounded along a kernel direction");
            for (auto& c : d) c = -c;
        }
    }
}

} // namespace

LpResult maximize_linear(const HPolytope& h, const std::vector<Rat>& objective) {
    if (static_cast<int>(objective.size()) != h.dim)
        throw ScenarioMismatchError("objective dimension mismatch");

    LpResult res;
    if (pure_nonnegativity(h)) {
        const SimplexResult sr = simplex_max(h.eq_coeffs, h.eq_values, objective);
        res.value = sr.value;
        res.point = sr.x;
    } else {
        // Standard form over x = u - v with one slack per inequality.
        const int m_in = h.ineq_count();
        const int m_eq = h.eq_count();
        const int n_std = 2 * h.dim + m_in;
        linalg::RatMat a(static_cast<size_t>(m_in + m_eq),
                         std::vector<Rat>(static_cast<size_t>(n_std), Rat(0)));
        std::vector<Rat> b(static_cast<size_t>(m_in + m_eq), Rat(0));
        std::vector<Rat> c(static_cast<size_t>(n_std), Rat(0));
        for (int i = 0; i < m_in; ++i) {
            for (int j = 0; j < h.dim; ++j) {
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    h.ineq_coeffs[static_cast<size_t>(i)][static_cast<size_t>(j)];
                a[static_cast<size_t>(i)][static_cast<size_t>(h.dim + j)] =
                    -h.ineq_coeffs[static_cast<size_t>(i)][static_cast<size_t>(j)];
            }
            a[static_cast<size_t>(i)][static_cast<size_t>(2 * h.dim + i)] = 1;
            b[static_cast<size_t>(i)] = h.ineq_bounds[static_cast<size_t>(i)];
        }
        for (int i = 0; i < m_eq; ++i) {
            for (int j = 0; j < h.dim; ++j) {
                a[static_cast<size_t>(m_in + i)][static_cast<size_t>(j)] =
                    h.eq_coeffs[static_cast<size_t>(i)][static_cast<size_t>(j)];
                a[static_cast<size_t>(m_in + i)][static_cast<size_t>(h.dim + j)] =
                    -h.eq_coeffs[static_cast<size_t>(i)][static_cast<size_t>(j)];
            }
            b[static_cast<size_t>(m_in + i)] = h.eq_values[static_cast<size_t>(i)];
        }
        for (int j = 0; j < h.dim; ++j) {
            c[static_cast<size_t>(j)] = objective[static_cast<size_t>(j)];
            c[static_cast<size_t>(h.dim + j)] = -objective[static_cast<size_t>(j)];
        }
        const SimplexResult sr = simplex_max(a, b, c);
        std::vector<Rat> x(static_cast<size_t>(h.dim));
        for (int j = 0; j < h.dim; ++j)
            x[static_cast<size_t>(j)] =
                sr.x[static_cast<size_t>(j)] - sr.x[static_cast<size_t>(h.dim + j)];
        res.point = purify_to_vertex(h, std::move(x));
        res.value = dot(objective, res.point);
        if (res.value != sr.value)
            throw Error("internal: purification left the optimal face");
    }
    res.tight_ineq_rows = tight_rows_at(h, res.point);
    return res;
}

} // namespace gbell
