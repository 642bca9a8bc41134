#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbell/behavior.hpp"
#include "gbell/linalg.hpp"
#include "gbell/scenario.hpp"

namespace gbell {

// H-representation: { x : A x <= b, E x = f } in R^dim.
struct HPolytope {
    int dim = 0;
    linalg::RatMat ineq_coeffs;   // rows of A
    std::vector<Rat> ineq_bounds; // b
    linalg::RatMat eq_coeffs;     // rows of E
    std::vector<Rat> eq_values;   // f

    int ineq_count() const { return static_cast<int>(ineq_coeffs.size()); }
    int eq_count() const { return static_cast<int>(eq_coeffs.size()); }
    bool contains(const std::vector<Rat>& x) const;
};

// V-representation: duplicate-free vertex list in lexicographic order.
struct VPolytope {
    int dim = 0;
    std::vector<std::vector<Rat>> vertices;

    int count() const { return static_cast<int>(vertices.size()); }
    void sort_canonical();
};

// Nonnegativity rows, one normalization equality per context, and the
// shared-marginal consistency equalities for every overlapping context
// pair (one row per shared outcome assignment; redundant rows are kept
// here and eliminated inside enumerate_vertices).
HPolytope nd_hrep(const Scenario& s);

// nd_hrep of the composed scenario, generated as the explicit families:
// Bob-side consistency per Alice setting, Bob statistics independent of
// the Alice setting, and Alice statistics independent of the Bob context.
HPolytope nsnd_hrep(const BellScenario& bs);

struct EnumerateOptions {
    // Cap on the intermediate ray count of the double-description run.
    uint64_t budget = 1'000'000;
    // 1 = serial reference kernel; 0 = one worker per available core.
    int threads = 1;
    // When nonempty, insertion steps are checkpointed here and a matching
    // checkpoint is resumed from.
    std::string checkpoint_path;
};

// Exact double-description vertex enumeration. Deterministic canonical
// output for any thread count. Throws UnboundedPolytopeError,
// InfeasibleError, BudgetExceededError.
VPolytope enumerate_vertices(const HPolytope& h, const EnumerateOptions& opts = {});

// All global +1/-1 assignments as behaviors (for a composed scenario pass
// the joint scenario; the products Alice-assignment x Bob-assignment are
// exactly its global assignments).
VPolytope deterministic_vertices(const Scenario& s);

// The behavior of one global assignment (signs[m] = +1/-1 per measurement).
Behavior assignment_behavior(ScenarioPtr s, const std::vector<int>& signs);

struct NCycleVertexSpec {
    enum class Kind { deterministic, contextual };
    Kind kind;
    // deterministic: one +1/-1 per measurement; contextual: gamma signs per
    // edge (B_i,B_{i+1}) with an odd number of -1.
    std::vector<int> signs;
};

std::vector<NCycleVertexSpec> ncycle_vertex_specs(int n);

Behavior ncycle_vertex_behavior(ScenarioPtr cycle, const NCycleVertexSpec& spec);

// The 2^n deterministic + 2^{n-1} contextual extreme points of the cycle's
// nondisturbing polytope, built from correlator specs.
VPolytope ncycle_nd_vertices(int n);

// Products (Alice deterministic assignment) x (Bob vertex) — the extreme
// points of the generalized-local polytope. bob_vertices must list the
// extreme points of Bob's nondisturbing polytope (from ncycle_nd_vertices
// or a prior enumerate_vertices run).
VPolytope local_vertices(const BellScenario& bs, const VPolytope& bob_vertices);

// One joint coordinate vector for (alice assignment signs) x (bob point).
std::vector<Rat> product_point(const BellScenario& bs, const std::vector<int>& alice_signs,
                               const std::vector<Rat>& bob_point);

struct LpResult {
    Rat value;
    std::vector<Rat> point;            // vertex optimizer
    std::vector<int> tight_ineq_rows;  // inequality rows active at `point`
};

// Exact LP maximum of objective.x over h, with a vertex optimizer.
LpResult maximize_linear(const HPolytope& h, const std::vector<Rat>& objective);

} // namespace gbell
