#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace gbell {

// A contextuality scenario: dichotomic (+1/-1) measurements and its maximal
// contexts. Coordinates of a behavior are laid out context by context, and
// within a context by outcome tuple in lexicographic order with +1 before -1
// (tuple index t: bit (k-1-pos) of t is 0 for +1 at position pos).
class Scenario {
public:
    // Validates: nonempty labels, unique labels, contexts nonempty, every
    // measurement covered, contexts distinct and mutually non-nested.
    // Measurement ids inside each context are stored sorted.
    static Scenario make(std::vector<std::string> labels,
                         std::vector<std::vector<int>> contexts);

    int measurement_count() const { return static_cast<int>(labels_.size()); }
    int context_count() const { return static_cast<int>(contexts_.size()); }
    int dim() const { return dim_; }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int m) const { return labels_[static_cast<size_t>(m)]; }
    // -1 when no measurement carries this label.
    int measurement_id(std::string_view label) const;

    const std::vector<std::vector<int>>& contexts() const { return contexts_; }
    const std::vector<int>& context(int ci) const { return contexts_[static_cast<size_t>(ci)]; }
    int context_size(int ci) const { return static_cast<int>(context(ci).size()); }
    int tuple_count(int ci) const { return 1 << context_size(ci); }
    int offset(int ci) const { return offsets_[static_cast<size_t>(ci)]; }
    int index(int ci, int t) const { return offset(ci) + t; }

    // Outcome (+1/-1) of the measurement at `pos` within context `ci` for
    // outcome-tuple index t.
    int outcome(int ci, int t, int pos) const {
        const int k = context_size(ci);
        return (t >> (k - 1 - pos)) & 1 ? -1 : +1;
    }

    // First context (lowest index) containing every id in `subset`, else -1.
    int find_context_containing(const std::vector<int>& subset) const;

    bool operator==(const Scenario& o) const {
        return labels_ == o.labels_ && contexts_ == o.contexts_;
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> contexts_;
    std::vector<int> offsets_;
    int dim_ = 0;
};

using ScenarioPtr = std::shared_ptr<const Scenario>;

inline ScenarioPtr share(Scenario s) { return std::make_shared<const Scenario>(std::move(s)); }

// n dichotomic measurements B0..B{n-1}, contexts {B_i, B_{i+1 mod n}}. n >= 3.
Scenario n_cycle(int n);

// The 3x3 square: measurements B11..B33 (row-major), contexts = 3 rows + 3
// columns. Length-2 edge contexts are derived marginals, not coordinates.
Scenario peres_mermin();

// Measurement id of square cell (row, col), 1-based.
int pm_cell(int row, int col);

// m incompatible measurements A0..A{m-1}: m singleton contexts. m >= 1.
Scenario alice_side(int m);

// Structural tests (labels ignored): n measurements whose contexts are
// exactly the n cycle edges; the 3x3 row/column grid.
bool is_n_cycle(const Scenario& s);
bool is_square_grid(const Scenario& s);

// Bipartite generalized Bell scenario. Joint contexts are all pairs
// (Alice measurement x, Bob context C); they are ordered by (x, C) and the
// outcome tuple puts Alice's outcome first.
class BellScenario {
public:
    // alice must have singleton contexts only.
    static BellScenario make(Scenario alice, Scenario bob);

    const Scenario& alice() const { return *alice_; }
    const Scenario& bob() const { return *bob_; }
    const Scenario& joint() const { return *joint_; }
    const ScenarioPtr& alice_ptr() const { return alice_; }
    const ScenarioPtr& bob_ptr() const { return bob_; }
    const ScenarioPtr& joint_ptr() const { return joint_; }

    int alice_measurements() const { return alice_->measurement_count(); }
    int bob_contexts() const { return bob_->context_count(); }
    int joint_context(int x, int bob_ci) const { return x * bob_contexts() + bob_ci; }
    // Joint-scenario id of a Bob measurement.
    int bob_id(int bob_m) const { return alice_measurements() + bob_m; }

    bool operator==(const BellScenario& o) const {
        return *alice_ == *o.alice_ && *bob_ == *o.bob_;
    }

private:
    ScenarioPtr alice_, bob_, joint_;
};

} // namespace gbell
