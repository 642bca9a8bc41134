#include "gbell/scenario.hpp"

#include <algorithm>
#include <set>

#include "gbell/error.hpp"

namespace gbell {

Scenario Scenario::make(std::vector<std::string> labels,
                        std::vector<std::vector<int>> contexts) {
    if (labels.empty())
        throw InvalidScenarioError("scenario needs at least one measurement");
    {
        std::set<std::string> seen;
        for (const auto& l : labels) {
            if (l.empty())
                throw InvalidScenarioError("empty measurement label");
            if (!seen.insert(l).second)
                throw InvalidScenarioError("duplicate measurement label: " + l);
        }
    }
    if (contexts.empty())
        throw InvalidScenarioError("scenario needs at least one context");

    const int n = static_cast<int>(labels.size());
    std::vector<char> covered(static_cast<size_t>(n), 0);
    for (auto& c : contexts) {
        if (c.empty())
            throw InvalidScenarioError("empty context");
        std::sort(c.begin(), c.end());
        if (std::adjacent_find(c.begin(), c.end()) != c.end())
            throw InvalidScenarioError("repeated measurement inside a context");
        for (int m : c) {
            if (m < 0 || m >= n)
                throw InvalidScenarioError("context references unknown measurement id " +
                                           std::to_string(m));
            covered[static_cast<size_t>(m)] = 1;
        }
    }
    for (int m = 0; m < n; ++m)
        if (!covered[static_cast<size_t>(m)])
            throw InvalidScenarioError("measurement " + labels[static_cast<size_t>(m)] +
                                       " appears in no context");
    // Maximality: no context may be contained in another (equality included).
    for (size_t i = 0; i < contexts.size(); ++i)
        for (size_t j = 0; j < contexts.size(); ++j) {
            if (i == j) continue;
            if (std::includes(contexts[j].begin(), contexts[j].end(),
                              contexts[i].begin(), contexts[i].end()))
                throw InvalidScenarioError("context " + std::to_string(i) +
                                           " is contained in context " + std::to_string(j));
        }

    Scenario s;
    s.labels_ = std::move(labels);
    s.contexts_ = std::move(contexts);
    s.offsets_.reserve(s.contexts_.size());
    int off = 0;
    for (const auto& c : s.contexts_) {
        s.offsets_.push_back(off);
        off += 1 << c.size();
    }
    s.dim_ = off;
    return s;
}

int Scenario::measurement_id(std::string_view label) const {
    for (size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return static_cast<int>(i);
    return -1;
}

int Scenario::find_context_containing(const std::vector<int>& subset) const {
    for (size_t ci = 0; ci < contexts_.size(); ++ci)
        if (std::includes(contexts_[ci].begin(), contexts_[ci].end(),
                          subset.begin(), subset.end()))
            return static_cast<int>(ci);
    return -1;
}

Scenario n_cycle(int n) {
    if (n < 3) throw InvalidScenarioError("cycle scenario needs n >= 3");
    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) labels.push_back("B" + std::to_string(i));
    std::vector<std::vector<int>> contexts;
    contexts.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) contexts.push_back({i, (i + 1) % n});
    return Scenario::make(std::move(labels), std::move(contexts));
}

int pm_cell(int row, int col) { return 3 * (row - 1) + (col - 1); }

Scenario peres_mermin() {
    std::vector<std::string> labels;
    labels.reserve(9);
    for (int r = 1; r <= 3; ++r)
        for (int c = 1; c <= 3; ++c)
            labels.push_back("B" + std::to_string(r) + std::to_string(c));
    std::vector<std::vector<int>> contexts;
    for (int r = 1; r <= 3; ++r)
        contexts.push_back({pm_cell(r, 1), pm_cell(r, 2), pm_cell(r, 3)});
    for (int c = 1; c <= 3; ++c)
        contexts.push_back({pm_cell(1, c), pm_cell(2, c), pm_cell(3, c)});
    return Scenario::make(std::move(labels), std::move(contexts));
}

Scenario alice_side(int m) {
    if (m < 1) throw InvalidScenarioError("need at least one measurement");
    std::vector<std::string> labels;
    std::vector<std::vector<int>> contexts;
    labels.reserve(static_cast<size_t>(m));
    contexts.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        labels.push_back("A" + std::to_string(i));
        contexts.push_back({i});
    }
    return Scenario::make(std::move(labels), std::move(contexts));
}

BellScenario BellScenario::make(Scenario alice, Scenario bob) {
    for (const auto& c : alice.contexts())
        if (c.size() != 1)
            throw UnsupportedCompositionError(
                "left party must have pairwise incompatible measurements "
                "(singleton contexts only)");

    const int na = alice.measurement_count();
    std::vector<std::string> labels = alice.labels();
    for (const auto& l : bob.labels()) labels.push_back(l);

    // Joint contexts {A_x} u C for every Alice measurement x and Bob context
    // C, ordered by (x, C); Alice id < Bob ids keeps her outcome first in the
    // tuple order.
    std::vector<std::vector<int>> contexts;
    contexts.reserve(static_cast<size_t>(na) * bob.contexts().size());
    for (int x = 0; x < na; ++x)
        for (const auto& c : bob.contexts()) {
            std::vector<int> jc;
            jc.reserve(c.size() + 1);
            jc.push_back(x);
            for (int m : c) jc.push_back(na + m);
            contexts.push_back(std::move(jc));
        }

    BellScenario bs;
    bs.joint_ = share(Scenario::make(std::move(labels), std::move(contexts)));
    bs.alice_ = share(std::move(alice));
    bs.bob_ = share(std::move(bob));
    return bs;
}

bool is_n_cycle(const Scenario& s) {
    const int n = s.measurement_count();
    if (n < 3 || s.context_count() != n) return false;
    std::vector<std::vector<int>> want;
    want.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<int> e{i, (i + 1) % n};
        std::sort(e.begin(), e.end());
        want.push_back(std::move(e));
    }
    std::vector<std::vector<int>> got = s.contexts();
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    return got == want;
}

bool is_square_grid(const Scenario& s) {
    if (s.measurement_count() != 9 || s.context_count() != 6) return false;
    std::vector<std::vector<int>> want;
    for (int r = 0; r < 3; ++r) want.push_back({3 * r, 3 * r + 1, 3 * r + 2});
    for (int c = 0; c < 3; ++c) want.push_back({c, 3 + c, 6 + c});
    std::vector<std::vector<int>> got = s.contexts();
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    return got == want;
}

} // namespace gbell
