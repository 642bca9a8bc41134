#include "gbell/lp.hpp"

#include "gbell/error.hpp"

namespace gbell {

namespace {

// Dense simplex tableau. Row `m` is the reduced-cost row z: z[j] >= 0 for
// all j means optimal (maximization); z[rhs] is the objective value.
struct Tableau {
    int m, width; // width includes the rhs column
    linalg::RatMat t;
    std::vector<int> basis;

    Rat& at(int i, int j) { return t[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    const Rat& at(int i, int j) const {
        return t[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    int rhs() const { return width - 1; }

    void pivot(int row, int col) {
        const Rat inv = Rat(1) / at(row, col);
        for (int j = 0; j < width; ++j) at(row, j) *= inv;
        for (int i = 0; i <= m; ++i) {
            if (i == row) continue;
            const Rat f = at(i, col);
            if (f == 0) continue;
            for (int j = 0; j < width; ++j) at(i, j) -= f * at(row, j);
        }
        basis[static_cast<size_t>(row)] = col;
    }

    // Returns false when already optimal. `cols` limits eligible entering
    // columns (phase 2 must not re-enter artificials).
    bool iterate(int cols) {
        bool bland = false;
        int degenerate_streak = 0;
        for (;;) {
            int col = -1;
            if (bland) {
                for (int j = 0; j < cols; ++j)
                    if (at(m, j) < 0) { col = j; break; }
            } else {
                const Rat* best = nullptr;
                for (int j = 0; j < cols; ++j)
                    if (at(m, j) < 0 && (!best || at(m, j) < *best)) {
                        best = &at(m, j);
                        col = j;
                    }
            }
            if (col < 0) return true;
            int row = -1;
            for (int i = 0; i < m; ++i) {
                if (at(i, col) <= 0) continue;
                if (row < 0) { row = i; continue; }
                const Rat lhs = at(i, rhs()) * at(row, col);
                const Rat rhs_v = at(row, rhs()) * at(i, col);
                if (lhs < rhs_v ||
                    (lhs == rhs_v && basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(row)]))
                    row = i;
            }
            if (row < 0) return false; // unbounded direction
            const bool degenerate = at(row, rhs()) == 0;
            pivot(row, col);
            if (degenerate) {
                if (++degenerate_streak >= 64) bland = true;
            } else {
                degenerate_streak = 0;
            }
        }
    }
};

} // namespace

SimplexResult simplex_max(const linalg::RatMat& a, const std::vector<Rat>& b,
                          const std::vector<Rat>& c) {
    const int m = static_cast<int>(a.size());
    const int n = m ? static_cast<int>(a[0].size()) : static_cast<int>(c.size());

    Tableau tab;
    tab.m = m;
    tab.width = n + m + 1; // original columns, artificials, rhs
    tab.t.assign(static_cast<size_t>(m + 1), std::vector<Rat>(static_cast<size_t>(tab.width), Rat(0)));
    tab.basis.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        const bool flip = b[static_cast<size_t>(i)] < 0;
        for (int j = 0; j < n; ++j)
            tab.at(i, j) = flip ? -a[static_cast<size_t>(i)][static_cast<size_t>(j)]
                                : a[static_cast<size_t>(i)][static_cast<size_t>(j)];
        tab.at(i, n + i) = 1;
        tab.at(i, tab.rhs()) = flip ? -b[static_cast<size_t>(i)] : b[static_cast<size_t>(i)];
        tab.basis[static_cast<size_t>(i)] = n + i;
    }

    // Phase 1: maximize minus the artificial sum; z row = -(column sums)
    // on non-artificial columns, canonical zeros on the artificial ones.
    for (int j = 0; j < n; ++j) {
        Rat s = 0;
        for (int i = 0; i < m; ++i) s += tab.at(i, j);
        tab.at(m, j) = -s;
    }
    {
        Rat s = 0;
        for (int i = 0; i < m; ++i) s += tab.at(i, tab.rhs());
        tab.at(m, tab.rhs()) = -s;
    }
    if (!tab.iterate(n))
        throw InfeasibleError("phase-1 subproblem unbounded (internal inconsistency)");
    if (tab.at(m, tab.rhs()) != 0)
        throw InfeasibleError("no feasible point: artificial residual " +
                              rat_to_string(-tab.at(m, tab.rhs())));

    // Pivot artificials out of the basis; rows that cannot pivot are
    // redundant equalities and get dropped.
    std::vector<int> keep;
    for (int i = 0; i < m; ++i) {
        if (tab.basis[static_cast<size_t>(i)] < n) { keep.push_back(i); continue; }
        int col = -1;
        for (int j = 0; j < n; ++j)
            if (tab.at(i, j) != 0) { col = j; break; }
        if (col >= 0) {
            tab.pivot(i, col);
            keep.push_back(i);
        }
    }
    if (static_cast<int>(keep.size()) != m) {
        linalg::RatMat nt;
        std::vector<int> nb;
        for (int i : keep) {
            nt.push_back(std::move(tab.t[static_cast<size_t>(i)]));
            nb.push_back(tab.basis[static_cast<size_t>(i)]);
        }
        nt.push_back(std::move(tab.t[static_cast<size_t>(m)]));
        tab.t = std::move(nt);
        tab.basis = std::move(nb);
        tab.m = static_cast<int>(keep.size());
    }

    // Phase 2 with the real costs.
    for (int j = 0; j < n; ++j) tab.at(tab.m, j) = -c[static_cast<size_t>(j)];
    for (int j = n; j < tab.width; ++j) tab.at(tab.m, j) = 0;
    for (int i = 0; i < tab.m; ++i) {
        const Rat cb = c[static_cast<size_t>(tab.basis[static_cast<size_t>(i)])];
        if (cb == 0) continue;
        for (int j = 0; j < tab.width; ++j) tab.at(tab.m, j) += cb * tab.at(i, j);
    }
    if (!tab.iterate(n))
        throw UnboundedPolytopeError("objective is unbounded above");

    SimplexResult res;
    res.value = tab.at(tab.m, tab.rhs());
    res.x.assign(static_cast<size_t>(n), Rat(0));
    for (int i = 0; i < tab.m; ++i)
        res.x[static_cast<size_t>(tab.basis[static_cast<size_t>(i)])] = tab.at(i, tab.rhs());
    res.basis = tab.basis;
    return res;
}

} // namespace gbell
