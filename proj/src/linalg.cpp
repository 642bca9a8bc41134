#include "gbell/linalg.hpp"

#include <boost/multiprecision/gmp.hpp>

namespace gbell::linalg {

std::vector<int> rref(RatMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (m[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(m[static_cast<size_t>(r)], m[static_cast<size_t>(pr)]);
        const Rat inv = Rat(1) / m[static_cast<size_t>(r)][static_cast<size_t>(c)];
        for (int j = c; j < cols; ++j) m[static_cast<size_t>(r)][static_cast<size_t>(j)] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            const Rat f = m[static_cast<size_t>(i)][static_cast<size_t>(c)];
            if (f == 0) continue;
            for (int j = c; j < cols; ++j)
                m[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                    f * m[static_cast<size_t>(r)][static_cast<size_t>(j)];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rat_rank(RatMat m) { return static_cast<int>(rref(m).size()); }

void make_primitive(IntVec& v) {
    Int g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
    if (g == 0) return;
    for (auto& x : v) x /= g;
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
}

IntMat integer_kernel(const IntMat& m) {
    if (m.empty()) return {};
    const int cols = static_cast<int>(m[0].size());
    RatMat rm(m.size());
    for (size_t i = 0; i < m.size(); ++i) rm[i].assign(m[i].begin(), m[i].end());
    const std::vector<int> pivots = rref(rm);
    std::vector<char> is_pivot(static_cast<size_t>(cols), 0);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = 1;
    IntMat basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        // Kernel vector with 1 in the free column, -entry in pivot columns.
        std::vector<Rat> v(static_cast<size_t>(cols), Rat(0));
        v[static_cast<size_t>(free)] = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<size_t>(pivots[r])] = -rm[r][static_cast<size_t>(free)];
        basis.push_back(scale_to_integers(v));
    }
    return basis;
}

IntVec scale_to_integers(const std::vector<Rat>& v) {
    Int lcm = 1;
    for (const auto& x : v) {
        const Int d = boost::multiprecision::denominator(x);
        lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
    IntVec out;
    out.reserve(v.size());
    for (const auto& x : v)
        out.push_back(boost::multiprecision::numerator(x) * (lcm / boost::multiprecision::denominator(x)));
    make_primitive(out);
    return out;
}

std::optional<std::vector<Rat>> solve_exact(RatMat a, std::vector<Rat> rhs) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    for (int i = 0; i < rows; ++i) a[static_cast<size_t>(i)].push_back(rhs[static_cast<size_t>(i)]);
    const std::vector<int> pivots = rref(a);
    for (int c : pivots)
        if (c == cols) return std::nullopt; // pivot in the rhs column
    std::vector<Rat> x(static_cast<size_t>(cols), Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r)
        x[static_cast<size_t>(pivots[r])] = a[r][static_cast<size_t>(cols)];
    return x;
}

int bareiss_rank(IntMat m) {
    if (m.empty()) return 0;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    Int prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (m[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(m[static_cast<size_t>(r)], m[static_cast<size_t>(pr)]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j)
                m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    (m[static_cast<size_t>(r)][static_cast<size_t>(c)] *
                         m[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                     m[static_cast<size_t>(i)][static_cast<size_t>(c)] *
                         m[static_cast<size_t>(r)][static_cast<size_t>(j)]) /
                    prev;
            m[static_cast<size_t>(i)][static_cast<size_t>(c)] = 0;
        }
        prev = m[static_cast<size_t>(r)][static_cast<size_t>(c)];
        ++r;
    }
    return r;
}

std::vector<uint32_t> reduce_mod_p(const IntVec& v) {
    std::vector<uint32_t> out;
    out.reserve(v.size());
    const Int p = kRankPrime;
    for (const auto& x : v) {
        Int r = x % p;
        if (r < 0) r += p;
        out.push_back(r.convert_to<uint32_t>());
    }
    return out;
}

int mod_p_rank(const std::vector<const std::vector<uint32_t>*>& rows, int cols) {
    const uint64_t p = kRankPrime;
    std::vector<std::vector<uint64_t>> m;
    m.reserve(rows.size());
    for (const auto* r : rows) m.emplace_back(r->begin(), r->end());
    const int nr = static_cast<int>(m.size());
    int rank = 0;
    for (int c = 0; c < cols && rank < nr; ++c) {
        int pr = -1;
        for (int i = rank; i < nr; ++i)
            if (m[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(m[static_cast<size_t>(rank)], m[static_cast<size_t>(pr)]);
        // Normalize the pivot row via Fermat inverse.
        uint64_t inv = 1, base = m[static_cast<size_t>(rank)][static_cast<size_t>(c)], e = p - 2;
        while (e) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        for (int j = c; j < cols; ++j)
            m[static_cast<size_t>(rank)][static_cast<size_t>(j)] =
                m[static_cast<size_t>(rank)][static_cast<size_t>(j)] * inv % p;
        for (int i = rank + 1; i < nr; ++i) {
            const uint64_t f = m[static_cast<size_t>(i)][static_cast<size_t>(c)];
            if (!f) continue;
            for (int j = c; j < cols; ++j) {
                uint64_t sub = f * m[static_cast<size_t>(rank)][static_cast<size_t>(j)] % p;
                uint64_t& cell = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
                cell = (cell + p - sub) % p;
            }
        }
        ++rank;
    }
    return rank;
}

} // namespace gbell::linalg
