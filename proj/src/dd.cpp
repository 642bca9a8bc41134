#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "gbell/error.hpp"
#include "gbell/geometry.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gbell {

namespace {

using linalg::IntMat;
using linalg::IntVec;
using linalg::RatMat;

struct Ray {
    IntVec u;                    // primitive integer coordinates, length k
    std::vector<uint64_t> tight; // bitset over processed constraint rows
};

struct Cone {
    int k = 0;
    IntMat rows;
    std::vector<std::vector<uint32_t>> rows_p; // rows reduced mod kRankPrime
    int words = 0;

    bool tight_bit(const Ray& r, int row) const {
        return (r.tight[static_cast<size_t>(row / 64)] >> (row % 64)) & 1;
    }
};

// gcd-reduce without flipping the sign: a ray's direction is meaningful.
void ray_primitive(IntVec& v) {
    Int g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
    if (g == 0 || g == 1) return;
    for (auto& x : v) x /= g;
}

IntVec scale_ray(const std::vector<Rat>& v) {
    Int lcm = 1;
    for (const auto& x : v) {
        const Int d = boost::multiprecision::denominator(x);
        lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
    IntVec out;
    out.reserve(v.size());
    for (const auto& x : v)
        out.push_back(boost::multiprecision::numerator(x) *
                      (lcm / boost::multiprecision::denominator(x)));
    ray_primitive(out);
    return out;
}

Int dot_int(const IntVec& a, const IntVec& b) {
    Int v = 0;
    for (size_t i = 0; i < a.size(); ++i) v += a[i] * b[i];
    return v;
}

int popcount_and(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    int c = 0;
    for (size_t w = 0; w < a.size(); ++w) c += std::popcount(a[w] & b[w]);
    return c;
}

// Rank test on the common tight rows: the pair spans a 2-face exactly when
// that rank is k-2. The modular rank can only undercount, so k-2 there is
// already a proof; anything less falls back to exact integer elimination.
bool adjacent(const Cone& cone, const Ray& a, const Ray& b) {
    if (popcount_and(a.tight, b.tight) < cone.k - 2) return false;
    std::vector<int> idx;
    for (int w = 0; w < cone.words; ++w) {
        uint64_t bits = a.tight[static_cast<size_t>(w)] & b.tight[static_cast<size_t>(w)];
        while (bits) {
            idx.push_back(w * 64 + std::countr_zero(bits));
            bits &= bits - 1;
        }
    }
    std::vector<const std::vector<uint32_t>*> rp;
    rp.reserve(idx.size());
    for (int i : idx) rp.push_back(&cone.rows_p[static_cast<size_t>(i)]);
    const int r = linalg::mod_p_rank(rp, cone.k);
    if (r == cone.k - 2) return true;
    IntMat m;
    m.reserve(idx.size());
    for (int i : idx) m.push_back(cone.rows[static_cast<size_t>(i)]);
    return linalg::bareiss_rank(std::move(m)) == cone.k - 2;
}

Ray combine(const Cone& cone, const Ray& plus, const Int& dplus, const Ray& minus,
            const Int& dminus, int row) {
    Ray w;
    w.u.resize(plus.u.size());
    for (size_t j = 0; j < w.u.size(); ++j) w.u[j] = dplus * minus.u[j] - dminus * plus.u[j];
    ray_primitive(w.u);
    w.tight.resize(static_cast<size_t>(cone.words));
    for (int i = 0; i < cone.words; ++i)
        w.tight[static_cast<size_t>(i)] =
            plus.tight[static_cast<size_t>(i)] & minus.tight[static_cast<size_t>(i)];
    w.tight[static_cast<size_t>(row / 64)] |= uint64_t{1} << (row % 64);
    return w;
}

// ---- kernels -------------------------------------------------------------
// The serial variants are the reference implementation; the parallel ones
// must produce identical output for any worker count.

void partition_serial(const Cone& cone, int row, const std::vector<Ray>& rays,
                      std::vector<Int>& dots) {
    dots.resize(rays.size());
    for (size_t i = 0; i < rays.size(); ++i)
        dots[i] = dot_int(cone.rows[static_cast<size_t>(row)], rays[i].u);
}

void partition_parallel(const Cone& cone, int row, const std::vector<Ray>& rays,
                        std::vector<Int>& dots, int threads) {
    dots.resize(rays.size());
    const auto& crow = cone.rows[static_cast<size_t>(row)];
    const int64_t n = static_cast<int64_t>(rays.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
    for (int64_t i = 0; i < n; ++i)
        dots[static_cast<size_t>(i)] = dot_int(crow, rays[static_cast<size_t>(i)].u);
    (void)threads;
}

std::vector<Ray> generate_serial(const Cone& cone, int row, const std::vector<Ray>& rays,
                                 const std::vector<Int>& dots, const std::vector<int>& plus,
                                 const std::vector<int>& minus) {
    std::vector<Ray> out;
    for (int i : plus)
        for (int j : minus)
            if (adjacent(cone, rays[static_cast<size_t>(i)], rays[static_cast<size_t>(j)]))
                out.push_back(combine(cone, rays[static_cast<size_t>(i)],
                                      dots[static_cast<size_t>(i)], rays[static_cast<size_t>(j)],
                                      dots[static_cast<size_t>(j)], row));
    return out;
}

std::vector<Ray> generate_parallel(const Cone& cone, int row, const std::vector<Ray>& rays,
                                   const std::vector<Int>& dots, const std::vector<int>& plus,
                                   const std::vector<int>& minus, int threads) {
    // Fixed-size blocks of the flattened pair range keep the output order
    // identical to the serial kernel for every worker count.
    const uint64_t pairs = static_cast<uint64_t>(plus.size()) * minus.size();
    constexpr uint64_t kBlock = 2048;
    const uint64_t nblocks = (pairs + kBlock - 1) / kBlock;
    std::vector<std::vector<Ray>> buckets(static_cast<size_t>(nblocks));
    const int64_t nb = static_cast<int64_t>(nblocks);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (int64_t blk = 0; blk < nb; ++blk) {
        const uint64_t lo = static_cast<uint64_t>(blk) * kBlock;
        const uint64_t hi = std::min(lo + kBlock, pairs);
        auto& out = buckets[static_cast<size_t>(blk)];
        for (uint64_t p = lo; p < hi; ++p) {
            const int i = plus[static_cast<size_t>(p / minus.size())];
            const int j = minus[static_cast<size_t>(p % minus.size())];
            if (adjacent(cone, rays[static_cast<size_t>(i)], rays[static_cast<size_t>(j)]))
                out.push_back(combine(cone, rays[static_cast<size_t>(i)],
                                      dots[static_cast<size_t>(i)], rays[static_cast<size_t>(j)],
                                      dots[static_cast<size_t>(j)], row));
        }
    }
    (void)threads;
    std::vector<Ray> out;
    for (auto& b : buckets)
        for (auto& r : b) out.push_back(std::move(r));
    return out;
}

// Next row to insert: the unprocessed row cutting off the most rays
// (counted on a deterministic stride sample when the ray set is large),
// ties broken by the smallest row index.
int pick_row(const Cone& cone, const std::vector<char>& processed, const std::vector<Ray>& rays,
             int threads, bool parallel) {
    std::vector<size_t> sample;
    {
        const size_t n = rays.size();
        const size_t stride = n > 4096 ? (n + 4095) / 4096 : 1;
        for (size_t i = 0; i < n; i += stride) sample.push_back(i);
    }
    std::vector<int> candidates;
    for (int r = 0; r < static_cast<int>(cone.rows.size()); ++r)
        if (!processed[static_cast<size_t>(r)]) candidates.push_back(r);
    std::vector<int64_t> cut(candidates.size(), 0);
    const int64_t nc = static_cast<int64_t>(candidates.size());
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
        for (int64_t c = 0; c < nc; ++c) {
            const auto& row = cone.rows[static_cast<size_t>(candidates[static_cast<size_t>(c)])];
            int64_t neg = 0;
            for (size_t i : sample)
                if (dot_int(row, rays[i].u) < 0) ++neg;
            cut[static_cast<size_t>(c)] = neg;
        }
    } else {
        for (int64_t c = 0; c < nc; ++c) {
            const auto& row = cone.rows[static_cast<size_t>(candidates[static_cast<size_t>(c)])];
            int64_t neg = 0;
            for (size_t i : sample)
                if (dot_int(row, rays[i].u) < 0) ++neg;
            cut[static_cast<size_t>(c)] = neg;
        }
    }
    (void)threads;
    int best = candidates[0];
    int64_t best_cut = cut[0];
    for (size_t c = 1; c < candidates.size(); ++c)
        if (cut[c] > best_cut) {
            best_cut = cut[c];
            best = candidates[c];
        }
    return best;
}

// ---- checkpointing --------------------------------------------------------

uint64_t problem_hash(const Cone& cone) {
    std::ostringstream os;
    os << cone.k << ";";
    for (const auto& row : cone.rows) {
        for (const auto& x : row) os << x << ",";
        os << ";";
    }
    const std::string s = os.str();
    uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

void save_checkpoint(const std::string& path, const Cone& cone, uint64_t hash,
                     const std::vector<char>& processed, const std::vector<Ray>& rays) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        out << "gbell-dd-checkpoint 1\n";
        out << "hash " << hash << "\n";
        out << "k " << cone.k << " rows " << cone.rows.size() << "\n";
        out << "processed";
        for (size_t r = 0; r < processed.size(); ++r)
            if (processed[r]) out << " " << r;
        out << "\n";
        out << "rays " << rays.size() << "\n";
        for (const auto& ray : rays) {
            for (size_t j = 0; j < ray.u.size(); ++j) out << (j ? " " : "") << ray.u[j];
            out << "\n";
        }
    }
    std::rename(tmp.c_str(), path.c_str());
}

bool load_checkpoint(const std::string& path, const Cone& cone, uint64_t hash,
                     std::vector<char>& processed, std::vector<Ray>& rays) {
    std::ifstream in(path);
    if (!in) return false;
    std::string word;
    uint64_t fhash = 0;
    int k = 0;
    size_t nrows = 0, nrays = 0;
    if (!(in >> word) || word != "gbell-dd-checkpoint") return false;
    if (!(in >> word) || word != "1") return false;
    if (!(in >> word >> fhash) || word != "hash" || fhash != hash) return false;
    if (!(in >> word >> k) || word != "k" || k != cone.k) return false;
    if (!(in >> word >> nrows) || word != "rows" || nrows != cone.rows.size()) return false;
    if (!(in >> word) || word != "processed") return false;
    std::vector<char> proc(cone.rows.size(), 0);
    // Row indices until the "rays" keyword.
    while (in >> word) {
        if (word == "rays") break;
        const size_t r = std::stoul(word);
        if (r >= proc.size()) return false;
        proc[r] = 1;
    }
    if (word != "rays" || !(in >> nrays)) return false;
    std::vector<Ray> loaded(nrays);
    for (auto& ray : loaded) {
        ray.u.resize(static_cast<size_t>(cone.k));
        for (auto& x : ray.u) {
            std::string tok;
            if (!(in >> tok)) return false;
            x = Int(tok);
        }
        // Rebuild the tight bitset (and reject stale data) from the dots.
        ray.tight.assign(static_cast<size_t>(cone.words), 0);
        for (size_t r = 0; r < proc.size(); ++r) {
            if (!proc[r]) continue;
            const Int d = dot_int(cone.rows[r], ray.u);
            if (d < 0) return false;
            if (d == 0) ray.tight[r / 64] |= uint64_t{1} << (r % 64);
        }
    }
    processed = std::move(proc);
    rays = std::move(loaded);
    return true;
}

} // namespace

VPolytope enumerate_vertices(const HPolytope& h, const EnumerateOptions& opts) {
    if (h.dim <= 0) throw Error("polytope dimension must be positive");

    // Reduce the equality system; a pivot in the value column means the
    // equalities alone are inconsistent.
    RatMat eq;
    for (int i = 0; i < h.eq_count(); ++i) {
        std::vector<Rat> row = h.eq_coeffs[static_cast<size_t>(i)];
        row.push_back(h.eq_values[static_cast<size_t>(i)]);
        eq.push_back(std::move(row));
    }
    IntMat hom;
    if (!eq.empty()) {
        const std::vector<int> pivots = linalg::rref(eq);
        for (int c : pivots)
            if (c == h.dim) throw InfeasibleError("equality system is inconsistent");
        for (size_t r = 0; r < pivots.size(); ++r) {
            // Equality e.x = v homogenizes to -v*x0 + e.x = 0.
            std::vector<Rat> hrow(static_cast<size_t>(h.dim) + 1);
            hrow[0] = -eq[r][static_cast<size_t>(h.dim)];
            for (int j = 0; j < h.dim; ++j)
                hrow[static_cast<size_t>(j) + 1] = eq[r][static_cast<size_t>(j)];
            hom.push_back(linalg::scale_to_integers(hrow));
        }
    }

    IntMat basis; // kernel basis of the homogenized equalities, rows in R^{dim+1}
    if (hom.empty()) {
        for (int i = 0; i <= h.dim; ++i) {
            IntVec e(static_cast<size_t>(h.dim) + 1, Int(0));
            e[static_cast<size_t>(i)] = 1;
            basis.push_back(std::move(e));
        }
    } else {
        basis = linalg::integer_kernel(hom);
    }
    Cone cone;
    cone.k = static_cast<int>(basis.size());
    if (cone.k == 0) throw InfeasibleError("equalities admit no solution at all");

    // Constraint rows in kernel coordinates: the homogenizing coordinate
    // first, then one row per inequality b - a.x >= 0.
    // Note: these lifts must preserve sign (a flipped row would reverse the
    // inequality), hence ray_primitive/scale_ray and not make_primitive.
    {
        IntVec x0row(static_cast<size_t>(cone.k));
        for (int j = 0; j < cone.k; ++j) x0row[static_cast<size_t>(j)] = basis[static_cast<size_t>(j)][0];
        bool zero = true;
        for (const auto& v : x0row) zero = zero && v == 0;
        if (zero)
            throw InfeasibleError("equalities force the homogenizing coordinate to zero");
        ray_primitive(x0row);
        cone.rows.push_back(std::move(x0row));
    }
    for (int i = 0; i < h.ineq_count(); ++i) {
        std::vector<Rat> c(static_cast<size_t>(h.dim) + 1);
        c[0] = h.ineq_bounds[static_cast<size_t>(i)];
        for (int j = 0; j < h.dim; ++j)
            c[static_cast<size_t>(j) + 1] = -h.ineq_coeffs[static_cast<size_t>(i)][static_cast<size_t>(j)];
        const IntVec ci = scale_ray(c);
        IntVec row(static_cast<size_t>(cone.k));
        bool zero = true;
        for (int j = 0; j < cone.k; ++j) {
            row[static_cast<size_t>(j)] = dot_int(ci, basis[static_cast<size_t>(j)]);
            zero = zero && row[static_cast<size_t>(j)] == 0;
        }
        if (zero) continue; // holds with equality on the whole subspace
        ray_primitive(row);
        if (std::find(cone.rows.begin(), cone.rows.end(), row) == cone.rows.end())
            cone.rows.push_back(std::move(row));
    }

    cone.words = (static_cast<int>(cone.rows.size()) + 63) / 64;
    for (const auto& r : cone.rows) cone.rows_p.push_back(linalg::reduce_mod_p(r));

    const int nrows = static_cast<int>(cone.rows.size());
    const bool parallel = opts.threads != 1;
#ifdef _OPENMP
    const int threads = opts.threads == 0 ? omp_get_max_threads() : opts.threads;
#else
    const int threads = 1;
#endif

    // Initial simplicial cone from the first k independent rows.
    std::vector<char> processed(static_cast<size_t>(nrows), 0);
    std::vector<Ray> rays;
    const uint64_t hash = problem_hash(cone);
    const bool resumed = !opts.checkpoint_path.empty() &&
                         load_checkpoint(opts.checkpoint_path, cone, hash, processed, rays);
    if (!resumed) {
        std::vector<int> chosen;
        {
            RatMat reduced;
            for (int r = 0; r < nrows && static_cast<int>(chosen.size()) < cone.k; ++r) {
                RatMat trial = reduced;
                trial.emplace_back(cone.rows[static_cast<size_t>(r)].begin(),
                                   cone.rows[static_cast<size_t>(r)].end());
                if (linalg::rat_rank(trial) > static_cast<int>(reduced.size())) {
                    linalg::rref(trial);
                    reduced = std::move(trial);
                    chosen.push_back(r);
                }
            }
        }
        if (static_cast<int>(chosen.size()) < cone.k)
            throw UnboundedPolytopeError("feasible set contains a line");
        // Rays = columns of the inverse of the chosen row matrix.
        RatMat m(static_cast<size_t>(cone.k), std::vector<Rat>(static_cast<size_t>(cone.k)));
        for (int i = 0; i < cone.k; ++i)
            for (int j = 0; j < cone.k; ++j)
                m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    cone.rows[static_cast<size_t>(chosen[static_cast<size_t>(i)])][static_cast<size_t>(j)];
        for (int j = 0; j < cone.k; ++j) {
            std::vector<Rat> e(static_cast<size_t>(cone.k), Rat(0));
            e[static_cast<size_t>(j)] = 1;
            const auto sol = linalg::solve_exact(m, e);
            if (!sol) throw Error("internal: chosen initial rows are singular");
            Ray ray;
            ray.u = scale_ray(*sol);
            ray.tight.assign(static_cast<size_t>(cone.words), 0);
            for (int i = 0; i < cone.k; ++i) {
                if (i == j) continue;
                const int r = chosen[static_cast<size_t>(i)];
                ray.tight[static_cast<size_t>(r / 64)] |= uint64_t{1} << (r % 64);
            }
            rays.push_back(std::move(ray));
        }
        for (int r : chosen) processed[static_cast<size_t>(r)] = 1;
    }

    // Insertion loop.
    for (;;) {
        int remaining = 0;
        for (char p : processed) remaining += !p;
        if (!remaining || rays.empty()) break;
        const int row = pick_row(cone, processed, rays, threads, parallel);

        std::vector<Int> dots;
        if (parallel)
            partition_parallel(cone, row, rays, dots, threads);
        else
            partition_serial(cone, row, rays, dots);

        std::vector<int> plus, minus;
        for (size_t i = 0; i < rays.size(); ++i) {
            if (dots[i] > 0)
                plus.push_back(static_cast<int>(i));
            else if (dots[i] < 0)
                minus.push_back(static_cast<int>(i));
        }

        std::vector<Ray> next;
        if (minus.empty()) {
            next = std::move(rays);
            for (size_t i = 0; i < next.size(); ++i)
                if (dots[i] == 0)
                    next[i].tight[static_cast<size_t>(row / 64)] |= uint64_t{1} << (row % 64);
        } else {
            std::vector<Ray> created =
                parallel ? generate_parallel(cone, row, rays, dots, plus, minus, threads)
                         : generate_serial(cone, row, rays, dots, plus, minus);
            next.reserve(rays.size() - minus.size() + created.size());
            for (size_t i = 0; i < rays.size(); ++i) {
                if (dots[i] < 0) continue;
                if (dots[i] == 0)
                    rays[i].tight[static_cast<size_t>(row / 64)] |= uint64_t{1} << (row % 64);
                next.push_back(std::move(rays[i]));
            }
            for (auto& r : created) next.push_back(std::move(r));
        }
        rays = std::move(next);
        processed[static_cast<size_t>(row)] = 1;

        // Persist before enforcing the budget so an interrupted run can be
        // resumed with a larger cap.
        if (!opts.checkpoint_path.empty())
            save_checkpoint(opts.checkpoint_path, cone, hash, processed, rays);
        if (rays.size() > opts.budget)
            throw BudgetExceededError("intermediate ray count " + std::to_string(rays.size()) +
                                      " exceeds the budget of " + std::to_string(opts.budget));
    }

    if (rays.empty()) throw InfeasibleError("polytope is empty");

    // Back to x-space: scale each ray to homogenizing coordinate 1.
    VPolytope out;
    out.dim = h.dim;
    out.vertices.reserve(rays.size());
    for (const auto& ray : rays) {
        std::vector<Rat> y(static_cast<size_t>(h.dim) + 1, Rat(0));
        for (int i = 0; i <= h.dim; ++i) {
            Int acc = 0;
            for (int j = 0; j < cone.k; ++j)
                acc += basis[static_cast<size_t>(j)][static_cast<size_t>(i)] *
                       ray.u[static_cast<size_t>(j)];
            y[static_cast<size_t>(i)] = Rat(acc);
        }
        if (y[0] == 0)
            throw UnboundedPolytopeError("extreme ray with vanishing homogenizing coordinate");
        if (y[0] < 0) throw Error("internal: homogenizing coordinate went negative");
        std::vector<Rat> x(static_cast<size_t>(h.dim));
        for (int i = 0; i < h.dim; ++i) x[static_cast<size_t>(i)] = y[static_cast<size_t>(i) + 1] / y[0];
        if (!h.contains(x)) throw Error("internal: enumerated point violates the input rows");
        out.vertices.push_back(std::move(x));
    }
    out.sort_canonical();
    if (!opts.checkpoint_path.empty()) std::remove(opts.checkpoint_path.c_str());
    return out;
}

} // namespace gbell
