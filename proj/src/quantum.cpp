#include "gbell/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>

#include "gbell/error.hpp"
#include "gbell/geometry.hpp"

namespace gbell::quantum {

namespace {

constexpr double kStateTol = 1e-12;
constexpr double kCommuteTol = 1e-10;

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

void require_hermitian(const Mat& m, const std::string& what) {
    if (m.rows() != m.cols())
        throw ConstructionError(what + " is not square");
    if (max_abs(m - m.adjoint()) > kStateTol)
        throw ConstructionError(what + " is not Hermitian");
}

void require_state(const Mat& rho) {
    require_hermitian(rho, "state");
    if (std::abs(rho.trace().real() - 1.0) > kStateTol || std::abs(rho.trace().imag()) > kStateTol)
        throw ConstructionError("state trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kStateTol)
        throw ConstructionError("state has a negative eigenvalue");
}

void require_dichotomic(const Mat& o, const std::string& what) {
    require_hermitian(o, what);
    Mat id = Mat::Identity(o.rows(), o.cols());
    if (max_abs(o * o - id) > kStateTol)
        throw ConstructionError(what + " does not square to the identity");
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// (I + sign * O) / 2
Mat outcome_projector(const Mat& o, int sign) {
    Mat id = Mat::Identity(o.rows(), o.cols());
    return 0.5 * (id + static_cast<double>(sign) * o);
}

double float_correlator(const FloatBehavior& fb, int ci, const std::vector<int>& ids) {
    const Scenario& s = *fb.scenario;
    const auto& members = s.context(ci);
    std::vector<int> positions;
    for (int id : ids) {
        auto it = std::lower_bound(members.begin(), members.end(), id);
        if (it == members.end() || *it != id)
            throw IncompatibleSetError("measurement not in the requested context");
        positions.push_back(static_cast<int>(it - members.begin()));
    }
    double acc = 0.0;
    for (int t = 0; t < s.tuple_count(ci); ++t) {
        int prod = 1;
        for (int pos : positions) prod *= s.outcome(ci, t, pos);
        acc += static_cast<double>(prod) * fb.at(ci, t);
    }
    return acc;
}

} // namespace

PentagonSetup pentagon_setup() {
    const double c5 = std::cos(std::numbers::pi / 5.0);
    const double cos2 = c5 / (1.0 + c5);
    const double ct = std::sqrt(cos2);
    const double st = std::sqrt(1.0 - cos2);

    PentagonSetup setup;
    setup.alice = Mat::Zero(2, 2);
    setup.alice(0, 0) = 1.0;
    setup.alice(1, 1) = -1.0;

    for (int m = 0; m < 5; ++m) {
        const double phi = static_cast<double>(m) * 4.0 * std::numbers::pi / 5.0;
        Eigen::Vector3cd v;
        v << ct, st * std::cos(phi), st * std::sin(phi);
        Mat b = 2.0 * (v * v.adjoint()) - Mat::Identity(3, 3);
        setup.bob.push_back(b);
    }

    setup.state = Mat::Zero(6, 6);
    setup.state(0, 0) = 0.5; // |0>_A (x) |0>_B
    setup.state(5, 5) = 0.5; // |1>_A (x) |2>_B

    setup.scenario = BellScenario::make(alice_side(1), n_cycle(5));
    return setup;
}

FloatBehavior behavior_from_state(const BellScenario& bs, const Mat& state,
                                  const std::vector<Mat>& alice_obs,
                                  const std::vector<Mat>& bob_obs) {
    const Scenario& joint = bs.joint();
    const int na = bs.alice().measurement_count();
    if (static_cast<int>(alice_obs.size()) != na)
        throw ScenarioMismatchError("one observable per Alice setting is required");
    if (static_cast<int>(bob_obs.size()) != bs.bob().measurement_count())
        throw ScenarioMismatchError("one observable per Bob measurement is required");

    for (size_t i = 0; i < alice_obs.size(); ++i)
        require_dichotomic(alice_obs[i], "Alice observable " + std::to_string(i));
    for (size_t i = 0; i < bob_obs.size(); ++i)
        require_dichotomic(bob_obs[i], "Bob observable " + std::to_string(i));
    const Eigen::Index da = alice_obs.empty() ? 0 : alice_obs[0].rows();
    const Eigen::Index db = bob_obs.empty() ? 0 : bob_obs[0].rows();
    for (const Mat& o : alice_obs)
        if (o.rows() != da) throw ConstructionError("Alice observables act on different spaces");
    for (const Mat& o : bob_obs)
        if (o.rows() != db) throw ConstructionError("Bob observables act on different spaces");
    require_state(state);
    if (state.rows() != da * db)
        throw ConstructionError("state dimension does not match the observables");

    for (int ci = 0; ci < bs.bob().context_count(); ++ci) {
        const auto& ctx = bs.bob().context(ci);
        for (size_t i = 0; i < ctx.size(); ++i)
            for (size_t j = i + 1; j < ctx.size(); ++j) {
                const Mat& x = bob_obs[static_cast<size_t>(ctx[i])];
                const Mat& y = bob_obs[static_cast<size_t>(ctx[j])];
                if (max_abs(x * y - y * x) > kCommuteTol)
                    throw IncompatibleContextError(
                        "observables " + bs.bob().label(ctx[i]) + " and " + bs.bob().label(ctx[j]) +
                        " do not commute but share a context");
            }
    }

    FloatBehavior fb;
    fb.scenario = bs.joint_ptr();
    fb.p.assign(static_cast<size_t>(joint.dim()), 0.0);
    for (int ci = 0; ci < joint.context_count(); ++ci) {
        const auto& members = joint.context(ci);
        for (int t = 0; t < joint.tuple_count(ci); ++t) {
            Mat pa = Mat::Identity(da, da);
            Mat pb = Mat::Identity(db, db);
            for (size_t pos = 0; pos < members.size(); ++pos) {
                const int id = members[pos];
                const int sign = joint.outcome(ci, t, static_cast<int>(pos));
                if (id < na)
                    pa = pa * outcome_projector(alice_obs[static_cast<size_t>(id)], sign);
                else
                    pb = pb * outcome_projector(bob_obs[static_cast<size_t>(id - na)], sign);
            }
            const std::complex<double> tr = (state * kron(pa, pb)).trace();
            fb.p[static_cast<size_t>(joint.index(ci, t))] = tr.real();
        }
    }
    return fb;
}

double nsnd_residual(const BellScenario& bs, const FloatBehavior& fb) {
    if (!(*fb.scenario == bs.joint()))
        throw ScenarioMismatchError("behavior does not live on the joint scenario");
    const HPolytope h = nsnd_hrep(bs);
    double worst = 0.0;
    for (int r = 0; r < h.eq_count(); ++r) {
        double lhs = 0.0;
        for (int c = 0; c < h.dim; ++c) {
            const Rat& coeff = h.eq_coeffs[static_cast<size_t>(r)][static_cast<size_t>(c)];
            if (coeff != 0) lhs += coeff.convert_to<double>() * fb.p[static_cast<size_t>(c)];
        }
        worst = std::max(worst, std::abs(lhs - h.eq_values[static_cast<size_t>(r)].convert_to<double>()));
    }
    return worst;
}

RationalizedBehavior rationalize_behavior(const BellScenario& bs, const FloatBehavior& fb,
                                          double tol) {
    if (!(*fb.scenario == bs.joint()))
        throw ScenarioMismatchError("behavior does not live on the joint scenario");
    const int dim = static_cast<int>(fb.p.size());
    std::vector<Rat> x(fb.p.size());
    for (size_t i = 0; i < fb.p.size(); ++i) x[i] = rationalize(fb.p[i], tol);

    const HPolytope h = nsnd_hrep(bs);
    // Augmented rows [E | residual]; eliminating them in descending-value
    // column order confines the correction to the largest coordinates.
    std::vector<std::vector<Rat>> rows;
    for (int r = 0; r < h.eq_count(); ++r) {
        Rat lhs = 0;
        const auto& coeffs = h.eq_coeffs[static_cast<size_t>(r)];
        for (int c = 0; c < dim; ++c)
            if (coeffs[static_cast<size_t>(c)] != 0) lhs += coeffs[static_cast<size_t>(c)] * x[static_cast<size_t>(c)];
        Rat resid = h.eq_values[static_cast<size_t>(r)] - lhs;
        std::vector<Rat> row = coeffs;
        row.push_back(resid);
        rows.push_back(std::move(row));
    }

    std::vector<int> order(static_cast<size_t>(dim));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return x[static_cast<size_t>(a)] > x[static_cast<size_t>(b)]; });

    std::vector<std::pair<size_t, int>> pivots; // (row, column)
    size_t next_row = 0;
    for (int col : order) {
        if (next_row >= rows.size()) break;
        size_t pr = next_row;
        while (pr < rows.size() && rows[pr][static_cast<size_t>(col)] == 0) ++pr;
        if (pr == rows.size()) continue;
        std::swap(rows[next_row], rows[pr]);
        const Rat inv_pivot = Rat(1) / rows[next_row][static_cast<size_t>(col)];
        for (Rat& v : rows[next_row]) v *= inv_pivot;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == next_row) continue;
            const Rat factor = rows[r][static_cast<size_t>(col)];
            if (factor == 0) continue;
            for (size_t c = 0; c < rows[r].size(); ++c)
                rows[r][static_cast<size_t>(c)] -= factor * rows[next_row][static_cast<size_t>(c)];
        }
        pivots.emplace_back(next_row, col);
        ++next_row;
    }
    for (size_t r = next_row; r < rows.size(); ++r)
        if (rows[r].back() != 0)
            throw ConstructionError("consistency repair has no solution; input is too far from the constraint set");
    for (const auto& [r, col] : pivots)
        x[static_cast<size_t>(col)] += rows[r].back();

    double radius = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0)
            throw NotABehaviorError("repaired point has a negative entry at coordinate " +
                                    std::to_string(i) + ": " + rat_to_string(x[i]));
        radius = std::max(radius, std::abs(fb.p[i] - x[i].convert_to<double>()));
    }
    RationalizedBehavior out{behavior_from_table(bs.joint_ptr(), std::move(x)), radius};
    return out;
}

double classicality_value(const FloatBehavior& fb) {
    const Scenario& joint = *fb.scenario;
    if (joint.context_count() != 5)
        throw ScenarioMismatchError("classicality value needs one Alice setting against a 5-cycle");
    for (int ci = 0; ci < 5; ++ci)
        if (static_cast<int>(joint.context(ci).size()) != 3 || joint.context(ci)[0] != 0)
            throw ScenarioMismatchError("classicality value needs one Alice setting against a 5-cycle");

    double value = 3.0 * float_correlator(fb, 0, {0});
    for (int ci = 0; ci < 5; ++ci) {
        const auto& members = joint.context(ci);
        const std::vector<int> edge{members[1], members[2]};
        const std::vector<int> all{members[0], members[1], members[2]};
        value += float_correlator(fb, ci, edge) + float_correlator(fb, ci, all);
    }
    return value;
}

double conditional_edge_sum(const FloatBehavior& fb, int a) {
    if (a != 1 && a != -1)
        throw InvalidProbabilityError("conditioning outcome must be +1 or -1");
    const Scenario& joint = *fb.scenario;
    if (joint.context_count() != 5)
        throw ScenarioMismatchError("conditional edge sum needs one Alice setting against a 5-cycle");

    double pa = 0.0;
    for (int t = 0; t < joint.tuple_count(0); ++t)
        if (joint.outcome(0, t, 0) == a) pa += fb.at(0, t);
    if (pa <= 0.0)
        throw ConditioningOnNullError("conditioning outcome has probability zero");

    double sum = 0.0;
    for (int ci = 0; ci < 5; ++ci) {
        if (static_cast<int>(joint.context(ci).size()) != 3 || joint.context(ci)[0] != 0)
            throw ScenarioMismatchError("conditional edge sum needs one Alice setting against a 5-cycle");
        double acc = 0.0;
        for (int t = 0; t < joint.tuple_count(ci); ++t) {
            if (joint.outcome(ci, t, 0) != a) continue;
            acc += fb.at(ci, t) * static_cast<double>(joint.outcome(ci, t, 1) * joint.outcome(ci, t, 2));
        }
        sum += acc / pa;
    }
    return sum;
}

} // namespace gbell::quantum
