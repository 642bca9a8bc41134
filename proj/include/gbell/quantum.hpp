#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gbell/behavior.hpp"
#include "gbell/scenario.hpp"

namespace gbell::quantum {

using Mat = Eigen::MatrixXcd;

// Floating-point behavior produced by quantum states; same coordinate
// layout as Behavior.
struct FloatBehavior {
    ScenarioPtr scenario;
    std::vector<double> p;

    double at(int ci, int t) const { return p[static_cast<size_t>(scenario->index(ci, t))]; }
};

// The qubit-qutrit demonstration: a separable two-outcome state, Alice
// measuring sigma_z, Bob holding the five pentagon observables
// B_j = 2|v_j><v_j| - I built on cos^2(theta) = cos(pi/5)/(1+cos(pi/5)).
struct PentagonSetup {
    Mat state;             // 6x6 density matrix on C^2 (x) C^3
    Mat alice;             // sigma_z
    std::vector<Mat> bob;  // five 3x3 dichotomic observables
    BellScenario scenario; // one Alice setting against the 5-cycle
};

PentagonSetup pentagon_setup();

// p(a, b | x, C) = Tr[rho (P^A_a (x) prod_{m in C} P^B_m(b_m))] with
// P_{+1} = (I+O)/2. Validates the state (Hermitian, PSD, unit trace within
// 1e-12), every observable (Hermitian, O^2 = I within 1e-12), and pairwise
// commutation inside each Bob context within 1e-10
// (IncompatibleContextError otherwise).
FloatBehavior behavior_from_state(const BellScenario& bs, const Mat& state,
                                  const std::vector<Mat>& alice_obs,
                                  const std::vector<Mat>& bob_obs);

// Largest absolute residual of the NSND equality rows (normalization
// included) evaluated on the float data.
double nsnd_residual(const BellScenario& bs, const FloatBehavior& fb);

struct RationalizedBehavior {
    Behavior behavior;
    // max-norm distance between the float input and the exact output.
    double approximation_radius;
};

// Continued-fraction rounding at `tol`, followed by an exact repair step
// that restores the NSND equalities: the residual is absorbed into the
// largest coordinates (pivot columns chosen in descending value order), so
// boundary zeros stay exact. Throws NotABehaviorError if the repaired point
// leaves the nonnegative orthant.
RationalizedBehavior rationalize_behavior(const BellScenario& bs, const FloatBehavior& fb,
                                          double tol = 1e-12);

// 3<A_0> + sum_j (<B_j B_{j+1}> + <A_0 B_j B_{j+1}>), evaluated in floating
// point on the one-setting pentagon scenario. Classical behaviors stay
// >= -3; the demonstration state reaches 5 - 4*sqrt(5).
double classicality_value(const FloatBehavior& fb);

// sum_j <B_j B_{j+1}> of Bob's behavior conditioned on Alice's outcome
// (a = +1 or -1). Throws ConditioningOnNullError when p(a) = 0.
double conditional_edge_sum(const FloatBehavior& fb, int a);

} // namespace gbell::quantum
