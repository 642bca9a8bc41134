#pragma once

#include <optional>
#include <vector>

#include "gbell/behavior.hpp"
#include "gbell/geometry.hpp"
#include "gbell/scenario.hpp"

namespace gbell {

enum class FractionKind { contextual, nonlocal, nonclassical };

struct WeightedVertex {
    Rat weight;
    std::vector<Rat> point;
};

// Exact decomposition certificate for one fraction quantifier:
//   input = sum_k classical_part[k].weight * classical_part[k].point
//         + value * free_part
// with all weights >= 0 summing to 1 - value, and free_part a member of the
// ambient (ND or NSND) polytope. free_part is absent exactly when value = 0.
struct FractionCertificate {
    FractionKind kind;
    Rat value;
    std::vector<WeightedVertex> classical_part;
    std::optional<Behavior> free_part;
    // Nonzero for inputs that were rationalized from floating point: the
    // max-norm distance between the float data and the rational behavior the
    // certificate actually refers to.
    double approximation_radius = 0.0;
};

// Weight that can be pushed onto mixtures of global outcome assignments of
// b's scenario; the contextual fraction is the remainder. Requires a
// nondisturbing input (SignalingError otherwise).
FractionCertificate contextual_fraction(const Behavior& b);

// Same decomposition against products (Alice assignment) x (Bob
// nondisturbing behavior). For cycle Bobs the generator list is analytic;
// otherwise the candidates are taken from the faces of Bob's nondisturbing
// polytope selected by b's support (enumerated per Alice assignment).
// Requires b in the NSND polytope (SignalingError otherwise).
FractionCertificate nonlocal_fraction(const BellScenario& bs, const Behavior& b,
                                      const EnumerateOptions& opts = {});

// Decomposition against the global outcome assignments of the joint
// scenario. Requires b in the NSND polytope.
FractionCertificate nonclassical_fraction(const BellScenario& bs, const Behavior& b);

// Exactness check: recombine the certificate and compare with b.
bool certificate_reconstructs(const FractionCertificate& c, const Behavior& b);

struct TradeoffQuantifiers {
    FractionCertificate nonlocal;
    FractionCertificate contextual; // of bob_marginal(b)
    FractionCertificate nonclassical;
    bool holds; // nonlocal.value + contextual.value <= nonclassical.value
};

// Computes all three quantifiers of an NSND behavior and reports whether
// their trade-off relation holds (it provably does on small cycles and
// provably fails on the square-grid counterexample, so no assertion here).
TradeoffQuantifiers check_quantifier_tradeoff(const BellScenario& bs, const Behavior& b,
                                              const EnumerateOptions& opts = {});

} // namespace gbell
