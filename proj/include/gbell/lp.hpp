#pragma once

#include "gbell/linalg.hpp"

namespace gbell {

struct SimplexResult {
    Rat value;
    std::vector<Rat> x;      // a vertex of { A x = b, x >= 0 }
    std::vector<int> basis;  // basic column of each surviving tableau row
};

// Maximize c.x over { A x = b, x >= 0 } with exact rationals. Dantzig
// pivoting, falling back to Bland's rule permanently after a run of
// degenerate pivots so termination is guaranteed. Redundant equality rows
// are dropped. Throws InfeasibleError / UnboundedPolytopeError.
SimplexResult simplex_max(const linalg::RatMat& a, const std::vector<Rat>& b,
                          const std::vector<Rat>& c);

} // namespace gbell
