#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace gbell {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

// "p/q" in lowest terms; integers print without the "/1".
std::string rat_to_string(const Rat& r);

// Accepts "p", "p/q", optional leading sign. Throws ParseError on garbage.
Rat rat_from_string(std::string_view s);

// Best rational approximation of x within tol, by continued fractions.
// |x| <= tol returns 0. tol must be in (0, 1e-3].
Rat rationalize(double x, double tol);

std::string rat_vector_to_string(const std::vector<Rat>& v);

} // namespace gbell
