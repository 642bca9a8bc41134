#include "gbell/rational.hpp"

#include "gbell/error.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace gbell {

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1)
        os << '/' << denominator(r);
    return os.str();
}

Rat rat_from_string(std::string_view s) {
    if (s.empty())
        throw ParseError("empty rational literal");
    const auto slash = s.find('/');
    auto check_int = [&](std::string_view t) {
        if (t.empty())
            throw ParseError("bad rational literal: '" + std::string(s) + "'");
        size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        if (i == t.size())
            throw ParseError("bad rational literal: '" + std::string(s) + "'");
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                throw ParseError("bad rational literal: '" + std::string(s) + "'");
    };
    try {
        if (slash == std::string_view::npos) {
            check_int(s);
            return Rat(Int(std::string(s)));
        }
        const auto num = s.substr(0, slash);
        const auto den = s.substr(slash + 1);
        check_int(num);
        check_int(den);
        Int d{std::string(den)};
        if (d == 0)
            throw ParseError("zero denominator in '" + std::string(s) + "'");
        return Rat(Int(std::string(num)), d);
    } catch (const std::runtime_error& e) {
        throw ParseError(std::string("bad rational literal: ") + e.what());
    }
}

Rat rationalize(double x, double tol) {
    if (!(tol > 0) || tol > 1e-3)
        throw Error("rationalize: tolerance must be in (0, 1e-3]");
    if (!std::isfinite(x))
        throw Error("rationalize: non-finite input");
    if (std::abs(x) <= tol)
        return Rat(0);
    const bool neg = x < 0;
    const double ax = std::abs(x);
    // Convergents h/k of the continued fraction of ax.
    Int h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double xi = ax;
    for (int it = 0; it < 64; ++it) {
        const double fa = std::floor(xi);
        Int a{static_cast<long long>(fa)};
        Int h2 = a * h1 + h0;
        Int k2 = a * k1 + k0;
        h0 = h1; h1 = h2;
        k0 = k1; k1 = k2;
        if (k1 > 0) {
            const double approx = Rat(h1, k1).convert_to<double>();
            if (std::abs(approx - ax) <= tol)
                break;
        }
        const double frac = xi - fa;
        if (frac < 1e-18)
            break;
        xi = 1.0 / frac;
    }
    Rat r(h1, k1);
    return neg ? Rat(-r) : r;
}

std::string rat_vector_to_string(const std::vector<Rat>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ' ';
        out += rat_to_string(v[i]);
    }
    return out;
}

} // namespace gbell
