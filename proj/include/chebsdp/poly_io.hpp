#pragma once

// Text format for invariant polynomials (CLI input/output): one term per
// line, "a_1 a_2 ... a_n : c_re [c_im]"; '#' starts a comment; blank lines
// are ignored.  Coefficients may be integers, fractions ("p/q") or decimals
// ("-1.25"), all parsed exactly.  Repeated weights accumulate.

#include "chebsdp/chebpoly.hpp"

#include <iosfwd>
#include <string>

namespace chebsdp {

// Exact rational from an integer, fraction or decimal literal.
Rational parse_rational(const std::string& text);

// Throws std::runtime_error with a "line N:" prefix on malformed input.
InvariantPoly parse_poly(const RootSystemData& data, std::istream& in);
InvariantPoly parse_poly_file(const RootSystemData& data, const std::string& path);

void write_poly(const InvariantPoly& p, std::ostream& out);

}  // namespace chebsdp
