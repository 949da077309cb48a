#include "chebsdp/poly_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chebsdp {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty coefficient");
  const auto dot = text.find('.');
  try {
    if (dot == std::string::npos) return Rational(text);  // integer or "p/q"
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const bool neg = !digits.empty() && digits[0] == '-';
    if (neg || (!digits.empty() && digits[0] == '+')) digits.erase(0, 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad digits");
    Integer num(digits);
    Integer den = 1;
    for (size_t k = text.size() - dot - 1; k > 0; --k) den *= 10;
    Rational r(num, den);
    return neg ? -r : r;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse coefficient '" + text + "'");
  }
}

InvariantPoly parse_poly(const RootSystemData& data, std::istream& in) {
  InvariantPoly p(data);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": expected 'a_1 ... a_n : c_re [c_im]'");
    std::istringstream left(line.substr(0, colon));
    std::vector<int> coords;
    int a;
    while (left >> a) coords.push_back(a);
    if (!left.eof())
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": weight coordinates must be integers");
    if (static_cast<int>(coords.size()) != data.rank)
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected " +
                               std::to_string(data.rank) + " weight coordinates, got " +
                               std::to_string(coords.size()));
    for (int c : coords)
      if (c < 0)
        throw std::runtime_error("line " + std::to_string(lineno) +
                                 ": weights must be dominant (nonnegative coordinates)");

    std::istringstream right(line.substr(colon + 1));
    std::string re_text, im_text, extra;
    right >> re_text;
    if (re_text.empty())
      throw std::runtime_error("line " + std::to_string(lineno) + ": missing coefficient");
    Rational re, im = 0;
    try {
      re = parse_rational(re_text);
      if (right >> im_text) im = parse_rational(im_text);
    } catch (const std::exception& e) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (right >> extra)
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": trailing input '" + extra + "'");
    p.add_term(Weight(coords), CRat(re, im));
  }
  return p;
}

InvariantPoly parse_poly_file(const RootSystemData& data, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open polynomial file: " + path);
  try {
    return parse_poly(data, in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_poly(const InvariantPoly& p, std::ostream& out) {
  for (const auto& [w, c] : p.terms) {
    for (int i = 0; i < w.size(); ++i) out << (i ? " " : "") << w.coords[i];
    out << " : " << c.re;
    if (c.im != 0) out << ' ' << c.im;
    out << '\n';
  }
}

}  // namespace chebsdp
