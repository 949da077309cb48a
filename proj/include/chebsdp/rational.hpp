#pragma once

// Exact rational scalar types used by the algebra layers.  All symbolic
// computation (root data, Chebyshev structure constants, SDP coefficient
// matrices) is carried out over Q or Q(i); floating point enters only in
// the numeric evaluation oracle and the interior-point solver.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebsdp {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using QVec = std::vector<Rational>;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// A complex number with exact rational real and imaginary parts.  Used for
// coefficients of invariant polynomials on root systems where -id is not in
// the Weyl group (type A and odd-rank D), and internally for the realified
// multiplication tables.
struct CRat {
  Rational re{0};
  Rational im{0};

  CRat() = default;
  CRat(Rational r) : re(std::move(r)) {}                          // NOLINT(google-explicit-constructor)
  CRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  CRat(int r) : re(r) {}                                          // NOLINT(google-explicit-constructor)

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  CRat conj() const { return CRat(re, -im); }

  CRat& operator+=(const CRat& o) { re += o.re; im += o.im; return *this; }
  CRat& operator-=(const CRat& o) { re -= o.re; im -= o.im; return *this; }

  friend CRat operator+(const CRat& a, const CRat& b) { return CRat(a.re + b.re, a.im + b.im); }
  friend CRat operator-(const CRat& a, const CRat& b) { return CRat(a.re - b.re, a.im - b.im); }
  friend CRat operator-(const CRat& a) { return CRat(-a.re, -a.im); }
  friend CRat operator*(const CRat& a, const CRat& b) {
    return CRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend CRat operator/(const CRat& a, const Rational& s) { return CRat(a.re / s, a.im / s); }
  friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

// ---- small exact linear algebra helpers (dense, Gauss elimination) ----

using QMat = std::vector<QVec>;

inline Rational dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Solves M x = rhs for square nonsingular M.  Throws on singular input.
QVec solve_linear(QMat M, QVec rhs);

// Inverse of a square nonsingular rational matrix.
QMat invert(const QMat& M);

// Least-squares-free exact solve of an (possibly overdetermined but
// consistent) system: expresses `v` in the basis given by the columns of
// `basis` (each a QVec of the same dimension).  Throws if inconsistent or if
// the basis vectors are linearly dependent.
QVec coordinates_in_basis(const std::vector<QVec>& basis, const QVec& v);

}  // namespace chebsdp
