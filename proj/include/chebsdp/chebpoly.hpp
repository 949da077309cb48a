#pragma once

// Algebra of Weyl-invariant trigonometric polynomials in the generalized
// Chebyshev basis {T_lambda}.  Products are computed with the orbit
// recurrence  T_lambda * T_nu = (1/|W nu|) sum_{mu in W nu} T_dom(lambda+mu),
// exactly over Q(i).  For root systems where -id is not in the Weyl group
// (type A, odd-rank D) there is a parallel *realified* basis
//   That_lambda = Re theta_lambda   for the lex-larger weight of a
//                                   conjugate pair (and for sigma-fixed ones),
//   That_{sigma(lambda)} = Im theta_lambda  for the lex-smaller partner,
// so that real-valued polynomials get real rational coordinates.  The
// convention makes That_{omega_i} = Re theta_{omega_i} for i < sigma(i),
// i.e. the realified coordinates are zhat_i = Re z_i, zhat_{sigma(i)} = Im z_i.

#include "chebsdp/rational.hpp"
#include "chebsdp/rootsys.hpp"

#include <complex>
#include <map>
#include <vector>

namespace chebsdp {

struct InvariantPoly {
  const RootSystemData* system = nullptr;
  // When true, coefficients refer to the realified basis That (and must be
  // real).  For systems with -id in W the two bases coincide.
  bool realified = false;
  std::map<Weight, CRat> terms;  // dominant weight -> coefficient, no zeros

  InvariantPoly() = default;
  explicit InvariantPoly(const RootSystemData& sys, bool realified_ = false)
      : system(&sys), realified(realified_) {}

  void add_term(const Weight& w, const CRat& c);
  bool is_real_valued() const;
  Rational weighted_degree_bound() const;  // max wd over the support (0 for empty)
};

InvariantPoly cheb_term(const RootSystemData& sys, const Weight& lambda, const CRat& c = CRat(1));

// Exact structure constants of the complex Chebyshev basis (cached):
// T_lambda * T_nu = sum_omega r_omega T_omega with rational r_omega.
const std::map<Weight, Rational>& basis_product(const RootSystemData& data, const Weight& lambda,
                                                const Weight& nu);

// Exact structure constants of the realified basis (cached):
// That_lambda * That_nu = sum_omega r_omega That_omega.
const std::map<Weight, Rational>& real_basis_product(const RootSystemData& data,
                                                     const Weight& lambda, const Weight& nu);

// Bilinear extension of the basis products; both factors must live on the
// same system and in the same basis (complex or realified).
InvariantPoly cheb_mul(const InvariantPoly& p, const InvariantPoly& q);

// Generalized cosine theta_lambda(u) = (1/|W lambda|) sum_{mu in W lambda}
// exp(2 pi i <mu, u>), lambda dominant, u in ambient coordinates.  For
// type A / G_2 the component of u along the all-ones direction of a factor
// is irrelevant (all weights lie in the sum-zero section), so no explicit
// canonicalization is needed.
std::complex<double> theta_numeric(const RootSystemData& data, const Weight& lambda,
                                   const std::vector<double>& u);

std::complex<double> eval_numeric(const InvariantPoly& p, const std::vector<double>& u);

// Realified image coordinates zhat(u): zhat_i = Re theta_{omega_i}(u) for
// i <= sigma(i), zhat_{sigma(i)} = Im theta_{omega_i}(u) for i < sigma(i).
std::vector<double> theta_coords_realified(const RootSystemData& data,
                                           const std::vector<double>& u);

// Re-expresses a real-valued polynomial on the realified basis.
InvariantPoly realify(const InvariantPoly& p);

// ---- monomial expansion ----

struct MonomialPoly {
  int nvars = 0;
  std::map<std::vector<int>, CRat> terms;  // exponent vector -> coefficient

  void add_term(const std::vector<int>& expo, const CRat& c);
  std::complex<double> eval(const std::vector<double>& zhat) const;
  bool is_real() const;
  MonomialPoly real_part() const;
  MonomialPoly imag_part() const;
  friend bool operator==(const MonomialPoly&, const MonomialPoly&) = default;
};

MonomialPoly monomial_mul(const MonomialPoly& a, const MonomialPoly& b);

// Expansion of T_lambda as a polynomial in the realified coordinates
// zhat_1..zhat_n (coefficients in Q(i); real iff T_lambda is real-valued).
// Memoized recursion on |W omega_i| z_i T_{lambda - omega_i} = sum ... .
const MonomialPoly& cheb_to_monomial(const RootSystemData& data, const Weight& lambda);

// Monomial expansion of a realified basis element That_kappa (always real).
MonomialPoly realified_monomial(const RootSystemData& data, const Weight& kappa);

// Monomial expansion of an arbitrary polynomial (either basis).
MonomialPoly to_monomial(const InvariantPoly& p);

}  // namespace chebsdp
