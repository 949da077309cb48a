#include "chebsdp/semialg.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace chebsdp {

namespace {

Rational binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  Rational r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

int hermite_size(char family, int rank) {
  switch (family) {
    case 'A':
      return rank == 1 ? 1 : rank + 1;
    case 'B':
    case 'C':
    case 'D':
      return rank;
    case 'G':
      return 3;
    default:
      throw std::invalid_argument("hermite_matrix: unsupported family");
  }
}

// The Hankel entry with i+j = k, as a complex-basis polynomial in multiples
// of omega_1 of the given factor:
//   2^k P_{ij} = -T_{k w} + sum_{l=1}^{ceil(k/2)-1} (4 binom(k-2,l-1) - binom(k,l)) T_{(k-2l) w}
//                + (k even ? (4 binom(k-2,k/2-1) - binom(k,k/2))/2 : 0).
InvariantPoly hankel_entry(const RootSystemData& data, int coord_offset, int k) {
  auto multiple = [&](int m) {
    Weight w(std::vector<int>(data.rank, 0));
    w.coords[coord_offset] = m;
    return w;
  };
  const Rational scale = Rational(1) / Rational(Integer(1) << k);
  InvariantPoly p(data);
  p.add_term(multiple(k), CRat(-scale));
  for (int l = 1; l <= (k + 1) / 2 - 1; ++l)
    p.add_term(multiple(k - 2 * l), CRat((4 * binom(k - 2, l - 1) - binom(k, l)) * scale));
  if (k % 2 == 0)
    p.add_term(multiple(0), CRat((4 * binom(k - 2, k / 2 - 1) - binom(k, k / 2)) / 2 * scale));
  return p;
}

// Symmetrizes under conjugation and moves to the realified basis: the entry
// actually used is Re P_{ij} = (P_{ij} + conj(P_{ij}))/2, which coincides
// with P_{ij} whenever -id is in the Weyl group of the factor.
InvariantPoly realified_entry(const RootSystemData& data, const InvariantPoly& p) {
  InvariantPoly sym(data);
  for (const auto& [w, c] : p.terms) {
    sym.add_term(w, c / Rational(2));
    sym.add_term(conjugate(data, w), c.conj() / Rational(2));
  }
  return realify(sym);
}

}  // namespace

HermiteMatrix hermite_matrix(const RootSystemData& data) {
  HermiteMatrix P;
  P.system = &data;
  P.hermitian_flag = !data.minus_id_in_weyl;
  for (std::size_t f = 0; f < data.factors.size(); ++f) {
    const auto& fac = data.factors[f];
    HermiteMatrix::Block block;
    block.factor_index = static_cast<int>(f);
    block.size = hermite_size(fac.family, fac.rank);
    if (fac.family == 'A' && fac.rank == 1) {
      // 1 - z^2 = (T_0 - T_{2 omega_1})/2.
      InvariantPoly e(data, true);
      Weight zero(std::vector<int>(data.rank, 0)), two = zero;
      two.coords[fac.coord_offset] = 2;
      e.add_term(zero, CRat(Rational(1, 2)));
      e.add_term(two, CRat(Rational(-1, 2)));
      block.entries = {{e}};
    } else {
      // Hankel entries depend only on i+j; compute each sum once.
      std::vector<InvariantPoly> by_sum(2 * block.size + 1);
      for (int k = 2; k <= 2 * block.size; ++k)
        by_sum[k] = realified_entry(data, hankel_entry(data, fac.coord_offset, k));
      block.entries.assign(block.size, std::vector<InvariantPoly>(block.size));
      for (int i = 0; i < block.size; ++i)
        for (int j = 0; j < block.size; ++j) block.entries[i][j] = by_sum[i + j + 2];
    }
    auto half_degree = [](const Rational& wd) {
      return (numerator(wd) + 2 * denominator(wd) - 1) / (2 * denominator(wd));
    };
    for (const auto& row : block.entries)
      for (const auto& e : row)
        block.degree = std::max(block.degree, Rational(half_degree(e.weighted_degree_bound())));
    block.row_degrees.resize(block.size);
    for (int i = 0; i < block.size; ++i)
      block.row_degrees[i] =
          half_degree(block.entries[i][i].weighted_degree_bound()).convert_to<int>();
    for (int i = 0; i < block.size; ++i)
      for (int j = 0; j < block.size; ++j)
        if (block.entries[i][j].weighted_degree_bound() >
            block.row_degrees[i] + block.row_degrees[j])
          throw std::logic_error("hermite_matrix: entry degree exceeds row half-degree split");
    P.D = std::max(P.D, block.degree);
    P.blocks.push_back(std::move(block));
  }
  return P;
}

std::pair<bool, double> membership(const HermiteMatrix& P, const std::vector<double>& z,
                                   double tol) {
  const RootSystemData& data = *P.system;
  if (static_cast<int>(z.size()) != data.rank)
    throw std::invalid_argument("membership: coordinate vector has wrong length");
  double min_eig = std::numeric_limits<double>::infinity();
  for (const auto& block : P.blocks) {
    Eigen::MatrixXd M(block.size, block.size);
    for (int i = 0; i < block.size; ++i)
      for (int j = i; j < block.size; ++j) {
        const double v = to_monomial(block.entries[i][j]).eval(z).real();
        M(i, j) = v;
        M(j, i) = v;
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  return {min_eig >= -tol, min_eig};
}

std::pair<bool, double> membership(const RootSystemData& data, const std::vector<double>& z,
                                   double tol) {
  return membership(hermite_matrix(data), z, tol);
}

InvariantPoly ball_polynomial(const RootSystemData& data) {
  InvariantPoly ball(data, true);
  ball.add_term(Weight(std::vector<int>(data.rank, 0)), CRat(Rational(data.rank)));
  for (int i = 0; i < data.rank; ++i) {
    Weight omega(std::vector<int>(data.rank, 0));
    omega.coords[i] = 1;
    for (const auto& [w, r] : real_basis_product(data, omega, omega))
      ball.add_term(w, CRat(-r));
  }
  return ball;
}

}  // namespace chebsdp
