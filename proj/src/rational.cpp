#include "chebsdp/rational.hpp"

namespace chebsdp {

QVec solve_linear(QMat M, QVec rhs) {
  const std::size_t n = M.size();
  if (n == 0 || M[0].size() != n || rhs.size() != n)
    throw std::invalid_argument("solve_linear: bad dimensions");
  // Gaussian elimination with exact pivoting (first nonzero pivot).
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && M[piv][col] == 0) ++piv;
    if (piv == n) throw std::runtime_error("solve_linear: singular matrix");
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    const Rational p = M[col][col];
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || M[r][col] == 0) continue;
      const Rational f = M[r][col] / p;
      for (std::size_t c = col; c < n; ++c) M[r][c] -= f * M[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  QVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / M[i][i];
  return x;
}

QMat invert(const QMat& M) {
  const std::size_t n = M.size();
  QMat inv(n, QVec(n, Rational(0)));
  for (std::size_t j = 0; j < n; ++j) {
    QVec e(n, Rational(0));
    e[j] = 1;
    QVec col = solve_linear(M, e);
    for (std::size_t i = 0; i < n; ++i) inv[i][j] = col[i];
  }
  return inv;
}

QVec coordinates_in_basis(const std::vector<QVec>& basis, const QVec& v) {
  const std::size_t k = basis.size();
  if (k == 0) throw std::invalid_argument("coordinates_in_basis: empty basis");
  const std::size_t dim = basis[0].size();
  if (v.size() != dim) throw std::invalid_argument("coordinates_in_basis: dimension mismatch");
  // Solve the normal equations G x = B^t v with G the (exact) Gram matrix;
  // for a linearly independent basis this is an exact consistent solve.
  QMat G(k, QVec(k));
  QVec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) G[i][j] = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], v);
  }
  QVec x = solve_linear(G, rhs);
  // Verify consistency (v really lies in the span).
  QVec rec(dim, Rational(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t d = 0; d < dim; ++d) rec[d] += x[i] * basis[i][d];
  for (std::size_t d = 0; d < dim; ++d)
    if (rec[d] != v[d]) throw std::runtime_error("coordinates_in_basis: vector not in span");
  return x;
}

}  // namespace chebsdp
