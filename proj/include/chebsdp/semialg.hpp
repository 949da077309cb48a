#pragma once

// The image of the generalized-cosine map as a basic semialgebraic set.
// For each irreducible factor of type A, B, C, D or G_2 there is a symmetric
// Hankel matrix polynomial P supported on multiples of omega_1 of that
// factor with  Image = {z : P(z) >= 0};  products give block-diagonal P.
// For factors where -id is not in the Weyl group the entries are read in the
// realified basis (the real part of the Hermitian matrix); the constraint is
// equivalent by Weyl-conjugation symmetry and is validated by the membership
// sampling tests.

#include "chebsdp/chebpoly.hpp"
#include "chebsdp/rootsys.hpp"

#include <utility>
#include <vector>

namespace chebsdp {

struct HermiteMatrix {
  const RootSystemData* system = nullptr;
  bool hermitian_flag = false;  // true when -id is not in W (type A, odd D)

  struct Block {
    int factor_index = 0;
    int size = 0;          // s: block is s x s
    Rational degree = 0;   // D = ceil(max entry weighted degree / 2) = s * wd(omega_1)
    // Realified, symmetric, Hankel: entries[i][j] depends only on i+j.
    std::vector<std::vector<InvariantPoly>> entries;
    // Row half-degrees h_i with wd(entries[i][j]) <= h_i + h_j for all i, j;
    // row i of the localized matrix may carry multipliers of weighted degree
    // up to d - h_i while all products stay inside filt_{2d}.
    std::vector<int> row_degrees;
  };
  std::vector<Block> blocks;
  Rational D = 0;  // max over blocks
};

HermiteMatrix hermite_matrix(const RootSystemData& data);

// Evaluates P at realified coordinates z and reports (all blocks PSD up to
// tol, smallest eigenvalue over all blocks).
std::pair<bool, double> membership(const RootSystemData& data, const std::vector<double>& z,
                                   double tol = 1e-9);
std::pair<bool, double> membership(const HermiteMatrix& P, const std::vector<double>& z,
                                   double tol = 1e-9);

// The ball polynomial  n - sum_i zhat_i^2  on the realified basis; it is
// nonnegative on the image (which lies in the cube) and makes the quadratic
// module Archimedean when appended as an extra constraint.
InvariantPoly ball_polynomial(const RootSystemData& data);

}  // namespace chebsdp
