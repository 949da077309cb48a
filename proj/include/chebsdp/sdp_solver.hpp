#pragma once

// Dense primal-dual path-following interior-point solver for small
// block-diagonal SDPs.  Canonical shape (SDPA convention):
//
//   primal:  max  tr(C X)   s.t.  tr(F_i X) = b_i (i = 1..m),  X >= 0
//   dual:    min  b' y      s.t.  Z = sum_i y_i F_i - C >= 0
//
// so that primal optimum <= dual optimum.  Predictor-corrector with the
// HKM linearization, Schur complement by dense Cholesky, fraction-to-
// boundary 0.98.  Entirely deterministic.

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace chebsdp {

struct StandardSdp {
  // Negative sizes mark diagonal blocks (SDPA convention); the solver
  // treats them densely, the distinction matters for export.
  std::vector<int> block_dims;

  struct Entry {
    int block;  // 0-based
    int i, j;   // 0-based, i <= j
    double value;
    friend bool operator==(const Entry&, const Entry&) = default;
    friend auto operator<=>(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> C;                          // constant matrix F_0
  std::vector<std::vector<Entry>> constraints;   // F_1 .. F_m
  std::vector<double> b;                         // length m

  int m() const { return static_cast<int>(b.size()); }
  int total_dim() const;
};

struct SolveOptions {
  double tol_gap = 1e-8;
  double tol_feas = 1e-8;
  int max_iter = 200;
  bool verbose = false;
};

enum class SolveStatus { optimal, max_iter, numerical_failure, infeasible_suspect };

std::string to_string(SolveStatus s);

struct SdpSolution {
  SolveStatus status = SolveStatus::max_iter;
  double primal_value = 0;  // tr(C X)
  double dual_value = 0;    // b' y
  double gap = 0;           // dual - primal (nonnegative at optimality)
  std::vector<Eigen::MatrixXd> X;
  std::vector<double> y;
  std::vector<Eigen::MatrixXd> Z;
  int iterations = 0;
  double primal_residual = 0;  // ||b - tr(F X)||_inf
  double dual_residual = 0;    // ||sum y F - C - Z||_max
};

SdpSolution solve(const StandardSdp& p, const SolveOptions& opts = {});

struct CertifyReport {
  double primal_value = 0;
  double dual_value = 0;
  double gap = 0;
  double primal_residual = 0;
  double dual_residual = 0;
  double min_eig_X = 0;
  double min_eig_Z = 0;
  bool weak_duality_ok = false;  // primal <= dual + tol
};

// Recomputes residuals and the gap with long-double accumulation.
CertifyReport certify(const StandardSdp& p, const SdpSolution& sol, double tol = 1e-8);

}  // namespace chebsdp
