#include "chebsdp/sdp_solver.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace chebsdp {

namespace {

using Block = Eigen::MatrixXd;
using Blocks = std::vector<Block>;

std::vector<int> abs_dims(const StandardSdp& p) {
  std::vector<int> dims;
  dims.reserve(p.block_dims.size());
  for (int d : p.block_dims) dims.push_back(std::abs(d));
  return dims;
}

Blocks zero_blocks(const std::vector<int>& dims) {
  Blocks b;
  for (int d : dims) b.push_back(Block::Zero(d, d));
  return b;
}

Blocks scaled_identity(const std::vector<int>& dims, double tau) {
  Blocks b;
  for (int d : dims) b.push_back(tau * Block::Identity(d, d));
  return b;
}

Blocks dense_matrix(const std::vector<int>& dims, const std::vector<StandardSdp::Entry>& entries) {
  Blocks M = zero_blocks(dims);
  for (const auto& e : entries) {
    M[e.block](e.i, e.j) += e.value;
    if (e.i != e.j) M[e.block](e.j, e.i) += e.value;
  }
  return M;
}

double inner(const Blocks& A, const Blocks& B) {
  double s = 0;
  for (std::size_t k = 0; k < A.size(); ++k) s += (A[k].cwiseProduct(B[k])).sum();
  return s;
}

double trace_product(const Blocks& F, const Blocks& G) {
  // tr(F G) for symmetric F, general G.
  double s = 0;
  for (std::size_t k = 0; k < F.size(); ++k)
    s += (F[k].cwiseProduct(G[k].transpose())).sum();
  return s;
}

double max_abs(const Blocks& A) {
  double s = 0;
  for (const auto& M : A)
    if (M.size() > 0) s = std::max(s, M.cwiseAbs().maxCoeff());
  return s;
}

// Largest t with X + t dX >= 0 for SPD X (via X = L L').
double max_step(const Blocks& X, const Blocks& dX) {
  double t = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < X.size(); ++k) {
    if (X[k].rows() == 0) continue;
    Eigen::LLT<Block> llt(X[k]);
    if (llt.info() != Eigen::Success) return 0.0;
    const Block L = llt.matrixL();
    Block A = L.triangularView<Eigen::Lower>().solve(dX[k]);
    A = L.triangularView<Eigen::Lower>().solve(A.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Block> es((A + A.transpose()) / 2.0, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin < 0) t = std::min(t, -1.0 / lmin);
  }
  return t;
}

}  // namespace

int StandardSdp::total_dim() const {
  int n = 0;
  for (int d : block_dims) n += std::abs(d);
  return n;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::numerical_failure: return "numerical_failure";
    case SolveStatus::infeasible_suspect: return "infeasible_suspect";
  }
  return "unknown";
}

SdpSolution solve(const StandardSdp& p, const SolveOptions& opts) {
  const std::vector<int> dims = abs_dims(p);
  const int m = p.m();
  const int N = p.total_dim();
  if (static_cast<int>(p.constraints.size()) != m)
    throw std::invalid_argument("solve: constraint/b length mismatch");

  const Blocks C = dense_matrix(dims, p.C);
  std::vector<Blocks> F;
  F.reserve(m);
  double data_norm = std::max(1.0, max_abs(C));
  for (int i = 0; i < m; ++i) {
    F.push_back(dense_matrix(dims, p.constraints[i]));
    data_norm = std::max(data_norm, max_abs(F.back()));
  }
  double b_norm = 1.0;
  for (double v : p.b) b_norm = std::max(b_norm, std::abs(v));

  const double tau = 10.0 * std::max(data_norm, b_norm);
  Blocks X = scaled_identity(dims, tau);
  Blocks Z = scaled_identity(dims, tau);
  std::vector<double> y(m, 0.0);

  SdpSolution sol;
  sol.status = SolveStatus::max_iter;

  Eigen::MatrixXd M(m, m);
  Eigen::VectorXd rhs(m), dy(m);

  // Best iterate seen so far, by combined optimality merit; returned when
  // the iteration stalls slightly above the strict tolerances.
  double best_merit = std::numeric_limits<double>::infinity();
  SdpSolution best = sol;
  bool stalled = false;

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    sol.iterations = iter;

    // Residuals and convergence.
    const double mu = inner(X, Z) / std::max(1, N);
    sol.primal_value = inner(C, X);
    sol.dual_value = 0;
    for (int i = 0; i < m; ++i) sol.dual_value += p.b[i] * y[i];
    sol.gap = sol.dual_value - sol.primal_value;

    Blocks Rd = zero_blocks(dims);  // sum y_i F_i - C - Z
    for (std::size_t k = 0; k < dims.size(); ++k) {
      Rd[k] = -C[k] - Z[k];
      for (int i = 0; i < m; ++i)
        if (y[i] != 0.0) Rd[k] += y[i] * F[i][k];
    }
    double rp_norm = 0;
    std::vector<double> rp(m);
    for (int i = 0; i < m; ++i) {
      rp[i] = p.b[i] - inner(F[i], X);
      rp_norm = std::max(rp_norm, std::abs(rp[i]));
    }
    sol.primal_residual = rp_norm;
    sol.dual_residual = max_abs(Rd);

    const double rel_gap =
        std::abs(sol.gap) / (1.0 + (std::abs(sol.primal_value) + std::abs(sol.dual_value)) / 2);
    if (opts.verbose)
      std::cerr << "iter\t" << iter << "\tmu\t" << mu << "\tgap\t" << rel_gap << "\trp\t"
                << rp_norm << "\trd\t" << sol.dual_residual << '\n';
    const double merit = std::max({rel_gap * opts.tol_feas / opts.tol_gap,
                                   rp_norm / (1.0 + b_norm),
                                   sol.dual_residual / (1.0 + data_norm)});
    if (merit < best_merit) {
      best_merit = merit;
      best = sol;
      best.X = X;
      best.Z = Z;
      best.y = y;
    }
    if (rel_gap <= opts.tol_gap && rp_norm <= opts.tol_feas * (1.0 + b_norm) &&
        sol.dual_residual <= opts.tol_feas * (1.0 + data_norm)) {
      sol.status = SolveStatus::optimal;
      break;
    }
    double y_norm = 0;
    for (double v : y) y_norm = std::max(y_norm, std::abs(v));
    if (y_norm > 1e9 || max_abs(X) > 1e12 || mu > 1e12 * tau) {
      sol.status = SolveStatus::infeasible_suspect;
      break;
    }

    // Factor Z.
    Blocks Zinv = zero_blocks(dims);
    bool factor_ok = true;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (dims[k] == 0) continue;
      Eigen::LLT<Block> llt(Z[k]);
      if (llt.info() != Eigen::Success) {
        factor_ok = false;
        break;
      }
      Zinv[k] = llt.solve(Block::Identity(dims[k], dims[k]));
    }
    if (!factor_ok) {
      sol.status = SolveStatus::numerical_failure;
      break;
    }

    // Schur complement M_ij = tr(F_j Zinv F_i X)  (symmetric PD).
    std::vector<Blocks> W(m);  // W_i = Zinv F_i X
    for (int i = 0; i < m; ++i) {
      W[i].resize(dims.size());
      for (std::size_t k = 0; k < dims.size(); ++k) W[i][k] = Zinv[k] * F[i][k] * X[k];
    }
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double s = 0;
        for (std::size_t k = 0; k < dims.size(); ++k)
          s += (F[j][k].cwiseProduct(W[i][k].transpose())).sum();
        M(i, j) = s;
        M(j, i) = s;
      }

    // Factor M with diagonal regularization retries.
    Eigen::LLT<Eigen::MatrixXd> schur(M);
    double shift = 1e-14 * std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
    int attempts = 0;
    while (schur.info() != Eigen::Success && attempts < 3) {
      M.diagonal().array() += shift;
      schur.compute(M);
      shift *= 10;
      ++attempts;
    }
    if (schur.info() != Eigen::Success) {
      sol.status = SolveStatus::numerical_failure;
      break;
    }

    // Common RHS piece tr(F_i X Rd Zinv).
    Blocks XRdZ(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) XRdZ[k] = X[k] * Rd[k] * Zinv[k];

    auto direction = [&](const Blocks& K1, Blocks& dX, Blocks& dZ) {
      // Solve M dy = rhs, dZ = sum dy F + Rd, dX = K1 - X - X dZ Zinv (sym).
      for (int i = 0; i < m; ++i)
        rhs(i) = trace_product(F[i], K1) - trace_product(F[i], XRdZ) - p.b[i];
      dy = schur.solve(rhs);
      dy += schur.solve(rhs - M * dy);  // one step of iterative refinement
      for (std::size_t k = 0; k < dims.size(); ++k) {
        dZ[k] = Rd[k];
        for (int i = 0; i < m; ++i) dZ[k] += dy(i) * F[i][k];
        dX[k] = K1[k] - X[k] - X[k] * dZ[k] * Zinv[k];
        dX[k] = ((dX[k] + dX[k].transpose()) / 2.0).eval();
      }
    };

    // Predictor (sigma = 0).
    Blocks dXp = zero_blocks(dims), dZp = zero_blocks(dims);
    direction(zero_blocks(dims), dXp, dZp);
    const double ap = std::min(1.0, 0.98 * max_step(X, dXp));
    const double ad = std::min(1.0, 0.98 * max_step(Z, dZp));

    // Mehrotra centering parameter.
    double trial = 0;
    for (std::size_t k = 0; k < dims.size(); ++k)
      trial += ((X[k] + ap * dXp[k]).cwiseProduct(Z[k] + ad * dZp[k])).sum();
    const double base = inner(X, Z);
    double sigma = base > 0 ? std::pow(std::max(trial, 0.0) / base, 3.0) : 0.0;
    sigma = std::clamp(sigma, 0.0, 1.0);

    // Corrector.
    Blocks K1(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k)
      K1[k] = (sigma * mu * Block::Identity(dims[k], dims[k]) - dXp[k] * dZp[k]) * Zinv[k];
    Blocks dX = zero_blocks(dims), dZ = zero_blocks(dims);
    direction(K1, dX, dZ);
    const double sp = std::min(1.0, 0.98 * max_step(X, dX));
    const double sd = std::min(1.0, 0.98 * max_step(Z, dZ));

    for (std::size_t k = 0; k < dims.size(); ++k) {
      X[k] += sp * dX[k];
      Z[k] += sd * dZ[k];
    }
    for (int i = 0; i < m; ++i) y[i] += sd * dy(i);

    if (sp < 1e-10 && sd < 1e-10) {
      sol.status = (rp_norm > 1e-4 * b_norm) ? SolveStatus::infeasible_suspect
                                             : SolveStatus::numerical_failure;
      stalled = true;
      break;
    }
  }

  // Accept a near-miss best iterate when the iteration stalled or ran out of
  // iterations just above the strict tolerances.
  if (sol.status != SolveStatus::optimal && (stalled || sol.status == SolveStatus::max_iter ||
                                             sol.status == SolveStatus::numerical_failure) &&
      best_merit <= 50.0 * std::max(opts.tol_gap, opts.tol_feas)) {
    best.status = SolveStatus::optimal;
    return best;
  }

  sol.X = X;
  sol.Z = Z;
  sol.y = y;
  return sol;
}

CertifyReport certify(const StandardSdp& p, const SdpSolution& sol, double tol) {
  CertifyReport rep;
  const std::vector<int> dims = abs_dims(p);
  const int m = p.m();

  auto inner_ld = [&](const std::vector<StandardSdp::Entry>& entries,
                      const std::vector<Eigen::MatrixXd>& X) {
    long double s = 0;
    for (const auto& e : entries) {
      if (e.i == e.j)
        s += static_cast<long double>(e.value) * X[e.block](e.i, e.i);
      else
        s += 2.0L * static_cast<long double>(e.value) * X[e.block](e.i, e.j);
    }
    return s;
  };

  rep.primal_value = static_cast<double>(inner_ld(p.C, sol.X));
  long double dual = 0;
  for (int i = 0; i < m; ++i) dual += static_cast<long double>(p.b[i]) * sol.y[i];
  rep.dual_value = static_cast<double>(dual);
  rep.gap = static_cast<double>(dual - inner_ld(p.C, sol.X));

  long double rp = 0;
  for (int i = 0; i < m; ++i)
    rp = std::max(rp, std::abs(static_cast<long double>(p.b[i]) -
                               inner_ld(p.constraints[i], sol.X)));
  rep.primal_residual = static_cast<double>(rp);

  Blocks Rd = dense_matrix(dims, p.C);
  for (std::size_t k = 0; k < dims.size(); ++k) Rd[k] = -Rd[k] - sol.Z[k];
  for (int i = 0; i < m; ++i) {
    const Blocks Fi = dense_matrix(dims, p.constraints[i]);
    for (std::size_t k = 0; k < dims.size(); ++k) Rd[k] += sol.y[i] * Fi[k];
  }
  rep.dual_residual = max_abs(Rd);

  rep.min_eig_X = std::numeric_limits<double>::infinity();
  rep.min_eig_Z = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] == 0) continue;
    Eigen::SelfAdjointEigenSolver<Block> ex(sol.X[k], Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Block> ez(sol.Z[k], Eigen::EigenvaluesOnly);
    rep.min_eig_X = std::min(rep.min_eig_X, ex.eigenvalues().minCoeff());
    rep.min_eig_Z = std::min(rep.min_eig_Z, ez.eigenvalues().minCoeff());
  }
  rep.weak_duality_ok = rep.primal_value <= rep.dual_value + tol * (1.0 + std::abs(rep.dual_value));
  return rep;
}

}  // namespace chebsdp
