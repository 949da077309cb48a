#pragma once

// Spectral lower bounds for measurable chromatic numbers of set-avoiding
// graphs on lattices: builders for Weyl-invariant avoided sets (described by
// their dominant supports), the F(S, d) hierarchy driver with bound
// 1 - 1/F, and the closed-form oracles for the analytically solved cases.

#include "chebsdp/rootsys.hpp"
#include "chebsdp/sdp_assembly.hpp"
#include "chebsdp/sdp_solver.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace chebsdp {

struct AvoidedSet {
  const RootSystemData* system = nullptr;
  std::string label;  // voronoi_strict | crosspolytope(r) | voronoi_shell(r) | custom
  int r = 0;          // shell radius for the shell builders, else 0
  std::vector<Weight> dominant_support;  // nonempty, zero excluded
};

// The Weyl orbit of the (scaled) highest coroot: the dominant weight
// l * theta_0^vee with l minimal; l = 1 except G_2 where l = 3.
AvoidedSet strict_voronoi_set(const RootSystemData& data);

// Dominant weights of the l1-sphere of radius r in Z^n, for B/C/D:
//   C_n:  { sum a_i w_i               : sum i a_i = r }
//   B_n:  { sum_{i<n} a_i w_i + 2 a_n w_n : sum i a_i = r }
//   D_n:  { sum_{i<n-1} a_i w_i + 2 (a_{n-1} w_{n-1} + a_n w_n)
//                                    : sum i a_i + a_{n-1} = r }.
AvoidedSet crosspolytope_shell(const RootSystemData& data, int r);

// Dominant weights of weighted degree exactly r (for G_2: exactly 3r, so
// callers can use the shell index r directly).
AvoidedSet voronoi_shell(const RootSystemData& data, int r);

struct SpectralBoundResult {
  std::string system;
  std::string set_label;
  int r = 0;  // shell radius when applicable, else 0
  int d = 0;
  int N = 0, m = 0;
  double F = 0;            // min of the optimal Fourier transform, < 0
  double bound = 0;        // 1 - 1/F
  SolveStatus status = SolveStatus::numerical_failure;
  int iterations = 0;
  double solve_seconds = 0;

  struct Coefficient {
    Weight weight;
    double value = 0;   // normalized: values sum to 1
    bool negligible = false;  // |value| < 1e-6 before normalization
  };
  std::vector<Coefficient> coefficients;
};

// Assembles and solves the F(S, d) max-min instance (all-ones normalization,
// c_w >= 0) and recovers the optimal coefficients c_w = tr(A_w X*).  Orders
// below the localization threshold fall back to the moment + ball relaxation.
// The default uses the uniform filt_{d-D} localizer truncation, which is the
// hierarchy the published chromatic tables follow; adaptive = true switches
// to the stronger entry-adaptive truncation.
SpectralBoundResult spectral_bound(const RootSystemData& data, const AvoidedSet& set, int d,
                                   const SolveOptions& opts = {}, bool ball = true,
                                   const std::string& cache_dir = "", bool adaptive = false);

// Cases with closed-form chromatic bounds (bound, F value):
//   lattice_C:        (2, -1)                 any C_n Voronoi graph
//   lattice_A:        (n + 1, -1/n)           A_n Voronoi graph
//   lattice_BD:       even n: (n, -1/(n - 1)); odd n: (n + 1, -1/n)
//                                              B_n / D_n Voronoi graph
//   crosspolytope_r2: (2n, -1/(2n - 1))       l1-distance 2 on Z^n
//   cube:             (2^n, -1/(2^n - 1))     Voronoi boundary of Z^n (C_n shell r = 1)
//   hexagon_even:     (25/7, -7/18)           hexagonal lattice, even shell
enum class AnalyticCase { lattice_C, lattice_A, lattice_BD, crosspolytope_r2, cube, hexagon_even };

struct AnalyticOracle {
  Rational bound;
  Rational F;
};

AnalyticOracle analytic_oracle(AnalyticCase which, int n);

// CSV: system, set_label, r, d, N, m, F, bound, status, solve_seconds,
// then one "c[a1 a2 ...]" column per coefficient (rows are emitted with the
// column set of their own coefficient list).
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const SpectralBoundResult& row);

}  // namespace chebsdp
