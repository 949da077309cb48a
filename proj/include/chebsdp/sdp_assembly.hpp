#pragma once

// Assembly of the Chebyshev moment/SOS hierarchy: weighted-degree filtration
// bases, the exact coefficient matrices A_omega of the block-diagonal
// moment + localized-moment matrix
//
//   blockdiag(M_d^L, M_{d-D}^{P*L}) = sum_omega L(T_omega) A_omega,
//
// the minimize and max-min SDP instances, and a disk cache for the A_omega.
// All A_omega entries are exact rationals; doubles appear only in the final
// solver-ready StandardSdp.

#include "chebsdp/chebpoly.hpp"
#include "chebsdp/rootsys.hpp"
#include "chebsdp/sdp_solver.hpp"
#include "chebsdp/semialg.hpp"

#include <map>
#include <string>
#include <vector>

namespace chebsdp {

struct FiltrationBasis {
  const RootSystemData* system = nullptr;
  int d = 0;
  // Dominant weights with weighted_degree <= d, graded by (weighted degree,
  // lexicographic); the list for d is a prefix of the list for d+1.
  std::vector<Weight> weights;
  std::map<Weight, int> index;

  int dim() const { return static_cast<int>(weights.size()); }
};

FiltrationBasis filtration(const RootSystemData& data, int d);

// The exact A_omega skeleton for hierarchy order d.  Block layout:
// block 0 = moment block (dim filt_d); blocks 1..k = localized blocks, one
// per irreducible factor; optional trailing ball block.
//
// Localized rows use the maximal well-defined truncation: row (a, t) pairs
// Hermite entry-row a with a multiplier T_t of weighted degree <= d - h_a,
// where h_a is the row half-degree of the Hermite block.  Every product
// P_ab T_t T_u then stays inside filt_{2d}, and the uniform choice
// (all multipliers in filt_{d-D}) is the principal sub-block with
// wd(t) <= d - D.  The ball block is localized the same way, with
// multipliers up to d - ceil(wd(ball)/2).
//
// N and m keep the conventional bookkeeping used for reporting
// (ball excluded, uniform localized split):
// N = dim filt_d + sum_f s_f * dim filt_{d-D},  m = dim filt_{2d} - 1.
struct SdpCoefficients {
  const RootSystemData* system = nullptr;
  int d = 0;
  bool ball = true;       // demoted to false when the ball exceeds filt_2d
  bool localized = true;  // false only for low-order max-min instances (d < D)
  bool adaptive = true;   // entry-adaptive localizer truncation (see above)
  int D = 0;              // half weighted degree of the Hermite matrix

  FiltrationBasis basis;      // filt_d
  FiltrationBasis loc_basis;  // filt_{d-D}, the reported uniform split
  std::vector<int> block_dims;

  // Row layout of localized block 1 + f: (Hermite entry-row, multiplier).
  struct LocRow {
    int entry_row = 0;
    Weight multiplier;
  };
  std::vector<std::vector<LocRow>> loc_rows;  // per irreducible factor
  FiltrationBasis ball_basis;                 // multipliers of the ball block
  std::vector<int> reported_split;            // {dim filt_d, s_f * dim filt_{d-D}, ...}

  struct Entry {
    int block, i, j;  // 0-based, i <= j
    Rational value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Weight> weights_2d;             // filt_{2d} order
  std::map<Weight, std::vector<Entry>> A;     // omega -> exact entries

  int N = 0;
  int m = 0;
};

// Throws when d < D.  When cache_dir is nonempty, the skeleton is read from
// (or written to, atomically) a versioned text cache file.  With
// adaptive = false the localized rows use the uniform filt_{d-D} truncation.
SdpCoefficients assemble_coefficient_matrices(const RootSystemData& data, int d, bool ball = true,
                                              const std::string& cache_dir = "",
                                              bool adaptive = true);

// Internal-use variant that permits d < D by omitting the localized blocks
// (still a valid SOS restriction); used by the max-min driver.
SdpCoefficients assemble_coefficient_matrices_small(const RootSystemData& data, int d,
                                                    bool ball = true,
                                                    const std::string& cache_dir = "",
                                                    bool adaptive = true);

struct AssembledSdp {
  StandardSdp sdp;
  // Constraint i of sdp corresponds to constraint_weights[i]; for max-min
  // instances the final constraint is the normalization row (zero weight).
  std::vector<Weight> constraint_weights;
  double objective_offset = 0;  // c_0: optimal value = offset + solver value
  int N = 0, m = 0;
  std::vector<int> reported_split;  // {dim filt_d, s * dim filt_{d-D}, ...}
  // Max-min extras:
  std::vector<Weight> set_weights;
  int slack_block = -1;
};

// min over the image of f: primal solver value + offset = f^d_sos, dual
// solver value + offset = f^d_mom.
AssembledSdp assemble_minimize(const SdpCoefficients& coeffs, const InvariantPoly& f);

// F(S, d):  sup -tr(A_0 X)  s.t.  X >= 0, sum_{w in S} tr(A_w X) = 1,
// tr(A_w X) >= 0 for w in S (via slack diagonal block), tr(A_v X) = 0 for
// v not in S u {0}.  Solver primal value = F(S, d); bound = 1 - 1/F.
AssembledSdp assemble_maxmin(const SdpCoefficients& coeffs, const std::vector<Weight>& S);

// tr(A_omega X) for a block solution X laid out like coeffs.block_dims.
double trace_A_dot(const SdpCoefficients& coeffs, const Weight& omega,
                   const std::vector<Eigen::MatrixXd>& X);

}  // namespace chebsdp
