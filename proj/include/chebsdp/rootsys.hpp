#pragma once

// Exact construction of the crystallographic root systems A_n, B_n, C_n,
// D_n, G_2 and finite products thereof: simple roots, coroots, fundamental
// weights, the Cartan matrix, the highest root, comarks, the index
// permutation sigma induced by -id, and Weyl-orbit combinatorics on the
// weight lattice.  Everything is exact over Q; weights are stored as integer
// coordinate vectors in the fundamental-weight basis.

#include "chebsdp/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace chebsdp {

struct RootSystemType {
  struct Factor {
    char family;  // 'A','B','C','D','G'
    int rank;
    friend bool operator==(const Factor&, const Factor&) = default;
  };
  std::vector<Factor> factors;

  bool irreducible() const { return factors.size() == 1; }
  int total_rank() const;

  // Parses e.g. "C3", "g2", "A1xA1xA1" (case-insensitive, factors joined
  // by 'x').  Throws std::invalid_argument on malformed input or rank
  // restrictions (G only rank 2, D rank >= 4, B/C rank >= 2, A rank >= 1).
  static RootSystemType parse(const std::string& spec);
  std::string str() const;

  friend bool operator==(const RootSystemType&, const RootSystemType&) = default;
};

// A weight in fundamental-weight coordinates (lambda = sum coords[i]*omega_i).
// Dominant iff all coordinates are >= 0.  Plain lexicographic ordering makes
// it usable as a map key; the graded orders live in the consumers.
struct Weight {
  std::vector<int> coords;

  Weight() = default;
  explicit Weight(std::vector<int> c) : coords(std::move(c)) {}

  int size() const { return static_cast<int>(coords.size()); }
  bool is_zero() const;
  bool is_dominant() const;
  int coord_sum() const;

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight& a, const Weight& b) { return a.coords <=> b.coords; }
};

struct RootSystemData {
  RootSystemType type;
  int rank = 0;
  int ambient_dim = 0;

  std::vector<QVec> simple_roots;         // rho_i, ambient coordinates
  std::vector<QVec> coroots;              // rho_i^vee = 2 rho_i / <rho_i,rho_i>
  std::vector<QVec> fundamental_weights;  // omega_i with <omega_i, rho_j^vee> = delta_ij
  std::vector<std::vector<int>> cartan;   // C[i][j] = <rho_j, rho_i^vee>
  std::vector<Rational> comarks;          // k_i = <omega_i, theta_0^vee> (per factor)
  std::vector<int> sigma;                 // conj(omega_i) = omega_{sigma[i]}, 0-based
  Integer weyl_order = 1;
  bool minus_id_in_weyl = true;           // sigma == identity

  struct FactorInfo {
    char family;
    int rank;
    int coord_offset;    // first weight coordinate of this factor
    int ambient_offset;  // first ambient coordinate of this factor
    int ambient_dim;
    QVec highest_root;       // theta_0 of the factor, ambient coords of the factor
    QVec highest_coroot;     // theta_0^vee
    int ell;                 // smallest l >= 1 with l*theta_0^vee in the weight lattice
    Weight voronoi_weight;   // ell * theta_0^vee in omega-coordinates (of the factor)
    std::vector<Integer> marks;  // theta_0 = sum marks[i] * rho_i
  };
  std::vector<FactorInfo> factors;

  // Convenience accessors for irreducible systems.
  const FactorInfo& only_factor() const;
};

RootSystemData build(const RootSystemType& type);
inline RootSystemData build(const std::string& spec) { return build(RootSystemType::parse(spec)); }

// s_j(lambda) = lambda - lambda_j * alpha_j where alpha_j in the omega-basis
// is the j-th column of the Cartan matrix.  j is 0-based here.
Weight simple_reflection(const RootSystemData& data, int j, const Weight& lambda);

// Repeatedly reflects at the smallest index with a negative coordinate until
// dominant.  Returns the dominant representative and the number of
// reflections applied.
std::pair<Weight, int> dominant_representative(const RootSystemData& data, const Weight& lambda);

// Full Weyl orbit of a dominant weight, deduplicated, sorted by
// (coordinate sum, then lexicographic) for a reproducible order.
std::vector<Weight> orbit(const RootSystemData& data, const Weight& lambda);

// The dominant representative of -lambda, i.e. lambda composed with sigma.
Weight conjugate(const RootSystemData& data, const Weight& lambda);

// Weighted degree <lambda, theta_0^vee> = sum lambda_i * comark_i
// (summed over product factors).
Rational weighted_degree(const RootSystemData& data, const Weight& lambda);

// Euclidean coordinates sum lambda_i * omega_i (exact).
QVec euclidean(const RootSystemData& data, const Weight& lambda);

// Vertex sets of the fundamental alcoves, one simplex per irreducible
// factor: {u : <u,rho_i> >= 0, <u,theta_0> <= 1} has vertices 0 and
// omega_i^vee / mark_i.  Vertices are embedded in the full ambient space;
// the fundamental domain of a product is the product of the simplices.
// Used by the CLI minimizer sampling.
std::vector<std::vector<QVec>> alcove_simplices(const RootSystemData& data);

}  // namespace chebsdp
