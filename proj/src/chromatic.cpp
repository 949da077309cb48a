#include "chebsdp/chromatic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace chebsdp {

namespace {

void require_irreducible(const RootSystemData& data, const char* who) {
  if (!data.type.irreducible())
    throw std::invalid_argument(std::string(who) + ": requires an irreducible root system");
}

// All alpha in N^n with sum coeff_i * alpha_i = r.
void enumerate_exact(const std::vector<int>& coeff, int r, int pos, std::vector<int>& alpha,
                     std::vector<std::vector<int>>& out) {
  if (pos == static_cast<int>(coeff.size())) {
    if (r == 0) out.push_back(alpha);
    return;
  }
  for (int a = 0; a * coeff[pos] <= r; ++a) {
    alpha[pos] = a;
    enumerate_exact(coeff, r - a * coeff[pos], pos + 1, alpha, out);
    if (coeff[pos] == 0) break;  // guard, never hit for positive coefficients
  }
  alpha[pos] = 0;
}

}  // namespace

AvoidedSet strict_voronoi_set(const RootSystemData& data) {
  require_irreducible(data, "strict_voronoi_set");
  AvoidedSet s;
  s.system = &data;
  s.label = "voronoi_strict";
  s.dominant_support = {data.only_factor().voronoi_weight};
  return s;
}

AvoidedSet crosspolytope_shell(const RootSystemData& data, int r) {
  require_irreducible(data, "crosspolytope_shell");
  const char family = data.only_factor().family;
  if (family != 'B' && family != 'C' && family != 'D')
    throw std::invalid_argument("crosspolytope_shell: only types B, C, D embed the l1-sphere");
  if (r < 1) throw std::invalid_argument("crosspolytope_shell: r must be >= 1");
  const int n = data.rank;

  std::vector<int> coeff(n);
  for (int i = 0; i < n; ++i) coeff[i] = i + 1;
  if (family == 'D') coeff[n - 2] = n;  // i + 1 extra for alpha_{n-1}

  std::vector<std::vector<int>> alphas;
  std::vector<int> alpha(n, 0);
  enumerate_exact(coeff, r, 0, alpha, alphas);

  AvoidedSet s;
  s.system = &data;
  s.label = "crosspolytope(" + std::to_string(r) + ")";
  s.r = r;
  for (auto a : alphas) {
    if (family == 'B') a[n - 1] *= 2;
    if (family == 'D') {
      a[n - 2] *= 2;
      a[n - 1] *= 2;
    }
    s.dominant_support.emplace_back(std::move(a));
  }
  std::sort(s.dominant_support.begin(), s.dominant_support.end());
  return s;
}

AvoidedSet voronoi_shell(const RootSystemData& data, int r) {
  require_irreducible(data, "voronoi_shell");
  if (r < 1) throw std::invalid_argument("voronoi_shell: r must be >= 1");
  // Shell r is the weighted-degree-r level set in every type; the scaling
  // that moves the Voronoi boundary into the weight lattice (a factor 3 for
  // G_2) is already absorbed in the comark normalization.
  AvoidedSet s;
  s.system = &data;
  s.label = "voronoi_shell(" + std::to_string(r) + ")";
  s.r = r;
  for (const auto& w : filtration(data, r).weights)
    if (weighted_degree(data, w) == r) s.dominant_support.push_back(w);
  if (s.dominant_support.empty())
    throw std::invalid_argument("voronoi_shell: shell is empty at r = " + std::to_string(r));
  return s;
}

SpectralBoundResult spectral_bound(const RootSystemData& data, const AvoidedSet& set, int d,
                                   const SolveOptions& opts, bool ball,
                                   const std::string& cache_dir, bool adaptive) {
  if (set.system != &data)
    throw std::invalid_argument("spectral_bound: avoided set built on a different system");
  if (set.dominant_support.empty()) throw std::invalid_argument("spectral_bound: empty set");

  const auto t0 = std::chrono::steady_clock::now();
  const auto coeffs = assemble_coefficient_matrices_small(data, d, ball, cache_dir, adaptive);
  const auto inst = assemble_maxmin(coeffs, set.dominant_support);
  const auto sol = solve(inst.sdp, opts);
  const auto t1 = std::chrono::steady_clock::now();

  SpectralBoundResult res;
  res.system = data.type.str();
  res.set_label = set.label;
  res.r = set.r;
  res.d = d;
  res.N = inst.N;
  res.m = inst.m;
  res.status = sol.status;
  res.iterations = sol.iterations;
  res.solve_seconds = std::chrono::duration<double>(t1 - t0).count();
  if (sol.status != SolveStatus::optimal) {
    throw std::runtime_error("spectral_bound: solver did not reach optimality (" +
                             to_string(sol.status) + ") for " + res.system + " " + set.label +
                             " at d = " + std::to_string(d));
  }
  res.F = sol.primal_value;
  res.bound = 1.0 - 1.0 / res.F;

  double total = 0;
  for (const auto& w : set.dominant_support) total += trace_A_dot(coeffs, w, sol.X);
  for (const auto& w : set.dominant_support) {
    const double raw = trace_A_dot(coeffs, w, sol.X);
    res.coefficients.push_back({w, total != 0 ? raw / total : raw, std::abs(raw) < 1e-6});
  }
  return res;
}

AnalyticOracle analytic_oracle(AnalyticCase which, int n) {
  switch (which) {
    case AnalyticCase::lattice_C:
      return {Rational(2), Rational(-1)};
    case AnalyticCase::lattice_A:
      if (n < 1) throw std::invalid_argument("analytic_oracle: lattice_A needs n >= 1");
      return {Rational(n + 1), Rational(-1, n)};
    case AnalyticCase::lattice_BD:
      // T_{w2} = 2 e_2(c) / (n(n-1)) with c in [-1, 1]^n; the minimum of e_2
      // over the cube is at a balanced sign pattern: -n/2 for even n (so
      // F = -1/(n-1), bound n) and -(n-1)/2 for odd n (so F = -1/n,
      // bound n + 1).
      if (n < 2) throw std::invalid_argument("analytic_oracle: lattice_BD needs n >= 2");
      if (n % 2 == 0) return {Rational(n), Rational(-1, n - 1)};
      return {Rational(n + 1), Rational(-1, n)};
    case AnalyticCase::crosspolytope_r2:
      if (n < 1) throw std::invalid_argument("analytic_oracle: crosspolytope_r2 needs n >= 1");
      return {Rational(2 * n), Rational(-1, 2 * n - 1)};
    case AnalyticCase::cube: {
      if (n < 1) throw std::invalid_argument("analytic_oracle: cube needs n >= 1");
      const Integer p = Integer(1) << n;
      return {Rational(p), Rational(-1, p - 1)};
    }
    case AnalyticCase::hexagon_even:
      return {Rational(25, 7), Rational(-7, 18)};
  }
  throw std::invalid_argument("analytic_oracle: unknown case");
}

void write_csv_header(std::ostream& out) {
  out << "system,set_label,r,d,N,m,F,bound,status,solve_seconds,coefficients...\n";
}

void write_csv_row(std::ostream& out, const SpectralBoundResult& row) {
  char buf[64];
  out << row.system << ',' << row.set_label << ',' << row.r << ',' << row.d << ',' << row.N << ','
      << row.m << ',';
  std::snprintf(buf, sizeof buf, "%.8f,%.8f", row.F, row.bound);
  out << buf << ',' << to_string(row.status) << ',';
  std::snprintf(buf, sizeof buf, "%.3f", row.solve_seconds);
  out << buf;
  for (const auto& c : row.coefficients) {
    out << ",c[";
    for (int i = 0; i < c.weight.size(); ++i) out << (i ? " " : "") << c.weight.coords[i];
    std::snprintf(buf, sizeof buf, "%.8f", c.value);
    out << "]=" << buf << (c.negligible ? "*" : "");
  }
  out << '\n';
}

}  // namespace chebsdp
