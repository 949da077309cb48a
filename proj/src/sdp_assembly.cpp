#include "chebsdp/sdp_assembly.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chebsdp {

namespace {

// Enumerate dominant weights with sum lambda_i * comark_i <= d by bounded
// knapsack over the coordinates.
void enumerate_filtration(const RootSystemData& data, int d, int pos, Weight& current,
                          const Rational& used, std::vector<Weight>& out) {
  if (pos == data.rank) {
    out.push_back(current);
    return;
  }
  for (int a = 0;; ++a) {
    const Rational next = used + a * data.comarks[pos];
    if (next > d) break;
    current.coords[pos] = a;
    enumerate_filtration(data, d, pos + 1, current, next, out);
  }
  current.coords[pos] = 0;
}

int rational_to_int(const Rational& r) {
  if (denominator(r) != 1) throw std::logic_error("expected integral rational");
  return numerator(r).convert_to<int>();
}

std::string cache_filename(const RootSystemData& data, int d, bool ball, bool localized,
                           bool adaptive) {
  std::ostringstream name;
  name << "moments_" << data.type.str() << "_d" << d << "_ball" << int(ball) << "_loc"
       << int(localized) << (adaptive ? "" : "_unif") << ".cache";
  return name.str();
}

constexpr const char* kCacheMagic = "chebsdp-moment-cache";
constexpr int kCacheVersion = 3;

void save_cache(const SdpCoefficients& c, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path path =
      fs::path(dir) / cache_filename(*c.system, c.d, c.ball, c.localized, c.adaptive);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;  // caching is best-effort
    out << kCacheMagic << ' ' << kCacheVersion << '\n';
    out << c.system->type.str() << ' ' << c.d << ' ' << int(c.ball) << ' ' << int(c.localized)
        << '\n';
    out << c.A.size() << '\n';
    for (const auto& [w, entries] : c.A) {
      for (int x : w.coords) out << x << ' ';
      out << entries.size() << '\n';
      for (const auto& e : entries)
        out << e.block << ' ' << e.i << ' ' << e.j << ' ' << e.value << '\n';
    }
  }
  fs::rename(tmp, path, ec);  // atomic publish
}

bool load_cache(SdpCoefficients& c, const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path path =
      fs::path(dir) / cache_filename(*c.system, c.d, c.ball, c.localized, c.adaptive);
  std::ifstream in(path);
  if (!in) return false;
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != kCacheMagic || version != kCacheVersion) return false;
  std::string type;
  int d = 0, ball = 0, localized = 0;
  in >> type >> d >> ball >> localized;
  if (type != c.system->type.str() || d != c.d || ball != int(c.ball) ||
      localized != int(c.localized))
    return false;
  std::size_t nweights = 0;
  in >> nweights;
  std::map<Weight, std::vector<SdpCoefficients::Entry>> A;
  for (std::size_t k = 0; k < nweights; ++k) {
    Weight w(std::vector<int>(c.system->rank, 0));
    for (int& x : w.coords) in >> x;
    std::size_t nentries = 0;
    in >> nentries;
    auto& entries = A[w];
    entries.resize(nentries);
    for (auto& e : entries) {
      std::string value;
      in >> e.block >> e.i >> e.j >> value;
      e.value = Rational(value);
    }
    if (!in) return false;
  }
  c.A = std::move(A);
  return true;
}

SdpCoefficients assemble_impl(const RootSystemData& data, int d, bool ball, bool require_localized,
                              const std::string& cache_dir, bool adaptive) {
  const HermiteMatrix P = hermite_matrix(data);
  const int D = rational_to_int(P.D);
  if (require_localized && d < D)
    throw std::invalid_argument("assemble_coefficient_matrices: order d = " + std::to_string(d) +
                                " is below the minimal order D = " + std::to_string(D));

  SdpCoefficients c;
  c.system = &data;
  c.d = d;
  c.ball = ball;
  // Small (max-min) instances below the minimal order still keep the partial
  // localized rows that fit, i.e. rows (a, t) with h_a + wd(t) <= d; the
  // uniform truncation has no multipliers there, so the partial rows always
  // use the entry-adaptive half-degrees.
  const bool partial = !require_localized && d >= 1 && d < D;
  c.localized = d >= D || partial;
  c.adaptive = adaptive;
  c.D = D;
  c.basis = filtration(data, d);
  if (d >= D) c.loc_basis = filtration(data, d - D);
  const auto filt2d = filtration(data, 2 * d);
  c.weights_2d = filt2d.weights;

  c.block_dims.push_back(c.basis.dim());
  if (c.localized)
    for (const auto& block : P.blocks) {
      c.loc_rows.emplace_back();
      auto& rows = c.loc_rows.back();
      for (int a = 0; a < block.size; ++a) {
        const int h = adaptive || partial ? block.row_degrees[a] : D;
        if (d < h) continue;
        for (const auto& t : filtration(data, d - h).weights) rows.push_back({a, t});
      }
      c.block_dims.push_back(static_cast<int>(rows.size()));
    }
  // Reported bookkeeping: uniform localized split, ball excluded.
  c.N = c.basis.dim();
  c.reported_split.push_back(c.basis.dim());
  if (d >= D)
    for (const auto& block : P.blocks) {
      c.N += block.size * c.loc_basis.dim();
      c.reported_split.push_back(block.size * c.loc_basis.dim());
    }
  c.m = filt2d.dim() - 1;

  int ball_block = -1;
  if (ball) {
    const auto ballp = ball_polynomial(data);
    int ball_half = 0;  // ceil(wd(ball) / 2)
    {
      const Rational wd = ballp.weighted_degree_bound();
      ball_half = ((numerator(wd) + 2 * denominator(wd) - 1) / (2 * denominator(wd)))
                      .convert_to<int>();
    }
    if (d < ball_half) {
      ball = false;  // the ball polynomial itself does not fit in filt_2d
      c.ball = false;
    } else {
      c.ball_basis = filtration(data, d - ball_half);
      ball_block = static_cast<int>(c.block_dims.size());
      c.block_dims.push_back(c.ball_basis.dim());
    }
  }

  if (!cache_dir.empty() && load_cache(c, cache_dir)) return c;

  auto check_degree = [&](const Weight& w) {
    if (weighted_degree(data, w) > 2 * d)
      throw std::logic_error("assembly produced a weight above the 2d filtration bound");
  };

  // Moment block.
  for (int i = 0; i < c.basis.dim(); ++i)
    for (int j = i; j < c.basis.dim(); ++j)
      for (const auto& [w, r] : real_basis_product(data, c.basis.weights[i], c.basis.weights[j])) {
        check_degree(w);
        c.A[w].push_back({0, i, j, r});
      }

  // Localized blocks, one per irreducible factor.  Row (a, t) stands for
  // entry-row a of the Hermite block times multiplier T_t with
  // wd(t) <= d - h_a; the matrix entry is L(P_ab That_t That_u).  Entries
  // depend on a+b only (Hankel), so products are cached per (a+b, t, u),
  // with t, u indexed in the largest multiplier filtration (the smaller ones
  // are prefixes of it).
  if (c.localized)
    for (std::size_t f = 0; f < P.blocks.size(); ++f) {
      const auto& hb = P.blocks[f];
      const int block = 1 + static_cast<int>(f);
      const auto& rows = c.loc_rows[f];
      const auto big = filtration(data, d - *std::min_element(hb.row_degrees.begin(),
                                                              hb.row_degrees.end()));
      std::map<std::tuple<int, int, int>, InvariantPoly> products;
      for (std::size_t r1 = 0; r1 < rows.size(); ++r1)
        for (std::size_t r2 = r1; r2 < rows.size(); ++r2) {
          const int a = rows[r1].entry_row, b = rows[r2].entry_row;
          const int t = big.index.at(rows[r1].multiplier), u = big.index.at(rows[r2].multiplier);
          const auto key = std::make_tuple(a + b, std::min(t, u), std::max(t, u));
          auto it = products.find(key);
          if (it == products.end()) {
            InvariantPoly pair(data, true);
            for (const auto& [w, r] :
                 real_basis_product(data, rows[r1].multiplier, rows[r2].multiplier))
              pair.add_term(w, CRat(r));
            it = products.emplace(key, cheb_mul(hb.entries[a][b], pair)).first;
          }
          for (const auto& [w, coeff] : it->second.terms) {
            check_degree(w);
            if (!coeff.is_real())
              throw std::logic_error("localized entry has non-real coefficient");
            c.A[w].push_back({block, static_cast<int>(r1), static_cast<int>(r2), coeff.re});
          }
        }
    }

  // Archimedean ball block, localized with multipliers from ball_basis.
  if (ball) {
    const auto ballp = ball_polynomial(data);
    for (int t = 0; t < c.ball_basis.dim(); ++t)
      for (int u = t; u < c.ball_basis.dim(); ++u) {
        InvariantPoly pair(data, true);
        for (const auto& [w, r] :
             real_basis_product(data, c.ball_basis.weights[t], c.ball_basis.weights[u]))
          pair.add_term(w, CRat(r));
        for (const auto& [w, coeff] : cheb_mul(ballp, pair).terms) {
          check_degree(w);
          if (!coeff.is_real()) throw std::logic_error("ball entry has non-real coefficient");
          c.A[w].push_back({ball_block, t, u, coeff.re});
        }
      }
  }

  // Merge duplicate positions so each A_omega lists every (block, i, j) once.
  for (auto& [w, entries] : c.A) {
    std::map<std::tuple<int, int, int>, Rational> merged;
    for (const auto& e : entries) merged[{e.block, e.i, e.j}] += e.value;
    entries.clear();
    for (const auto& [key, v] : merged)
      if (v != 0) entries.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), v});
  }
  std::erase_if(c.A, [](const auto& kv) { return kv.second.empty(); });

  if (!cache_dir.empty()) save_cache(c, cache_dir);
  return c;
}

void append_entries(std::vector<StandardSdp::Entry>& out,
                    const std::vector<SdpCoefficients::Entry>& in, double scale = 1.0) {
  for (const auto& e : in) out.push_back({e.block, e.i, e.j, scale * to_double(e.value)});
}

}  // namespace

FiltrationBasis filtration(const RootSystemData& data, int d) {
  if (d < 0) throw std::invalid_argument("filtration: d must be >= 0");
  FiltrationBasis basis;
  basis.system = &data;
  basis.d = d;
  Weight current(std::vector<int>(data.rank, 0));
  enumerate_filtration(data, d, 0, current, 0, basis.weights);
  std::sort(basis.weights.begin(), basis.weights.end(), [&](const Weight& a, const Weight& b) {
    const Rational wa = weighted_degree(data, a), wb = weighted_degree(data, b);
    if (wa != wb) return wa < wb;
    return a < b;
  });
  for (int i = 0; i < basis.dim(); ++i) basis.index.emplace(basis.weights[i], i);
  return basis;
}

SdpCoefficients assemble_coefficient_matrices(const RootSystemData& data, int d, bool ball,
                                              const std::string& cache_dir, bool adaptive) {
  return assemble_impl(data, d, ball, /*require_localized=*/true, cache_dir, adaptive);
}

SdpCoefficients assemble_coefficient_matrices_small(const RootSystemData& data, int d, bool ball,
                                                    const std::string& cache_dir, bool adaptive) {
  return assemble_impl(data, d, ball, /*require_localized=*/false, cache_dir, adaptive);
}

AssembledSdp assemble_minimize(const SdpCoefficients& coeffs, const InvariantPoly& f) {
  const RootSystemData& data = *coeffs.system;
  if (f.system == nullptr || !(f.system->type == data.type))
    throw std::invalid_argument("assemble_minimize: polynomial on a different root system");
  InvariantPoly fr = f.realified ? f : realify(f);
  if (fr.weighted_degree_bound() > 2 * coeffs.d) {
    const Rational wd = fr.weighted_degree_bound();
    const int need = std::max(coeffs.D, rational_to_int(Rational(numerator(wd) +
                                                                2 * denominator(wd) - 1) /
                                                        (2 * denominator(wd))));
    throw std::invalid_argument("assemble_minimize: order too small for f; need d >= " +
                                std::to_string(need));
  }

  std::map<Weight, double> c;
  for (const auto& [w, coeff] : fr.terms) {
    if (!coeff.is_real()) throw std::invalid_argument("assemble_minimize: f must be real-valued");
    c[w] = to_double(coeff.re);
  }
  const Weight zero(std::vector<int>(data.rank, 0));

  AssembledSdp out;
  out.sdp.block_dims = coeffs.block_dims;
  out.objective_offset = c.count(zero) ? c.at(zero) : 0.0;
  out.N = coeffs.N;
  out.m = coeffs.m;
  out.reported_split = coeffs.reported_split;

  if (auto it = coeffs.A.find(zero); it != coeffs.A.end())
    append_entries(out.sdp.C, it->second, -1.0);  // F_0 = -A_0

  for (const auto& w : coeffs.weights_2d) {
    if (w == zero) continue;
    const double cw = c.count(w) ? c.at(w) : 0.0;
    auto it = coeffs.A.find(w);
    if (it == coeffs.A.end()) {
      // A_w vanishes identically: the constraint tr(A_w X) = c_w is either
      // vacuous or makes the instance infeasible.
      if (cw != 0.0)
        throw std::invalid_argument("assemble_minimize: f has a term unreachable at this order");
      continue;
    }
    out.sdp.constraints.emplace_back();
    append_entries(out.sdp.constraints.back(), it->second);
    out.sdp.b.push_back(cw);
    out.constraint_weights.push_back(w);
  }
  return out;
}

AssembledSdp assemble_maxmin(const SdpCoefficients& coeffs, const std::vector<Weight>& S) {
  const RootSystemData& data = *coeffs.system;
  if (S.empty()) throw std::invalid_argument("assemble_maxmin: empty avoided set");
  const Weight zero(std::vector<int>(data.rank, 0));
  std::map<Weight, int> set_index;
  for (const auto& w : S) {
    if (!w.is_dominant() || w.is_zero())
      throw std::invalid_argument("assemble_maxmin: set elements must be dominant and nonzero");
    if (weighted_degree(data, w) > 2 * coeffs.d)
      throw std::invalid_argument("assemble_maxmin: order too small for the avoided set");
    set_index.emplace(w, static_cast<int>(set_index.size()));
  }

  AssembledSdp out;
  out.set_weights = S;
  out.sdp.block_dims = coeffs.block_dims;
  out.slack_block = static_cast<int>(coeffs.block_dims.size());
  out.sdp.block_dims.push_back(-static_cast<int>(S.size()));
  out.N = coeffs.N;
  out.reported_split = coeffs.reported_split;

  if (auto it = coeffs.A.find(zero); it != coeffs.A.end())
    append_entries(out.sdp.C, it->second, -1.0);  // objective sup -tr(A_0 X)

  for (const auto& w : coeffs.weights_2d) {
    if (w == zero) continue;
    auto it = coeffs.A.find(w);
    const bool in_set = set_index.count(w) > 0;
    if (it == coeffs.A.end() && !in_set) continue;
    out.sdp.constraints.emplace_back();
    auto& F = out.sdp.constraints.back();
    if (it != coeffs.A.end()) append_entries(F, it->second);
    if (in_set) F.push_back({out.slack_block, set_index.at(w), set_index.at(w), -1.0});
    out.sdp.b.push_back(0.0);
    out.constraint_weights.push_back(w);
  }
  // Normalization: sum of the slack variables (= sum of tr(A_w X)) is 1.
  out.sdp.constraints.emplace_back();
  for (const auto& [w, t] : set_index)
    out.sdp.constraints.back().push_back({out.slack_block, t, t, 1.0});
  out.sdp.b.push_back(1.0);
  out.constraint_weights.push_back(zero);

  out.m = static_cast<int>(out.sdp.b.size());
  return out;
}

double trace_A_dot(const SdpCoefficients& coeffs, const Weight& omega,
                   const std::vector<Eigen::MatrixXd>& X) {
  auto it = coeffs.A.find(omega);
  if (it == coeffs.A.end()) return 0.0;
  double s = 0;
  for (const auto& e : it->second) {
    const double v = to_double(e.value);
    s += (e.i == e.j ? v * X[e.block](e.i, e.i) : 2 * v * X[e.block](e.i, e.j));
  }
  return s;
}

}  // namespace chebsdp
