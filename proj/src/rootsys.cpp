#include "chebsdp/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace chebsdp {

namespace {

void check_rank(char family, int rank) {
  switch (family) {
    case 'A':
      if (rank < 1) throw std::invalid_argument("A_n requires rank >= 1");
      break;
    case 'B':
    case 'C':
      if (rank < 2) throw std::invalid_argument("B_n/C_n require rank >= 2");
      break;
    case 'D':
      if (rank < 4) throw std::invalid_argument("D_n requires rank >= 4");
      break;
    case 'G':
      if (rank != 2) throw std::invalid_argument("G_2 requires rank 2");
      break;
    default:
      throw std::invalid_argument(std::string("unknown family '") + family + "'");
  }
}

int ambient_dim_of(char family, int rank) {
  if (family == 'A') return rank + 1;
  if (family == 'G') return 3;
  return rank;
}

std::vector<QVec> simple_roots_of(char family, int rank) {
  const int amb = ambient_dim_of(family, rank);
  auto e = [&](int i) {
    QVec v(amb, Rational(0));
    v[i] = 1;
    return v;
  };
  auto diff = [&](int i, int j) {
    QVec v(amb, Rational(0));
    v[i] = 1;
    v[j] = -1;
    return v;
  };
  std::vector<QVec> rho;
  switch (family) {
    case 'A':
      for (int i = 0; i + 1 <= rank; ++i) rho.push_back(diff(i, i + 1));
      break;
    case 'B':
      for (int i = 0; i + 1 < rank; ++i) rho.push_back(diff(i, i + 1));
      rho.push_back(e(rank - 1));
      break;
    case 'C': {
      for (int i = 0; i + 1 < rank; ++i) rho.push_back(diff(i, i + 1));
      QVec last(amb, Rational(0));
      last[rank - 1] = 2;
      rho.push_back(last);
      break;
    }
    case 'D': {
      for (int i = 0; i + 1 < rank; ++i) rho.push_back(diff(i, i + 1));
      QVec last(amb, Rational(0));
      last[rank - 2] = 1;
      last[rank - 1] = 1;
      rho.push_back(last);
      break;
    }
    case 'G':
      rho.push_back(QVec{Rational(1), Rational(-1), Rational(0)});
      rho.push_back(QVec{Rational(-2), Rational(1), Rational(1)});
      break;
    default:
      throw std::invalid_argument("unknown family");
  }
  return rho;
}

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Integer weyl_order_of(char family, int rank) {
  switch (family) {
    case 'A': return factorial(rank + 1);
    case 'B':
    case 'C': return (Integer(1) << rank) * factorial(rank);
    case 'D': return (Integer(1) << (rank - 1)) * factorial(rank);
    case 'G': return 12;
  }
  throw std::invalid_argument("unknown family");
}

// Reflection of an ambient vector in the hyperplane of a root.
QVec reflect(const QVec& v, const QVec& root, const QVec& coroot) {
  const Rational c = dot(v, coroot);
  QVec w = v;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * root[i];
  return w;
}

}  // namespace

int RootSystemType::total_rank() const {
  int r = 0;
  for (const auto& f : factors) r += f.rank;
  return r;
}

RootSystemType RootSystemType::parse(const std::string& spec) {
  RootSystemType t;
  std::string token;
  auto flush = [&]() {
    if (token.empty()) throw std::invalid_argument("empty factor in root system spec '" + spec + "'");
    const char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(token[0])));
    const std::string num = token.substr(1);
    if (num.empty() || !std::all_of(num.begin(), num.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw std::invalid_argument("malformed factor '" + token + "' in root system spec");
    const int rank = std::stoi(num);
    check_rank(fam, rank);
    t.factors.push_back({fam, rank});
    token.clear();
  };
  for (char c : spec) {
    if (c == 'x' || c == 'X') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      token.push_back(c);
    }
  }
  flush();
  return t;
}

std::string RootSystemType::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) os << 'x';
    os << factors[i].family << factors[i].rank;
  }
  return os.str();
}

bool Weight::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](int c) { return c == 0; });
}

bool Weight::is_dominant() const {
  return std::all_of(coords.begin(), coords.end(), [](int c) { return c >= 0; });
}

int Weight::coord_sum() const { return std::accumulate(coords.begin(), coords.end(), 0); }

const RootSystemData::FactorInfo& RootSystemData::only_factor() const {
  if (factors.size() != 1) throw std::logic_error("operation requires an irreducible root system");
  return factors[0];
}

RootSystemData build(const RootSystemType& type) {
  if (type.factors.empty()) throw std::invalid_argument("empty root system product");
  for (const auto& f : type.factors) check_rank(f.family, f.rank);

  RootSystemData data;
  data.type = type;
  data.rank = type.total_rank();
  data.ambient_dim = 0;
  for (const auto& f : type.factors) data.ambient_dim += ambient_dim_of(f.family, f.rank);

  data.cartan.assign(data.rank, std::vector<int>(data.rank, 0));
  data.sigma.assign(data.rank, 0);

  int coord_off = 0, amb_off = 0;
  for (const auto& f : type.factors) {
    const int n = f.rank;
    const int amb = ambient_dim_of(f.family, f.rank);

    auto embed = [&](const QVec& v) {
      QVec w(data.ambient_dim, Rational(0));
      for (int i = 0; i < amb; ++i) w[amb_off + i] = v[i];
      return w;
    };

    const std::vector<QVec> rho = simple_roots_of(f.family, n);
    std::vector<QVec> rho_v(n);
    for (int i = 0; i < n; ++i) {
      const Rational nn = dot(rho[i], rho[i]);
      rho_v[i] = rho[i];
      for (auto& c : rho_v[i]) c = c * 2 / nn;
    }

    // Cartan matrix C[i][j] = <rho_j, rho_i^vee>; entries must be integers.
    QMat cartan_q(n, QVec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cartan_q[i][j] = dot(rho[j], rho_v[i]);
        if (denominator(cartan_q[i][j]) != 1)
          throw std::logic_error("non-integer Cartan entry");
        data.cartan[coord_off + i][coord_off + j] = cartan_q[i][j].convert_to<int>();
      }
    for (int i = 0; i < n; ++i) {
      if (data.cartan[coord_off + i][coord_off + i] != 2)
        throw std::logic_error("Cartan diagonal is not 2");
      for (int j = 0; j < n; ++j)
        if (i != j && data.cartan[coord_off + i][coord_off + j] > 0)
          throw std::logic_error("positive off-diagonal Cartan entry");
    }

    // Fundamental weights from duality: omega_i = sum_k (C^{-1})_{ki} rho_k.
    const QMat cartan_inv = invert(cartan_q);
    std::vector<QVec> omega(n, QVec(amb, Rational(0)));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int d = 0; d < amb; ++d) omega[i][d] += cartan_inv[k][i] * rho[k][d];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (dot(omega[i], rho_v[j]) != Rational(i == j ? 1 : 0))
          throw std::logic_error("fundamental weight duality check failed");

    // Enumerate all roots as the closure of the base under simple reflections.
    std::set<QVec> roots(rho.begin(), rho.end());
    std::vector<QVec> frontier(rho.begin(), rho.end());
    while (!frontier.empty()) {
      std::vector<QVec> next;
      for (const auto& v : frontier)
        for (int j = 0; j < n; ++j) {
          QVec w = reflect(v, rho[j], rho_v[j]);
          if (roots.insert(w).second) next.push_back(w);
        }
      frontier = std::move(next);
    }

    // Highest root: the unique root whose simple-root coordinates dominate
    // all others componentwise.
    QVec theta;
    std::vector<Integer> theta_marks;
    Rational best_height(-1);
    std::vector<std::pair<QVec, QVec>> root_coords;  // (root, coords in simple-root basis)
    for (const auto& r : roots) {
      QVec c = coordinates_in_basis(rho, r);
      Rational h = 0;
      for (const auto& x : c) h += x;
      if (h > best_height) {
        best_height = h;
        theta = r;
        theta_marks.clear();
        for (const auto& x : c) {
          if (denominator(x) != 1) throw std::logic_error("non-integer root coordinate");
          theta_marks.push_back(numerator(x));
        }
      }
      root_coords.emplace_back(r, std::move(c));
    }
    for (const auto& [r, c] : root_coords)
      for (int i = 0; i < n; ++i)
        if (Rational(theta_marks[i]) < c[i])
          throw std::logic_error("highest root is not >= all roots");

    QVec theta_v = theta;
    {
      const Rational nn = dot(theta, theta);
      for (auto& c : theta_v) c = c * 2 / nn;
    }

    // Comarks and the weight-lattice scaling of theta_0^vee.
    for (int i = 0; i < n; ++i) data.comarks.push_back(dot(omega[i], theta_v));
    Integer ell = 1;
    QVec tv_coords(n);
    for (int i = 0; i < n; ++i) {
      tv_coords[i] = dot(theta_v, rho_v[i]);
      ell = boost::multiprecision::lcm(ell, denominator(tv_coords[i]));
    }
    Weight vor;
    vor.coords.resize(n);
    for (int i = 0; i < n; ++i) {
      const Rational s = tv_coords[i] * ell;
      vor.coords[i] = numerator(s).convert_to<int>();
    }

    RootSystemData::FactorInfo info;
    info.family = f.family;
    info.rank = n;
    info.coord_offset = coord_off;
    info.ambient_offset = amb_off;
    info.ambient_dim = amb;
    info.highest_root = theta;
    info.highest_coroot = theta_v;
    info.ell = ell.convert_to<int>();
    info.voronoi_weight = vor;
    info.marks = theta_marks;
    data.factors.push_back(std::move(info));

    for (int i = 0; i < n; ++i) {
      data.simple_roots.push_back(embed(rho[i]));
      data.coroots.push_back(embed(rho_v[i]));
      data.fundamental_weights.push_back(embed(omega[i]));
    }
    data.weyl_order *= weyl_order_of(f.family, n);

    coord_off += n;
    amb_off += amb;
  }

  // sigma from the dominant representative of -omega_i (uses only the Cartan
  // matrix, which is already in place).
  for (int i = 0; i < data.rank; ++i) {
    Weight neg;
    neg.coords.assign(data.rank, 0);
    neg.coords[i] = -1;
    const Weight dom = dominant_representative(data, neg).first;
    int idx = -1;
    for (int j = 0; j < data.rank; ++j)
      if (dom.coords[j] == 1) {
        if (idx >= 0) throw std::logic_error("sigma image is not a fundamental weight");
        idx = j;
      }
    if (idx < 0 || dom.coord_sum() != 1) throw std::logic_error("sigma image is not a fundamental weight");
    data.sigma[i] = idx;
  }
  for (int i = 0; i < data.rank; ++i)
    if (data.sigma[data.sigma[i]] != i) throw std::logic_error("sigma is not an involution");
  data.minus_id_in_weyl = true;
  for (int i = 0; i < data.rank; ++i)
    if (data.sigma[i] != i) data.minus_id_in_weyl = false;

  return data;
}

Weight simple_reflection(const RootSystemData& data, int j, const Weight& lambda) {
  if (j < 0 || j >= data.rank) throw std::out_of_range("simple_reflection: index out of range");
  if (lambda.size() != data.rank) throw std::invalid_argument("weight rank mismatch");
  Weight mu = lambda;
  const int lj = lambda.coords[j];
  if (lj == 0) return mu;
  for (int i = 0; i < data.rank; ++i) mu.coords[i] -= lj * data.cartan[i][j];
  return mu;
}

std::pair<Weight, int> dominant_representative(const RootSystemData& data, const Weight& lambda) {
  Weight mu = lambda;
  if (mu.size() != data.rank) throw std::invalid_argument("weight rank mismatch");
  int count = 0;
  for (;;) {
    int j = -1;
    for (int i = 0; i < data.rank; ++i)
      if (mu.coords[i] < 0) {
        j = i;
        break;
      }
    if (j < 0) return {mu, count};
    mu = simple_reflection(data, j, mu);
    ++count;
  }
}

std::vector<Weight> orbit(const RootSystemData& data, const Weight& lambda) {
  if (!lambda.is_dominant()) throw std::invalid_argument("orbit: weight must be dominant");
  std::set<Weight> seen{lambda};
  std::vector<Weight> frontier{lambda};
  while (!frontier.empty()) {
    std::vector<Weight> next;
    for (const auto& w : frontier)
      for (int j = 0; j < data.rank; ++j) {
        Weight v = simple_reflection(data, j, w);
        if (seen.insert(v).second) next.push_back(v);
      }
    frontier = std::move(next);
  }
  std::vector<Weight> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const Weight& a, const Weight& b) {
    const int sa = a.coord_sum(), sb = b.coord_sum();
    if (sa != sb) return sa < sb;
    return a.coords < b.coords;
  });
  return out;
}

Weight conjugate(const RootSystemData& data, const Weight& lambda) {
  if (!lambda.is_dominant()) throw std::invalid_argument("conjugate: weight must be dominant");
  Weight mu;
  mu.coords.assign(data.rank, 0);
  for (int i = 0; i < data.rank; ++i) mu.coords[data.sigma[i]] = lambda.coords[i];
  return mu;
}

Rational weighted_degree(const RootSystemData& data, const Weight& lambda) {
  if (lambda.size() != data.rank) throw std::invalid_argument("weight rank mismatch");
  Rational wd = 0;
  for (int i = 0; i < data.rank; ++i) wd += Rational(lambda.coords[i]) * data.comarks[i];
  return wd;
}

QVec euclidean(const RootSystemData& data, const Weight& lambda) {
  if (lambda.size() != data.rank) throw std::invalid_argument("weight rank mismatch");
  QVec v(data.ambient_dim, Rational(0));
  for (int i = 0; i < data.rank; ++i) {
    if (lambda.coords[i] == 0) continue;
    for (int d = 0; d < data.ambient_dim; ++d)
      v[d] += Rational(lambda.coords[i]) * data.fundamental_weights[i][d];
  }
  return v;
}

std::vector<std::vector<QVec>> alcove_simplices(const RootSystemData& data) {
  std::vector<std::vector<QVec>> simplices;
  for (const auto& f : data.factors) {
    std::vector<QVec> verts;
    verts.push_back(QVec(data.ambient_dim, Rational(0)));
    // Fundamental coweights in the coroot basis: omega_i^vee = sum_k
    // (C^{-1})_{ik} rho_k^vee; the alcove vertex is omega_i^vee / mark_i.
    QMat cartan_q(f.rank, QVec(f.rank));
    for (int i = 0; i < f.rank; ++i)
      for (int j = 0; j < f.rank; ++j)
        cartan_q[i][j] = data.cartan[f.coord_offset + i][f.coord_offset + j];
    const QMat inv = invert(cartan_q);
    for (int i = 0; i < f.rank; ++i) {
      QVec v(data.ambient_dim, Rational(0));
      for (int k = 0; k < f.rank; ++k)
        for (int d = 0; d < data.ambient_dim; ++d)
          v[d] += inv[i][k] * data.coroots[f.coord_offset + k][d];
      const Rational m(f.marks[i]);
      for (auto& c : v) c /= m;
      verts.push_back(std::move(v));
    }
    simplices.push_back(std::move(verts));
  }
  return simplices;
}

}  // namespace chebsdp
