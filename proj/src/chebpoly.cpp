#include "chebsdp/chebpoly.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace chebsdp {

namespace {

// Per-root-system memoization of orbits, structure constants and monomial
// expansions.  Keyed by the type string: two RootSystemData instances of the
// same type are identical (the construction is deterministic).
struct SysCache {
  std::map<Weight, std::vector<Weight>> orbits;
  std::map<Weight, std::vector<std::vector<double>>> orbit_euclid;
  std::map<std::pair<Weight, Weight>, std::map<Weight, Rational>> products;
  std::map<std::pair<Weight, Weight>, std::map<Weight, Rational>> real_products;
  std::map<Weight, MonomialPoly> monomials;
};

std::mutex cache_mutex;

SysCache& sys_cache(const RootSystemData& data) {
  static std::map<std::string, SysCache> caches;
  return caches[data.type.str()];
}

const std::vector<Weight>& cached_orbit(const RootSystemData& data, const Weight& lambda) {
  auto& cache = sys_cache(data).orbits;
  auto it = cache.find(lambda);
  if (it == cache.end()) it = cache.emplace(lambda, orbit(data, lambda)).first;
  return it->second;
}

const std::vector<std::vector<double>>& cached_orbit_euclid(const RootSystemData& data,
                                                            const Weight& lambda) {
  auto& cache = sys_cache(data).orbit_euclid;
  auto it = cache.find(lambda);
  if (it == cache.end()) {
    std::vector<std::vector<double>> pts;
    for (const auto& mu : cached_orbit(data, lambda)) {
      const QVec e = euclidean(data, mu);
      std::vector<double> p(e.size());
      for (std::size_t k = 0; k < e.size(); ++k) p[k] = to_double(e[k]);
      pts.push_back(std::move(p));
    }
    it = cache.emplace(lambda, std::move(pts)).first;
  }
  return it->second;
}

void require_dominant(const Weight& w) {
  if (!w.is_dominant()) throw std::invalid_argument("chebpoly: weight must be dominant");
}

// The realified basis element That_kappa is indexed by dominant kappa; the
// lex-larger weight of a conjugate pair carries the real part, the lex-smaller
// the imaginary part.  This helper expands That_kappa in the complex basis.
std::map<Weight, CRat> real_basis_in_complex(const RootSystemData& data, const Weight& kappa) {
  const Weight ks = conjugate(data, kappa);
  std::map<Weight, CRat> out;
  if (ks == kappa) {
    out[kappa] = CRat(1);
  } else if (kappa > ks) {  // That_kappa = Re theta_kappa = (T_kappa + T_ks)/2
    out[kappa] = CRat(Rational(1, 2));
    out[ks] = CRat(Rational(1, 2));
  } else {  // That_kappa = Im theta_ks = (T_ks - T_kappa)/(2i)
    out[ks] = CRat(0, Rational(-1, 2));
    out[kappa] = CRat(0, Rational(1, 2));
  }
  return out;
}

// Converts a real-valued polynomial given on the complex basis to realified
// coordinates.  Assumes c_{conj kappa} = conj(c_kappa) for every term.
std::map<Weight, CRat> complex_to_real_basis(const RootSystemData& data,
                                             const std::map<Weight, CRat>& terms) {
  std::map<Weight, CRat> out;
  auto add = [&out](const Weight& w, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = out.try_emplace(w, CRat(c));
    if (!fresh) {
      it->second += CRat(c);
      if (it->second.is_zero()) out.erase(it);
    }
  };
  for (const auto& [kappa, c] : terms) {
    const Weight ks = conjugate(data, kappa);
    if (ks == kappa) {
      add(kappa, c.re);  // c is real for sigma-fixed weights
    } else if (kappa > ks) {
      // c T_kappa + conj(c) T_ks = 2 Re(c) That_kappa - 2 Im(c) That_ks.
      add(kappa, 2 * c.re);
      add(ks, -2 * c.im);
    }  // the lex-smaller partner is handled together with the larger one
  }
  return out;
}

}  // namespace

void InvariantPoly::add_term(const Weight& w, const CRat& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

bool InvariantPoly::is_real_valued() const {
  if (realified) {
    for (const auto& [w, c] : terms)
      if (!c.is_real()) return false;
    return true;
  }
  for (const auto& [w, c] : terms) {
    const Weight ws = conjugate(*system, w);
    auto it = terms.find(ws);
    if (it == terms.end() || it->second != c.conj()) return false;
  }
  return true;
}

Rational InvariantPoly::weighted_degree_bound() const {
  Rational d = 0;
  for (const auto& [w, c] : terms) d = std::max(d, weighted_degree(*system, w));
  return d;
}

InvariantPoly cheb_term(const RootSystemData& sys, const Weight& lambda, const CRat& c) {
  require_dominant(lambda);
  InvariantPoly p(sys);
  p.add_term(lambda, c);
  return p;
}

const std::map<Weight, Rational>& basis_product(const RootSystemData& data, const Weight& lambda,
                                                const Weight& nu) {
  require_dominant(lambda);
  require_dominant(nu);
  std::scoped_lock lock(cache_mutex);
  const std::pair<Weight, Weight> key =
      lambda <= nu ? std::pair(lambda, nu) : std::pair(nu, lambda);
  auto& cache = sys_cache(data).products;
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  // Expand over the smaller of the two orbits:
  // T_a T_b = (1/|W b|) sum_{mu in W b} T_dom(a + mu).
  Weight a = lambda, b = nu;
  if (cached_orbit(data, a).size() < cached_orbit(data, b).size()) std::swap(a, b);
  const auto& orb = cached_orbit(data, b);
  std::map<Weight, Rational> out;
  const Rational inv_size = Rational(1, static_cast<long>(orb.size()));
  for (const auto& mu : orb) {
    Weight s = a;
    for (int i = 0; i < s.size(); ++i) s.coords[i] += mu.coords[i];
    Weight dom = dominant_representative(data, s).first;
    out[dom] += inv_size;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return cache.emplace(key, std::move(out)).first->second;
}

const std::map<Weight, Rational>& real_basis_product(const RootSystemData& data,
                                                     const Weight& lambda, const Weight& nu) {
  require_dominant(lambda);
  require_dominant(nu);
  const std::pair<Weight, Weight> key =
      lambda <= nu ? std::pair(lambda, nu) : std::pair(nu, lambda);
  {
    std::scoped_lock lock(cache_mutex);
    auto& cache = sys_cache(data).real_products;
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::map<Weight, CRat> fa, fb;
  {
    // real_basis_in_complex and the later conversion use conjugate(); keep
    // the lock scoped to the product-table accesses only.
    fa = real_basis_in_complex(data, lambda);
    fb = real_basis_in_complex(data, nu);
  }
  std::map<Weight, CRat> prod;
  for (const auto& [wa, ca] : fa)
    for (const auto& [wb, cb] : fb) {
      const CRat c = ca * cb;
      for (const auto& [w, r] : basis_product(data, wa, wb)) {
        auto [it, fresh] = prod.try_emplace(w, c * CRat(r));
        if (!fresh) it->second += c * CRat(r);
      }
    }
  std::erase_if(prod, [](const auto& kv) { return kv.second.is_zero(); });
  std::map<Weight, CRat> real = complex_to_real_basis(data, prod);

  std::scoped_lock lock(cache_mutex);
  auto& cache = sys_cache(data).real_products;
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::map<Weight, Rational> out;
  for (const auto& [w, c] : real) {
    if (!c.is_real()) throw std::logic_error("real_basis_product: non-real structure constant");
    out[w] = c.re;
  }
  return cache.emplace(key, std::move(out)).first->second;
}

InvariantPoly cheb_mul(const InvariantPoly& p, const InvariantPoly& q) {
  if (p.system == nullptr || q.system == nullptr || !(p.system->type == q.system->type))
    throw std::invalid_argument("cheb_mul: mismatched root systems");
  if (p.realified != q.realified)
    throw std::invalid_argument("cheb_mul: mismatched bases (complex vs realified)");
  InvariantPoly out(*p.system, p.realified);
  for (const auto& [wp, cp] : p.terms)
    for (const auto& [wq, cq] : q.terms) {
      const CRat c = cp * cq;
      const auto& table = p.realified ? real_basis_product(*p.system, wp, wq)
                                      : basis_product(*p.system, wp, wq);
      for (const auto& [w, r] : table) out.add_term(w, c * CRat(r));
    }
  return out;
}

std::complex<double> theta_numeric(const RootSystemData& data, const Weight& lambda,
                                   const std::vector<double>& u) {
  require_dominant(lambda);
  if (static_cast<int>(u.size()) != data.ambient_dim)
    throw std::invalid_argument("theta_numeric: u has wrong dimension");
  const std::vector<std::vector<double>>* orb;
  {
    std::scoped_lock lock(cache_mutex);
    orb = &cached_orbit_euclid(data, lambda);
  }
  std::complex<double> s = 0;
  for (const auto& mu : *orb) {
    double ip = 0;
    for (std::size_t k = 0; k < mu.size(); ++k) ip += mu[k] * u[k];
    s += std::polar(1.0, 2.0 * std::numbers::pi * ip);
  }
  return s / static_cast<double>(orb->size());
}

std::complex<double> eval_numeric(const InvariantPoly& p, const std::vector<double>& u) {
  const RootSystemData& data = *p.system;
  std::complex<double> s = 0;
  for (const auto& [w, c] : p.terms) {
    std::complex<double> basis_val;
    if (!p.realified) {
      basis_val = theta_numeric(data, w, u);
    } else {
      const Weight ws = conjugate(data, w);
      if (ws == w)
        basis_val = theta_numeric(data, w, u).real();
      else if (w > ws)
        basis_val = theta_numeric(data, w, u).real();
      else
        basis_val = theta_numeric(data, ws, u).imag();
    }
    s += c.to_complex() * basis_val;
  }
  return s;
}

std::vector<double> theta_coords_realified(const RootSystemData& data,
                                           const std::vector<double>& u) {
  std::vector<double> z(data.rank);
  for (int i = 0; i < data.rank; ++i) {
    if (data.sigma[i] < i) continue;  // filled by its partner below
    Weight w(std::vector<int>(data.rank, 0));
    w.coords[i] = 1;
    const std::complex<double> v = theta_numeric(data, w, u);
    z[i] = v.real();
    if (data.sigma[i] > i) z[data.sigma[i]] = v.imag();
  }
  return z;
}

InvariantPoly realify(const InvariantPoly& p) {
  if (p.realified) return p;
  if (!p.is_real_valued()) throw std::invalid_argument("realify: polynomial is not real-valued");
  InvariantPoly out(*p.system, true);
  out.terms = complex_to_real_basis(*p.system, p.terms);
  return out;
}

// ---- monomial expansion ----

void MonomialPoly::add_term(const std::vector<int>& expo, const CRat& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms.try_emplace(expo, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

std::complex<double> MonomialPoly::eval(const std::vector<double>& zhat) const {
  if (static_cast<int>(zhat.size()) != nvars)
    throw std::invalid_argument("MonomialPoly::eval: wrong number of variables");
  std::complex<double> s = 0;
  for (const auto& [expo, c] : terms) {
    double m = 1;
    for (int i = 0; i < nvars; ++i)
      for (int k = 0; k < expo[i]; ++k) m *= zhat[i];
    s += c.to_complex() * m;
  }
  return s;
}

bool MonomialPoly::is_real() const {
  for (const auto& [e, c] : terms)
    if (!c.is_real()) return false;
  return true;
}

MonomialPoly MonomialPoly::real_part() const {
  // The variables zhat_i are real, so Re just projects the coefficients.
  MonomialPoly out;
  out.nvars = nvars;
  for (const auto& [e, c] : terms)
    if (c.re != 0) out.terms.emplace(e, CRat(c.re));
  return out;
}

MonomialPoly MonomialPoly::imag_part() const {
  MonomialPoly out;
  out.nvars = nvars;
  for (const auto& [e, c] : terms)
    if (c.im != 0) out.terms.emplace(e, CRat(c.im));
  return out;
}

MonomialPoly monomial_mul(const MonomialPoly& a, const MonomialPoly& b) {
  if (a.nvars != b.nvars) throw std::invalid_argument("monomial_mul: variable count mismatch");
  MonomialPoly out;
  out.nvars = a.nvars;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> e(ea);
      for (int i = 0; i < out.nvars; ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

namespace {

// z_i = theta_{omega_i} written in the realified variables:
// zhat_i for sigma-fixed i, zhat_i + I zhat_{sigma(i)} for i < sigma(i),
// zhat_{sigma(i)} - I zhat_i for i > sigma(i).
MonomialPoly coordinate_monomial(const RootSystemData& data, int i) {
  MonomialPoly z;
  z.nvars = data.rank;
  std::vector<int> e(data.rank, 0);
  const int j = data.sigma[i];
  if (j == i) {
    e[i] = 1;
    z.add_term(e, CRat(1));
  } else if (i < j) {
    e[i] = 1;
    z.add_term(e, CRat(1));
    e[i] = 0;
    e[j] = 1;
    z.add_term(e, CRat(0, 1));
  } else {
    e[j] = 1;
    z.add_term(e, CRat(1));
    e[j] = 0;
    e[i] = 1;
    z.add_term(e, CRat(0, -1));
  }
  return z;
}

const MonomialPoly& cheb_to_monomial_locked(const RootSystemData& data, const Weight& lambda) {
  auto& cache = sys_cache(data).monomials;
  if (auto it = cache.find(lambda); it != cache.end()) return it->second;

  MonomialPoly out;
  out.nvars = data.rank;
  if (lambda.is_zero()) {
    out.add_term(std::vector<int>(data.rank, 0), CRat(1));
    return cache.emplace(lambda, std::move(out)).first->second;
  }

  // Pick the least index with a positive coordinate and peel one omega_i:
  // z_i T_{lambda'} = sum_mu r_mu T_mu with top term lambda, every other mu
  // strictly below lambda in the dominance order.  Solve for T_lambda.
  int i = 0;
  while (lambda.coords[i] == 0) ++i;
  Weight rest = lambda;
  rest.coords[i] -= 1;
  Weight omega_i(std::vector<int>(data.rank, 0));
  omega_i.coords[i] = 1;

  const auto products = basis_product(data, omega_i, rest);  // copy: recursion mutates caches
  const Rational pivot = products.at(lambda);
  MonomialPoly acc = monomial_mul(coordinate_monomial(data, i),
                                  cheb_to_monomial_locked(data, rest));
  for (const auto& [mu, r] : products) {
    if (mu == lambda) continue;
    const MonomialPoly& lower = cheb_to_monomial_locked(data, mu);
    for (const auto& [e, c] : lower.terms) acc.add_term(e, -(CRat(r) * c));
  }
  for (const auto& [e, c] : acc.terms) out.add_term(e, c / pivot);
  return cache.emplace(lambda, std::move(out)).first->second;
}

}  // namespace

const MonomialPoly& cheb_to_monomial(const RootSystemData& data, const Weight& lambda) {
  require_dominant(lambda);
  return cheb_to_monomial_locked(data, lambda);
}

MonomialPoly realified_monomial(const RootSystemData& data, const Weight& kappa) {
  const Weight ks = conjugate(data, kappa);
  if (kappa >= ks) return cheb_to_monomial(data, kappa).real_part();
  return cheb_to_monomial(data, ks).imag_part();
}

MonomialPoly to_monomial(const InvariantPoly& p) {
  MonomialPoly out;
  out.nvars = p.system->rank;
  for (const auto& [w, c] : p.terms) {
    const MonomialPoly m =
        p.realified ? realified_monomial(*p.system, w) : cheb_to_monomial(*p.system, w);
    for (const auto& [e, mc] : m.terms) out.add_term(e, c * mc);
  }
  return out;
}

}  // namespace chebsdp
