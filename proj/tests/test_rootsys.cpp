#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chebsdp/rootsys.hpp"

#include <random>

using namespace chebsdp;

namespace {

Rational binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  Rational r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

QVec qvec(std::initializer_list<int> v) {
  QVec q;
  for (int x : v) q.emplace_back(x);
  return q;
}

Weight wt(std::initializer_list<int> v) { return Weight(std::vector<int>(v)); }

}  // namespace

TEST_CASE("type parsing") {
  CHECK(RootSystemType::parse("C3").str() == "C3");
  CHECK(RootSystemType::parse("g2").str() == "G2");
  CHECK(RootSystemType::parse("A1xA1xA1").str() == "A1xA1xA1");
  CHECK(RootSystemType::parse("b2XC3").str() == "B2xC3");
  CHECK_THROWS(RootSystemType::parse("D3"));   // D needs rank >= 4
  CHECK_THROWS(RootSystemType::parse("G3"));
  CHECK_THROWS(RootSystemType::parse("B1"));
  CHECK_THROWS(RootSystemType::parse("E8"));
  CHECK_THROWS(RootSystemType::parse("C"));
  CHECK_THROWS(RootSystemType::parse("xC2"));
}

TEST_CASE("C2 exact data") {
  const auto d = build("C2");
  CHECK(d.rank == 2);
  CHECK(d.ambient_dim == 2);
  CHECK(d.simple_roots[0] == qvec({1, -1}));
  CHECK(d.simple_roots[1] == qvec({0, 2}));
  CHECK(d.fundamental_weights[0] == qvec({1, 0}));
  CHECK(d.fundamental_weights[1] == qvec({1, 1}));
  CHECK(d.only_factor().highest_root == qvec({2, 0}));
  CHECK(d.only_factor().highest_coroot == qvec({1, 0}));
  CHECK(d.comarks == std::vector<Rational>{1, 1});
  CHECK(d.weyl_order == 8);
  CHECK(d.minus_id_in_weyl);
  CHECK(d.only_factor().ell == 1);
  CHECK(d.only_factor().voronoi_weight == wt({1, 0}));
}

TEST_CASE("G2 exact data") {
  const auto d = build("G2");
  CHECK(d.ambient_dim == 3);
  CHECK(d.fundamental_weights[0] == qvec({0, -1, 1}));
  CHECK(d.fundamental_weights[1] == qvec({-1, -1, 2}));
  CHECK(d.only_factor().highest_root == qvec({-1, -1, 2}));
  CHECK(d.weyl_order == 12);
  CHECK(d.comarks == std::vector<Rational>{1, 2});
  // theta_0^vee = theta_0 / 3 is not a weight; the scale factor is 3 and the
  // scaled vector is omega_2.
  CHECK(d.only_factor().ell == 3);
  CHECK(d.only_factor().voronoi_weight == wt({0, 1}));
  // Weighted degree wd(a*omega_1 + b*omega_2) = a + 2b.
  CHECK(weighted_degree(d, wt({3, 2})) == 7);
}

TEST_CASE("B3 comarks and theta") {
  const auto d = build("B3");
  CHECK(d.only_factor().highest_root == qvec({1, 1, 0}));
  CHECK(d.comarks == std::vector<Rational>{1, 2, 1});
  CHECK(d.weyl_order == 48);
  CHECK(d.only_factor().voronoi_weight == wt({0, 1, 0}));
}

TEST_CASE("duality and cartan invariants for all families in scope") {
  for (const char* spec : {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "C5",
                           "D4", "D5", "G2", "A1xA1", "B2xG2"}) {
    CAPTURE(spec);
    const auto d = build(spec);
    for (int i = 0; i < d.rank; ++i)
      for (int j = 0; j < d.rank; ++j)
        CHECK(dot(d.fundamental_weights[i], d.coroots[j]) == Rational(i == j ? 1 : 0));
    for (int i = 0; i < d.rank; ++i) {
      CHECK(d.cartan[i][i] == 2);
      CHECK(d.sigma[d.sigma[i]] == i);
    }
    // Comarks are positive.
    for (const auto& k : d.comarks) CHECK(k > 0);
  }
}

TEST_CASE("simple reflection examples") {
  const auto d = build("C2");
  CHECK(simple_reflection(d, 0, wt({1, 0})) == wt({-1, 1}));
  CHECK(simple_reflection(d, 0, wt({0, 0})) == wt({0, 0}));
  for (int j = 0; j < 2; ++j)
    CHECK(simple_reflection(d, j, simple_reflection(d, j, wt({3, -2}))) == wt({3, -2}));
  CHECK_THROWS(simple_reflection(d, 2, wt({1, 0})));
}

TEST_CASE("dominant representative examples") {
  const auto d = build("C2");
  CHECK(dominant_representative(d, wt({2, -1})).first == wt({0, 1}));
  CHECK(dominant_representative(d, wt({3, 1})).first == wt({3, 1}));
  CHECK(dominant_representative(d, wt({3, 1})).second == 0);
  CHECK(dominant_representative(d, wt({-1, 0})).first == wt({1, 0}));
}

TEST_CASE("orbit sizes match the closed-form counts") {
  // B_n, C_n: |W omega_i| = 2^i binom(n, i); A_n: binom(n+1, i);
  // D_n: 2^i binom(n,i) for i <= n-2 and 2^{n-1} for the two spin nodes.
  for (const char* spec : {"B2", "B3", "B4", "C2", "C3", "C4"}) {
    const auto d = build(spec);
    for (int i = 0; i < d.rank; ++i) {
      Weight w(std::vector<int>(d.rank, 0));
      w.coords[i] = 1;
      CHECK(Rational(orbit(d, w).size()) == Rational(Integer(1) << (i + 1)) * binom(d.rank, i + 1));
    }
  }
  for (const char* spec : {"A1", "A2", "A3", "A4"}) {
    const auto d = build(spec);
    for (int i = 0; i < d.rank; ++i) {
      Weight w(std::vector<int>(d.rank, 0));
      w.coords[i] = 1;
      CHECK(Rational(orbit(d, w).size()) == binom(d.rank + 1, i + 1));
    }
  }
  {
    const auto d = build("D4");
    CHECK(orbit(d, wt({1, 0, 0, 0})).size() == 8);
    CHECK(orbit(d, wt({0, 1, 0, 0})).size() == 24);
    CHECK(orbit(d, wt({0, 0, 1, 0})).size() == 8);
    CHECK(orbit(d, wt({0, 0, 0, 1})).size() == 8);
  }
  {
    const auto d = build("G2");
    CHECK(orbit(d, wt({1, 0})).size() == 6);
    CHECK(orbit(d, wt({0, 1})).size() == 6);
    CHECK(orbit(d, wt({0, 0})).size() == 1);
  }
}

TEST_CASE("orbit contains exactly one dominant element and is deterministic") {
  const auto d = build("B3");
  const auto orb = orbit(d, wt({1, 0, 2}));
  int dominant = 0;
  for (const auto& w : orb) dominant += w.is_dominant();
  CHECK(dominant == 1);
  CHECK(orbit(d, wt({1, 0, 2})) == orb);
  CHECK_THROWS(orbit(d, wt({-1, 0, 0})));
}

TEST_CASE("conjugate examples") {
  {
    const auto d = build("A3");
    CHECK(conjugate(d, wt({1, 0, 0})) == wt({0, 0, 1}));
    CHECK(conjugate(d, wt({0, 1, 0})) == wt({0, 1, 0}));
    CHECK(conjugate(d, wt({2, 1, 0})) == wt({0, 1, 2}));
  }
  {
    const auto d = build("C3");
    CHECK(conjugate(d, wt({1, 2, 3})) == wt({1, 2, 3}));
  }
  {
    const auto d = build("D5");
    CHECK(conjugate(d, wt({0, 0, 0, 1, 0})) == wt({0, 0, 0, 0, 1}));
  }
  {
    const auto d = build("D4");
    CHECK(d.minus_id_in_weyl);
  }
}

TEST_CASE("random reflection words return to the dominant representative") {
  std::mt19937 rng(12345);
  for (const char* spec : {"A2", "B3", "G2", "D4"}) {
    const auto d = build(spec);
    std::uniform_int_distribution<int> coord(0, 3), refl(0, d.rank - 1);
    for (int trial = 0; trial < 50; ++trial) {
      Weight lam(std::vector<int>(d.rank, 0));
      for (auto& c : lam.coords) c = coord(rng);
      Weight mu = lam;
      for (int k = 0; k < 12; ++k) mu = simple_reflection(d, refl(rng), mu);
      CHECK(dominant_representative(d, mu).first == lam);
      const auto orb = orbit(d, lam);
      CHECK(std::find(orb.begin(), orb.end(), mu) != orb.end());
    }
  }
}

TEST_CASE("euclidean conjugation: -lambda lies in the orbit of conjugate(lambda)") {
  std::mt19937 rng(99);
  for (const char* spec : {"A2", "A3", "B3", "C2", "D5", "G2"}) {
    const auto d = build(spec);
    std::uniform_int_distribution<int> coord(0, 2);
    for (int trial = 0; trial < 10; ++trial) {
      Weight lam(std::vector<int>(d.rank, 0));
      for (auto& c : lam.coords) c = coord(rng);
      QVec neg = euclidean(d, lam);
      for (auto& x : neg) x = -x;
      bool found = false;
      for (const auto& mu : orbit(d, conjugate(d, lam)))
        if (euclidean(d, mu) == neg) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("weighted degree properties") {
  for (const char* spec : {"A3", "B4", "C3", "D4", "G2"}) {
    const auto d = build(spec);
    CHECK(weighted_degree(d, Weight(std::vector<int>(d.rank, 0))) == 0);
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coord(0, 3);
    for (int t = 0; t < 20; ++t) {
      Weight a(std::vector<int>(d.rank, 0)), b(std::vector<int>(d.rank, 0)), s(std::vector<int>(d.rank, 0));
      for (int i = 0; i < d.rank; ++i) {
        a.coords[i] = coord(rng);
        b.coords[i] = coord(rng);
        s.coords[i] = a.coords[i] + b.coords[i];
      }
      CHECK(weighted_degree(d, s) == weighted_degree(d, a) + weighted_degree(d, b));
      if (!a.is_zero()) CHECK(weighted_degree(d, a) > 0);
    }
  }
  const auto c4 = build("C4");
  for (int i = 0; i < 4; ++i) CHECK(c4.comarks[i] == 1);
}

TEST_CASE("products act componentwise and |W| multiplies") {
  const auto d = build("A1xA1xA1");
  CHECK(d.rank == 3);
  CHECK(d.ambient_dim == 6);
  CHECK(d.weyl_order == 8);
  CHECK(d.comarks == std::vector<Rational>{1, 1, 1});
  CHECK(orbit(d, wt({1, 1, 1})).size() == 8);

  const auto bg = build("B2xG2");
  CHECK(bg.weyl_order == 8 * 12);
  CHECK(bg.rank == 4);
  // Componentwise reflections: reflecting in a G_2 index leaves B_2 coords.
  const Weight w = wt({1, 2, 1, 1});
  const Weight r = simple_reflection(bg, 2, w);
  CHECK(r.coords[0] == 1);
  CHECK(r.coords[1] == 2);
}

TEST_CASE("alcove simplices") {
  const auto d = build("C2");
  const auto simp = alcove_simplices(d);
  REQUIRE(simp.size() == 1);
  REQUIRE(simp[0].size() == 3);
  // Every vertex satisfies <u, rho_i> >= 0 and <u, theta_0> <= 1.
  for (const auto& v : simp[0]) {
    for (int i = 0; i < d.rank; ++i) CHECK(dot(v, d.simple_roots[i]) >= 0);
    CHECK(dot(v, d.only_factor().highest_root) <= 1);
  }
}
