#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chebsdp/chebpoly.hpp"
#include "chebsdp/sdp_assembly.hpp"
#include "chebsdp/sdp_solver.hpp"
#include "chebsdp/sdpa_io.hpp"
#include "chebsdp/semialg.hpp"

#include <Eigen/Dense>

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

using namespace chebsdp;

namespace {

Weight wt(std::initializer_list<int> v) { return Weight(std::vector<int>(v)); }

int to_int(const Rational& r) {
  REQUIRE(denominator(r) == 1);
  return numerator(r).convert_to<int>();
}

// Dense symmetric block matrices sum_w vals[w] * A_w.
std::vector<Eigen::MatrixXd> densify(const SdpCoefficients& c,
                                     const std::map<Weight, double>& vals) {
  std::vector<Eigen::MatrixXd> out;
  for (int dim : c.block_dims) out.push_back(Eigen::MatrixXd::Zero(dim, dim));
  for (const auto& [w, entries] : c.A) {
    auto it = vals.find(w);
    if (it == vals.end()) continue;
    for (const auto& e : entries) {
      const double v = it->second * to_double(e.value);
      out[e.block](e.i, e.j) += v;
      if (e.i != e.j) out[e.block](e.j, e.i) += v;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("filtration: dimensions, grading, prefix property") {
  const auto b3 = build("B3");
  const auto c3 = build("C3");
  CHECK(filtration(b3, 0).dim() == 1);
  CHECK(filtration(b3, 3).dim() == 13);
  CHECK(filtration(c3, 3).dim() == 20);
  CHECK_THROWS(filtration(b3, -1));

  for (const char* s : {"B3", "A2", "G2", "C3"}) {
    const auto data = build(s);
    for (int d = 0; d <= 5; ++d) {
      const auto fa = filtration(data, d);
      const auto fb = filtration(data, d + 1);
      // Graded order within each list.
      for (int i = 0; i + 1 < fa.dim(); ++i) {
        const Rational wa = weighted_degree(data, fa.weights[i]);
        const Rational wb = weighted_degree(data, fa.weights[i + 1]);
        CHECK(wa <= wb);
        if (wa == wb) CHECK(fa.weights[i] < fa.weights[i + 1]);
      }
      // Prefix property and degree bound.
      for (int i = 0; i < fa.dim(); ++i) {
        CHECK(fa.weights[i] == fb.weights[i]);
        CHECK(weighted_degree(data, fa.weights[i]) <= d);
        CHECK(fa.index.at(fa.weights[i]) == i);
      }
    }
  }
}

TEST_CASE("SDP parameter table: N and m across systems and orders") {
  struct Cell {
    int d, n_moment, n_localized, m;
  };
  struct Row {
    const char* system;
    std::vector<Cell> cells;
  };
  // Moment-block dimension dim filt_d, localized size s * dim filt_{d-D},
  // and constraint count dim filt_{2d} - 1, for d = D_min .. 10.
  const std::vector<Row> table = {
      {"B2",
       {{2, 6, 2, 14}, {3, 10, 6, 27}, {4, 15, 12, 44}, {5, 21, 20, 65}, {6, 28, 30, 90},
        {7, 36, 42, 119}, {8, 45, 56, 152}, {9, 55, 72, 189}, {10, 66, 90, 230}}},
      {"C2",
       {{2, 6, 2, 14}, {3, 10, 6, 27}, {4, 15, 12, 44}, {5, 21, 20, 65}, {6, 28, 30, 90},
        {7, 36, 42, 119}, {8, 45, 56, 152}, {9, 55, 72, 189}, {10, 66, 90, 230}}},
      {"G2",
       {{3, 6, 3, 15}, {4, 9, 6, 24}, {5, 12, 12, 35}, {6, 16, 18, 48}, {7, 20, 27, 63},
        {8, 25, 36, 80}, {9, 30, 48, 99}, {10, 36, 60, 120}}},
      {"A2",
       {{3, 10, 3, 27}, {4, 15, 9, 44}, {5, 21, 18, 65}, {6, 28, 30, 90}, {7, 36, 45, 119},
        {8, 45, 63, 152}, {9, 55, 84, 189}, {10, 66, 108, 230}}},
      {"B3",
       {{3, 13, 3, 49}, {4, 22, 9, 94}, {5, 34, 21, 160}, {6, 50, 39, 251}, {7, 70, 66, 371},
        {8, 95, 102, 524}, {9, 125, 150, 714}, {10, 161, 210, 945}}},
      {"C3",
       {{3, 20, 3, 83}, {4, 35, 12, 164}, {5, 56, 30, 285}, {6, 84, 60, 454},
        {7, 120, 105, 679}, {8, 165, 168, 968}, {9, 220, 252, 1329}, {10, 286, 360, 1770}}},
      {"A3",
       {{4, 35, 4, 164}, {5, 56, 16, 285}, {6, 84, 40, 454}, {7, 120, 80, 679},
        {8, 165, 140, 968}, {9, 220, 224, 1329}, {10, 286, 336, 1770}}},
      {"B4",
       {{4, 30, 4, 174}, {5, 50, 12, 335}, {6, 80, 32, 587}, {7, 120, 64, 959},
        {8, 175, 120, 1484}, {9, 245, 200, 2199}, {10, 336, 320, 3145}}},
      {"C4",
       {{4, 70, 4, 494}, {5, 126, 20, 1000}, {6, 210, 60, 1819}, {7, 330, 140, 3059},
        {8, 495, 280, 4844}, {9, 715, 504, 7314}, {10, 1001, 840, 10625}}},
      {"D4",
       {{4, 46, 4, 294}, {5, 80, 16, 580}, {6, 130, 44, 1035}, {7, 200, 96, 1715},
        {8, 295, 184, 2684}, {9, 420, 320, 4014}, {10, 581, 520, 5785}}},
  };
  for (const auto& row : table) {
    const auto data = build(row.system);
    const auto P = hermite_matrix(data);
    const int D = to_int(P.D);
    int s = 0;
    for (const auto& b : P.blocks) s += b.size;
    CHECK(row.cells.front().d == D);  // minimal order
    for (const auto& cell : row.cells) {
      CAPTURE(row.system);
      CAPTURE(cell.d);
      CHECK(filtration(data, cell.d).dim() == cell.n_moment);
      CHECK(s * filtration(data, cell.d - D).dim() == cell.n_localized);
      CHECK(filtration(data, 2 * cell.d).dim() - 1 == cell.m);
    }
  }
}

TEST_CASE("assembled metadata matches the reported N, m, and split") {
  const auto b2 = build("B2");
  const auto c = assemble_coefficient_matrices(b2, 2);
  CHECK(c.N == 8);
  CHECK(c.m == 14);
  CHECK(c.reported_split == std::vector<int>{6, 2});
  CHECK(c.basis.dim() == 6);
  CHECK(c.loc_basis.dim() == 1);

  InvariantPoly f(b2, true);
  f.add_term(wt({1, 0}), CRat(1));
  const auto inst = assemble_minimize(c, f);
  CHECK(inst.N == 8);
  CHECK(inst.m == 14);
  CHECK(inst.reported_split == std::vector<int>{6, 2});
  CHECK(static_cast<int>(inst.sdp.b.size()) == 14);

  // SDPA header line is the constraint count.
  std::ostringstream out;
  export_sdpa(inst.sdp, out);
  std::istringstream head(out.str());
  int m = 0;
  head >> m;
  CHECK(m == 14);

  const auto g2 = assemble_coefficient_matrices(build("G2"), 5);
  CHECK(g2.N == 24);
  CHECK(g2.m == 35);
  CHECK(g2.reported_split == std::vector<int>{12, 12});
}

TEST_CASE("localized rows stay within the order-2d filtration") {
  for (const char* s : {"C2", "G2", "A2", "B3"}) {
    const auto data = build(s);
    const auto P = hermite_matrix(data);
    const int D = to_int(P.D);
    for (int d = D; d <= D + 2; ++d) {
      const auto c = assemble_coefficient_matrices(data, d);
      REQUIRE(c.loc_rows.size() == P.blocks.size());
      for (std::size_t f = 0; f < c.loc_rows.size(); ++f) {
        const auto& hb = P.blocks[f];
        CHECK(static_cast<int>(c.loc_rows[f].size()) == c.block_dims[1 + f]);
        for (const auto& [a, t] : c.loc_rows[f])
          CHECK(weighted_degree(data, t) + hb.row_degrees[a] <= d);
        // The uniform split filt_{d-D} x rows is contained in the layout.
        int uniform = 0;
        for (const auto& [a, t] : c.loc_rows[f])
          if (weighted_degree(data, t) <= d - D) ++uniform;
        CHECK(uniform >= hb.size * c.loc_basis.dim());
      }
      for (const auto& [w, entries] : c.A) CHECK(weighted_degree(data, w) <= 2 * d);
    }
  }
}

TEST_CASE("exactness: coefficient matrices reproduce pointwise moment data") {
  // At any point u, the functional L = evaluation at u is a ring
  // homomorphism, so sum_w That_w(u) A_w must equal the block-diagonal of
  //   (v v^T, P_ab(z) That_t That_u, ball(z) That_t That_u)
  // with v the moment-basis evaluation vector.
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unif(-0.4, 0.4);
  for (const char* s : {"C2", "G2", "A2", "B3"}) {
    const auto data = build(s);
    const auto P = hermite_matrix(data);
    const int D = to_int(P.D);
    const int d = D + 1;
    const auto c = assemble_coefficient_matrices(data, d);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<double> u(data.ambient_dim);
      for (double& x : u) x = unif(rng);
      const auto zhat = theta_coords_realified(data, u);

      std::map<Weight, double> vals;
      for (const auto& w : c.weights_2d)
        vals[w] = realified_monomial(data, w).eval(zhat).real();
      const auto got = densify(c, vals);

      // Moment block: rank-one outer product.
      Eigen::VectorXd v(c.basis.dim());
      for (int i = 0; i < c.basis.dim(); ++i) v[i] = vals.at(c.basis.weights[i]);
      CHECK((got[0] - v * v.transpose()).cwiseAbs().maxCoeff() < 1e-10);

      // Localized blocks.
      for (std::size_t f = 0; f < c.loc_rows.size(); ++f) {
        const auto& rows = c.loc_rows[f];
        const auto& hb = P.blocks[f];
        Eigen::MatrixXd want(rows.size(), rows.size());
        for (std::size_t r1 = 0; r1 < rows.size(); ++r1)
          for (std::size_t r2 = 0; r2 < rows.size(); ++r2) {
            const double p =
                to_monomial(hb.entries[rows[r1].entry_row][rows[r2].entry_row]).eval(zhat).real();
            want(r1, r2) = p * vals.at(rows[r1].multiplier) * vals.at(rows[r2].multiplier);
          }
        CHECK((got[1 + f] - want).cwiseAbs().maxCoeff() < 1e-10);
      }

      // Ball block.
      const double ballv = to_monomial(ball_polynomial(data)).eval(zhat).real();
      const int bb = static_cast<int>(c.block_dims.size()) - 1;
      Eigen::MatrixXd want(c.ball_basis.dim(), c.ball_basis.dim());
      for (int t = 0; t < c.ball_basis.dim(); ++t)
        for (int uu = 0; uu < c.ball_basis.dim(); ++uu)
          want(t, uu) = ballv * vals.at(c.ball_basis.weights[t]) * vals.at(c.ball_basis.weights[uu]);
      CHECK((got[bb] - want).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("A_0 has a unit in the moment corner") {
  const auto data = build("C2");
  const auto c = assemble_coefficient_matrices(data, 3);
  const Weight zero = wt({0, 0});
  bool found = false;
  for (const auto& e : c.A.at(zero))
    if (e.block == 0 && e.i == 0 && e.j == 0) {
      CHECK(e.value == Rational(1));
      found = true;
    }
  CHECK(found);
}

TEST_CASE("orders below the minimum are rejected; small variant still works") {
  CHECK_THROWS(assemble_coefficient_matrices(build("C2"), 1));
  CHECK_THROWS(assemble_coefficient_matrices(build("G2"), 2));
  const auto data = build("G2");
  const auto c = assemble_coefficient_matrices_small(data, 2);
  // Below D the small variant keeps the partial localized rows that fit:
  // (a, t) with h_a + wd(t) <= d, here h = (1, 2, 3) for the G_2 block.
  CHECK(c.localized);
  REQUIRE(c.loc_rows.size() == 1);
  CHECK(c.loc_rows[0].size() == filtration(data, 1).dim() + 1);
  CHECK(c.block_dims.size() == 3);  // moment + partial localizer + ball
  CHECK(c.block_dims[0] == filtration(data, 2).dim());
  CHECK(c.N == filtration(data, 2).dim());  // reported N stays moment-only
  CHECK(c.reported_split == std::vector<int>{filtration(data, 2).dim()});
}

TEST_CASE("assemble_minimize rejects ill-posed inputs") {
  const auto c2 = build("C2");
  const auto c = assemble_coefficient_matrices(c2, 2);
  InvariantPoly too_big(c2, true);
  too_big.add_term(wt({5, 0}), CRat(1));
  CHECK_THROWS(assemble_minimize(c, too_big));
  const auto g2 = build("G2");
  InvariantPoly other(g2, true);
  CHECK_THROWS(assemble_minimize(c, other));
}

TEST_CASE("maxmin on a singleton equals the minimum of That_w") {
  const auto c2 = build("C2");
  const auto c = assemble_coefficient_matrices(c2, 3);
  InvariantPoly t1(c2, true);
  t1.add_term(wt({1, 0}), CRat(1));
  const auto mi = assemble_minimize(c, t1);
  const auto smi = solve(mi.sdp);
  REQUIRE(smi.status == SolveStatus::optimal);
  const auto mm = assemble_maxmin(c, {wt({1, 0})});
  const auto smm = solve(mm.sdp);
  REQUIRE(smm.status == SolveStatus::optimal);
  CHECK(smm.primal_value ==
        doctest::Approx(mi.objective_offset + smi.primal_value).epsilon(1e-6));
  CHECK(smm.primal_value == doctest::Approx(-1.0).epsilon(1e-6));

  CHECK_THROWS(assemble_maxmin(c, {}));
  CHECK_THROWS(assemble_maxmin(c, {wt({0, 0})}));
  CHECK_THROWS(assemble_maxmin(c, {wt({7, 0})}));  // above the 2d bound
}

TEST_CASE("SDPA round-trip on ten instances, byte-stable export") {
  std::vector<StandardSdp> instances;

  std::mt19937 rng(777);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int k = 0; k < 7; ++k) {
    StandardSdp p;
    p.block_dims = {2 + (k % 3), -(1 + k % 2)};
    auto fill = [&](std::vector<StandardSdp::Entry>& out) {
      for (int b = 0; b < 2; ++b) {
        const int dim = std::abs(p.block_dims[b]);
        for (int i = 0; i < dim; ++i)
          for (int j = i; j < (p.block_dims[b] < 0 ? i + 1 : dim); ++j)
            if ((rng() & 1) != 0) out.push_back({b, i, j, unif(rng)});
      }
    };
    fill(p.C);
    for (int c = 0; c < 3; ++c) {
      p.constraints.emplace_back();
      fill(p.constraints.back());
      p.b.push_back(unif(rng));
    }
    instances.push_back(std::move(p));
  }
  {
    const auto b2 = build("B2");
    const auto c = assemble_coefficient_matrices(b2, 2);
    InvariantPoly f(b2, true);
    f.add_term(wt({1, 0}), CRat(2));
    f.add_term(wt({0, 1}), CRat(1));
    instances.push_back(assemble_minimize(c, f).sdp);
    instances.push_back(assemble_maxmin(c, {wt({1, 0})}).sdp);
  }
  {
    const auto g2 = build("G2");
    const auto c = assemble_coefficient_matrices(g2, 3);
    InvariantPoly f(g2, true);
    f.add_term(wt({2, 0}), CRat(1));
    f.add_term(wt({0, 1}), CRat(2));
    instances.push_back(assemble_minimize(c, f).sdp);
  }
  REQUIRE(instances.size() == 10);

  for (std::size_t k = 0; k < instances.size(); ++k) {
    CAPTURE(k);
    std::ostringstream out1, out2;
    export_sdpa(instances[k], out1);
    export_sdpa(instances[k], out2);
    CHECK(out1.str() == out2.str());
    std::istringstream in(out1.str());
    const auto back = import_sdpa(in);
    CHECK(structurally_equal(instances[k], back));
    std::ostringstream out3;
    export_sdpa(back, out3);
    CHECK(out1.str() == out3.str());
  }
}

TEST_CASE("disk cache reproduces the exact skeleton") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "chebsdp_test_cache";
  fs::remove_all(dir);
  const auto data = build("C2");
  const auto fresh = assemble_coefficient_matrices(data, 3, true, dir.string());
  CHECK(fs::exists(dir));
  const auto cached = assemble_coefficient_matrices(data, 3, true, dir.string());
  CHECK(fresh.A == cached.A);
  CHECK(fresh.block_dims == cached.block_dims);
  CHECK(fresh.N == cached.N);
  CHECK(fresh.m == cached.m);
  const auto nocache = assemble_coefficient_matrices(data, 3);
  CHECK(fresh.A == nocache.A);
  fs::remove_all(dir);
}
