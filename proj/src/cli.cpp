#include "chebsdp/cli.hpp"

#include "CLI11.hpp"
#include "chebsdp/chebpoly.hpp"
#include "chebsdp/chromatic.hpp"
#include "chebsdp/poly_io.hpp"
#include "chebsdp/sdp_assembly.hpp"
#include "chebsdp/sdpa_io.hpp"
#include "chebsdp/semialg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace chebsdp {

namespace {

// ---------------------------------------------------------------- utilities

std::pair<int, int> parse_range(const std::string& text, const char* what) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    const int lo = std::stoi(text.substr(0, colon));
    const int hi = std::stoi(text.substr(colon + 1));
    if (hi < lo) throw std::invalid_argument("empty range");
    return {lo, hi};
  } catch (const std::exception&) {
    throw CLI::ValidationError(std::string(what) + ": expected an integer or 'lo:hi', got '" +
                               text + "'");
  }
}

std::string format_split(const std::vector<int>& split) {
  std::string s;
  for (size_t i = 0; i < split.size(); ++i) s += (i ? "+" : "") + std::to_string(split[i]);
  return s;
}

int min_order(const RootSystemData& data, const InvariantPoly& f) {
  const Rational D = hermite_matrix(data).D;
  Rational need = f.weighted_degree_bound() / 2;
  if (need < D) need = D;
  const Integer num = numerator(need), den = denominator(need);
  return static_cast<int>((num + den - 1) / den);
}

// ------------------------------------------------- minimizer grid refinement

struct MinimizerEstimate {
  std::vector<double> u;
  double value = 0;
  double min_eig = 0;  // membership certificate at the reported point
};

MinimizerEstimate estimate_minimizer(const RootSystemData& data, const InvariantPoly& f) {
  const auto simplices = alcove_simplices(data);
  const int ambient = data.ambient_dim;

  std::vector<std::vector<std::vector<double>>> dirs;  // per factor: non-zero vertices
  int grid_dim = 0;
  for (const auto& simplex : simplices) {
    std::vector<std::vector<double>> vs;
    for (const auto& v : simplex) {
      std::vector<double> vd(ambient, 0.0);
      bool zero = true;
      for (size_t i = 0; i < v.size(); ++i) {
        vd[i] = static_cast<double>(v[i]);
        zero = zero && v[i] == 0;
      }
      if (!zero) vs.push_back(std::move(vd));
    }
    grid_dim += static_cast<int>(vs.size());
    dirs.push_back(std::move(vs));
  }

  const int res = grid_dim <= 3 ? 200 : 40;
  auto eval = [&](const std::vector<double>& u) { return eval_numeric(f, u).real(); };

  MinimizerEstimate best;
  best.u.assign(ambient, 0.0);
  best.value = eval(best.u);

  // Dense barycentric grid over the product of alcove simplices: within each
  // factor the vertex weights sum to at most `res` grid steps.
  std::vector<std::vector<double>> all_dirs;
  std::vector<int> factor_of;
  for (size_t fi = 0; fi < dirs.size(); ++fi)
    for (const auto& v : dirs[fi]) {
      all_dirs.push_back(v);
      factor_of.push_back(static_cast<int>(fi));
    }
  std::vector<int> counts(grid_dim, 0);
  auto scan = [&](auto&& self, int k) -> void {
    if (k == grid_dim) {
      std::vector<double> p(ambient, 0.0);
      for (int j = 0; j < grid_dim; ++j)
        for (int i = 0; i < ambient; ++i) p[i] += counts[j] * all_dirs[j][i] / res;
      const double v = eval(p);
      if (v < best.value) {
        best.value = v;
        best.u = p;
      }
      return;
    }
    int used = 0;  // budget already consumed within this factor
    for (int j = 0; j < k; ++j)
      if (factor_of[j] == factor_of[k]) used += counts[j];
    for (int t = 0; t + used <= res; ++t) {
      counts[k] = t;
      self(self, k + 1);
    }
    counts[k] = 0;
  };
  scan(scan, 0);

  // Coordinate descent in the barycentric directions, 50 sweeps with a
  // shrinking step.
  double step = 1.0 / res;
  for (int sweep = 0; sweep < 50; ++sweep) {
    bool improved = false;
    for (const auto& dir : all_dirs)
      for (double sgn : {-1.0, 1.0}) {
        auto cand = best.u;
        for (int i = 0; i < ambient; ++i) cand[i] += sgn * step * dir[i];
        const double v = eval(cand);
        if (v < best.value - 1e-15) {
          best.value = v;
          best.u = std::move(cand);
          improved = true;
        }
      }
    if (!improved) step /= 2;
  }

  best.min_eig = membership(data, theta_coords_realified(data, best.u)).second;
  return best;
}

// --------------------------------------------------------------- subcommands

struct CommonOpts {
  std::string system;
  std::string cache_dir;
  double tol_gap = 1e-8, tol_feas = 1e-8;
  int max_iter = 200;
  bool no_ball = false;

  SolveOptions solve_options() const {
    SolveOptions o;
    o.tol_gap = tol_gap;
    o.tol_feas = tol_feas;
    o.max_iter = max_iter;
    return o;
  }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool need_system = true) {
  auto* sys = cmd->add_option("--system", o.system, "Root system, e.g. C3, G2, A1xA1");
  if (need_system) sys->required();
  cmd->add_option("--cache-dir", o.cache_dir, "Directory for assembled-matrix cache files");
  cmd->add_option("--tol-gap", o.tol_gap, "Relative duality-gap tolerance");
  cmd->add_option("--tol-feas", o.tol_feas, "Relative feasibility tolerance");
  cmd->add_option("--max-iter", o.max_iter, "Interior-point iteration limit");
  cmd->add_flag("--no-ball", o.no_ball, "Drop the Archimedean ball constraint");
}

int cmd_minimize(const CommonOpts& common, const std::string& input, const std::string& d_spec,
                 const std::string& export_path, const std::string& out_csv) {
  const auto data = build(common.system);
  const auto f = parse_poly_file(data, input);
  if (f.terms.empty()) throw std::runtime_error(input + ": polynomial is empty");
  const auto [d_lo, d_hi] = parse_range(d_spec, "--d");
  const int d_min = min_order(data, f);
  if (d_lo < d_min)
    throw std::runtime_error("order " + std::to_string(d_lo) +
                             " is too small for this instance; the minimal valid order is d = " +
                             std::to_string(d_min));

  std::ofstream csv;
  if (!out_csv.empty()) {
    csv.open(out_csv);
    if (!csv) throw std::runtime_error("cannot open " + out_csv);
    csv << "system,d,N,m,f_sos,f_mom,gap,status,iterations\n";
  }

  bool all_ok = true;
  for (int d = d_lo; d <= d_hi; ++d) {
    const auto coeffs =
        assemble_coefficient_matrices(data, d, !common.no_ball, common.cache_dir);
    const auto inst = assemble_minimize(coeffs, f);
    if (!export_path.empty()) {
      const std::string path =
          d_lo == d_hi ? export_path : export_path + "." + std::to_string(d);
      export_sdpa(inst.sdp, path);
      std::printf("d=%d: wrote %s  N = %s = %d, m = %d\n", d, path.c_str(),
                  format_split(inst.reported_split).c_str(), inst.N, inst.m);
      continue;
    }
    const auto sol = solve(inst.sdp, common.solve_options());
    const double f_sos = inst.objective_offset + sol.primal_value;
    const double f_mom = inst.objective_offset + sol.dual_value;
    std::printf("d=%d: f_sos = %.6f  f_mom = %.6f  gap = %.2e  (N = %s = %d, m = %d)  [%s, %d "
                "iterations]\n",
                d, f_sos, f_mom, sol.gap, format_split(inst.reported_split).c_str(), inst.N,
                inst.m, to_string(sol.status).c_str(), sol.iterations);
    all_ok = all_ok && sol.status == SolveStatus::optimal;
    if (csv.is_open()) {
      char line[256];
      std::snprintf(line, sizeof line, "%s,%d,%d,%d,%.8f,%.8f,%.3e,%s,%d\n",
                    data.type.str().c_str(), d, inst.N, inst.m, f_sos, f_mom, sol.gap,
                    to_string(sol.status).c_str(), sol.iterations);
      csv << line;
    }
  }

  if (export_path.empty()) {
    const auto est = estimate_minimizer(data, f);
    std::printf("minimizer estimate: f(u) = %.6f at u = (", est.value);
    for (size_t i = 0; i < est.u.size(); ++i) std::printf("%s%.6f", i ? ", " : "", est.u[i]);
    std::printf(")  [image membership: min eigenvalue %.2e]\n", est.min_eig);
  }
  return all_ok ? 0 : 1;
}

AvoidedSet make_set(const RootSystemData& data, const std::string& kind, int r) {
  if (kind == "voronoi") return strict_voronoi_set(data);
  if (kind == "crosspolytope") return crosspolytope_shell(data, r);
  if (kind == "shell") return voronoi_shell(data, r);
  throw std::runtime_error("unknown set kind: " + kind);
}

int cmd_bound(const CommonOpts& common, const std::string& kind, const std::string& r_spec,
              const std::string& d_spec, bool adaptive, const std::string& out_csv) {
  const auto data = build(common.system);
  const auto [r_lo, r_hi] = parse_range(r_spec, "--r");
  const auto [d_lo, d_hi] = parse_range(d_spec, "--d");

  std::ofstream csv;
  if (!out_csv.empty()) {
    csv.open(out_csv);
    if (!csv) throw std::runtime_error("cannot open " + out_csv);
    write_csv_header(csv);
  }

  bool all_ok = true;
  std::printf("%-6s %-20s %3s %3s %12s %12s %8s\n", "system", "set", "r", "d", "F", "bound",
              "status");
  for (int r = r_lo; r <= r_hi; ++r) {
    const auto set = make_set(data, kind, r);
    for (int d = d_lo; d <= d_hi; ++d) {
      try {
        const auto res = spectral_bound(data, set, d, common.solve_options(), !common.no_ball,
                                        common.cache_dir, adaptive);
        std::printf("%-6s %-20s %3d %3d %12.6f %12.6f %8s\n", res.system.c_str(),
                    res.set_label.c_str(), r, d, res.F, res.bound,
                    to_string(res.status).c_str());
        if (csv.is_open()) write_csv_row(csv, res);
      } catch (const std::exception& e) {
        std::printf("%-6s %-20s %3d %3d  failed: %s\n", data.type.str().c_str(),
                    set.label.c_str(), r, d, e.what());
        all_ok = false;
      }
    }
    if (kind == "voronoi") break;  // r is not applicable
  }
  return all_ok ? 0 : 1;
}

int cmd_export(const CommonOpts& common, const std::string& input, const std::string& kind,
               int r, int d, const std::string& out) {
  const auto data = build(common.system);
  AssembledSdp inst;
  if (!input.empty()) {
    const auto f = parse_poly_file(data, input);
    const auto coeffs =
        assemble_coefficient_matrices(data, d, !common.no_ball, common.cache_dir);
    inst = assemble_minimize(coeffs, f);
  } else if (!kind.empty()) {
    const auto set = make_set(data, kind, r);
    const auto coeffs =
        assemble_coefficient_matrices_small(data, d, !common.no_ball, common.cache_dir);
    inst = assemble_maxmin(coeffs, set.dominant_support);
  } else {
    throw std::runtime_error("export needs either --input (minimize) or --set (max-min)");
  }
  export_sdpa(inst.sdp, out);
  std::string dims;
  for (size_t i = 0; i < inst.sdp.block_dims.size(); ++i)
    dims += (i ? " " : "") + std::to_string(inst.sdp.block_dims[i]);
  std::printf("wrote %s\nN = %s = %d, m = %d\nSDP blocks: %s\n", out.c_str(),
              format_split(inst.reported_split).c_str(), inst.N, inst.m, dims.c_str());
  return 0;
}

// -------------------------------------------------------------------- tables

struct Cell {
  std::string label;
  double value = 0;
};

std::vector<Cell> table_sdp_params() {
  std::vector<Cell> cells;
  for (const char* sys : {"B2", "C2", "G2", "A2", "B3", "C3", "A3", "B4", "C4", "D4"}) {
    const auto data = build(sys);
    const auto P = hermite_matrix(data);
    const Integer Dnum = numerator(P.D);
    const int D = static_cast<int>(Dnum);  // integral for all bundled systems
    for (int d = D; d <= 10; ++d) {
      const int n_moment = filtration(data, d).dim();
      int s = 0;
      for (const auto& b : P.blocks) s += b.size;
      const int n_localized = s * filtration(data, d - D).dim();
      const int m = filtration(data, 2 * d).dim() - 1;
      const std::string key = std::string(sys) + " d=" + std::to_string(d);
      cells.push_back({key + " n_moment", double(n_moment)});
      cells.push_back({key + " n_localized", double(n_localized)});
      cells.push_back({key + " m", double(m)});
    }
  }
  return cells;
}

std::vector<Cell> table_case_study(const CommonOpts& common) {
  struct Poly {
    const char* name;
    const char* system;
    std::vector<std::pair<std::vector<int>, int>> terms;
    int d_lo;
  };
  const std::vector<Poly> polys = {
      {"f", "G2", {{{2, 0}, 1}, {{0, 1}, 2}}, 3},
      {"g", "G2", {{{1, 0}, 2}, {{0, 1}, 1}, {{1, 1}, 1}, {{3, 0}, 4}}, 3},
      {"h", "C2", {{{1, 0}, 2}, {{0, 1}, 1}, {{0, 2}, -1}, {{1, 1}, -3}}, 3},
      {"k", "C2", {{{2, 0}, 2}, {{0, 2}, 1}}, 3},
  };
  std::vector<Cell> cells;
  for (const auto& p : polys) {
    const auto data = build(p.system);
    InvariantPoly f(data);
    for (const auto& [w, c] : p.terms) f.add_term(Weight(w), CRat(c));
    for (int d = p.d_lo; d <= 7; ++d) {
      const auto coeffs =
          assemble_coefficient_matrices(data, d, !common.no_ball, common.cache_dir);
      const auto inst = assemble_minimize(coeffs, f);
      const auto sol = solve(inst.sdp, common.solve_options());
      if (sol.status != SolveStatus::optimal)
        throw std::runtime_error(std::string("case-study ") + p.name + " d=" +
                                 std::to_string(d) + ": " + to_string(sol.status));
      cells.push_back({std::string(p.name) + " d=" + std::to_string(d),
                       inst.objective_offset + sol.primal_value});
    }
  }
  return cells;
}

std::vector<Cell> table_bounds(const CommonOpts& common, const char* system, const char* kind,
                               std::initializer_list<std::pair<int, int>> rd) {
  const auto data = build(system);
  std::vector<Cell> cells;
  for (const auto& [r, d] : rd) {
    const auto set = make_set(data, kind, r);
    const auto res =
        spectral_bound(data, set, d, common.solve_options(), !common.no_ball, common.cache_dir);
    cells.push_back(
        {"r=" + std::to_string(r) + " d=" + std::to_string(d) + " bound", res.bound});
  }
  return cells;
}

std::vector<Cell> compute_table(const std::string& name, const CommonOpts& common) {
  if (name == "sdp-params") return table_sdp_params();
  if (name == "case-study") return table_case_study(common);
  if (name == "crosspolytope-3d")
    return table_bounds(common, "B3", "crosspolytope", {{2, 3}, {4, 4}, {6, 5}});
  if (name == "crosspolytope-4d")
    return table_bounds(common, "B4", "crosspolytope", {{2, 1}, {2, 2}, {2, 3}});
  if (name == "hexagon") return table_bounds(common, "G2", "shell", {{1, 5}, {2, 3}});
  if (name == "rhombic") return table_bounds(common, "B3", "shell", {{2, 3}});
  if (name == "icositetrachoron") return table_bounds(common, "B4", "shell", {{2, 4}});
  throw std::runtime_error("unknown table name: " + name);
}

std::string expected_file(const std::string& name) {
  std::string f = name;
  std::replace(f.begin(), f.end(), '-', '_');
  return std::string(CHEBSDP_DATA_DIR) + "/expected/" + f + ".csv";
}

int cmd_table(const CommonOpts& common, const std::string& name, const std::string& out_csv) {
  const auto cells = compute_table(name, common);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_csv.empty()) {
    file.open(out_csv);
    if (!file) throw std::runtime_error("cannot open " + out_csv);
    out = &file;
  }
  *out << "label,value\n";
  for (const auto& c : cells) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.8f", c.value);
    *out << c.label << ',' << buf << '\n';
  }

  // Diff against the bundled expected values.
  std::ifstream exp(expected_file(name));
  if (!exp) throw std::runtime_error("missing expected-value file: " + expected_file(name));
  int checked = 0, failed = 0;
  std::string line;
  while (std::getline(exp, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto c1 = line.rfind(',');
    const auto c2 = line.rfind(',', c1 - 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::runtime_error(expected_file(name) + ": bad row '" + line + "'");
    const std::string label = line.substr(0, c2);
    const double expected = std::stod(line.substr(c2 + 1, c1 - c2 - 1));
    const double tol = std::stod(line.substr(c1 + 1));
    const auto it = std::find_if(cells.begin(), cells.end(),
                                 [&](const Cell& c) { return c.label == label; });
    if (it == cells.end())
      throw std::runtime_error(name + ": expected cell '" + label + "' was not computed");
    ++checked;
    const double diff = std::abs(it->value - expected);
    const bool ok = diff <= tol;
    failed += !ok;
    std::fprintf(stderr, "%-24s computed %12.6f expected %12.6f diff %.2e tol %.0e  %s\n",
                 label.c_str(), it->value, expected, diff, tol, ok ? "ok" : "FAIL");
  }
  std::fprintf(stderr, "%s: %d/%d cells within tolerance\n", name.c_str(), checked - failed,
               checked);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Global minimization of Weyl-invariant trigonometric polynomials via "
               "generalized Chebyshev polynomials and SDP hierarchies"};
  app.require_subcommand(1);

  CommonOpts c_min, c_bound, c_exp, c_table;

  auto* mini = app.add_subcommand("minimize", "Minimize an invariant polynomial over the torus");
  std::string min_input, min_d, min_export, min_out;
  add_common(mini, c_min);
  mini->add_option("--input", min_input, "Polynomial file (one 'a_1 ... a_n : c' term per line)")
      ->required();
  mini->add_option("--d,--d-range", min_d, "Hierarchy order d, or a range 'lo:hi'")->required();
  mini->add_option("--export", min_export, "Write the SDPA instance(s) instead of solving");
  mini->add_option("--out", min_out, "CSV output path");

  auto* bnd = app.add_subcommand("bound", "Chromatic-number spectral bound for an avoided set");
  std::string bnd_set, bnd_r = "0", bnd_d, bnd_out;
  bool bnd_adaptive = false;
  add_common(bnd, c_bound);
  bnd->add_option("--set", bnd_set, "Avoided set: voronoi | crosspolytope | shell")
      ->required()
      ->check(CLI::IsMember({"voronoi", "crosspolytope", "shell"}));
  bnd->add_option("--r,--r-range", bnd_r, "Shell radius r, or a range 'lo:hi'");
  bnd->add_option("--d,--d-range", bnd_d, "Hierarchy order d, or a range 'lo:hi'")->required();
  bnd->add_flag("--adaptive", bnd_adaptive, "Use the entry-adaptive localizer truncation");
  bnd->add_option("--out", bnd_out, "CSV output path");

  auto* exp = app.add_subcommand("export", "Write an assembled instance in SDPA sparse format");
  std::string exp_input, exp_set, exp_out;
  int exp_r = 0, exp_d = 0;
  add_common(exp, c_exp);
  exp->add_option("--input", exp_input, "Polynomial file (minimize instance)");
  exp->add_option("--set", exp_set, "Avoided set (max-min instance)")
      ->check(CLI::IsMember({"voronoi", "crosspolytope", "shell"}));
  exp->add_option("--r", exp_r, "Shell radius");
  exp->add_option("--d", exp_d, "Hierarchy order")->required();
  exp->add_option("--out", exp_out, "Output path (.dat-s)")->required();

  auto* tab = app.add_subcommand("table", "Recompute a bundled reference table and diff it");
  std::string tab_name, tab_out;
  add_common(tab, c_table, /*need_system=*/false);
  tab->add_option("--name", tab_name,
                  "sdp-params | case-study | crosspolytope-3d | crosspolytope-4d | hexagon | "
                  "rhombic | icositetrachoron")
      ->required();
  tab->add_option("--out", tab_out, "CSV output path (default: stdout)");

  try {
    app.parse(argc, argv);
    if (mini->parsed()) return cmd_minimize(c_min, min_input, min_d, min_export, min_out);
    if (bnd->parsed()) return cmd_bound(c_bound, bnd_set, bnd_r, bnd_d, bnd_adaptive, bnd_out);
    if (exp->parsed()) return cmd_export(c_exp, exp_input, exp_set, exp_r, exp_d, exp_out);
    if (tab->parsed()) return cmd_table(c_table, tab_name, tab_out);
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace chebsdp
