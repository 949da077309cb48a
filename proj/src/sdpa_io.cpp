#include "chebsdp/sdpa_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace chebsdp {

namespace {

void write_value(std::ostream& out, double v) {
  std::ostringstream tmp;
  tmp << std::setprecision(17) << v;
  out << tmp.str();
}

void write_entries(std::ostream& out, int matno, const std::vector<StandardSdp::Entry>& entries) {
  auto sorted = entries;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& e : sorted) {
    out << matno << ' ' << e.block + 1 << ' ' << e.i + 1 << ' ' << e.j + 1 << ' ';
    write_value(out, e.value);
    out << '\n';
  }
}

}  // namespace

void export_sdpa(const StandardSdp& p, std::ostream& out) {
  out << p.m() << '\n';
  out << p.block_dims.size() << '\n';
  for (std::size_t i = 0; i < p.block_dims.size(); ++i)
    out << p.block_dims[i] << (i + 1 < p.block_dims.size() ? ' ' : '\n');
  for (int i = 0; i < p.m(); ++i) {
    write_value(out, p.b[i]);
    out << (i + 1 < p.m() ? ' ' : '\n');
  }
  if (p.m() == 0) out << '\n';
  write_entries(out, 0, p.C);
  for (int i = 0; i < p.m(); ++i) write_entries(out, i + 1, p.constraints[i]);
}

void export_sdpa(const StandardSdp& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_sdpa: cannot open " + path);
  export_sdpa(p, out);
  if (!out) throw std::runtime_error("export_sdpa: write failure on " + path);
}

StandardSdp import_sdpa(std::istream& in) {
  StandardSdp p;
  int m = 0, nblocks = 0;
  if (!(in >> m >> nblocks)) throw std::runtime_error("import_sdpa: malformed header");
  p.block_dims.resize(nblocks);
  for (auto& d : p.block_dims)
    if (!(in >> d)) throw std::runtime_error("import_sdpa: malformed block sizes");
  p.b.resize(m);
  for (auto& v : p.b)
    if (!(in >> v)) throw std::runtime_error("import_sdpa: malformed objective");
  p.constraints.resize(m);
  int matno, block, i, j;
  double value;
  while (in >> matno >> block >> i >> j >> value) {
    if (matno < 0 || matno > m || block < 1 || block > nblocks)
      throw std::runtime_error("import_sdpa: entry out of range");
    StandardSdp::Entry e{block - 1, i - 1, j - 1, value};
    if (matno == 0)
      p.C.push_back(e);
    else
      p.constraints[matno - 1].push_back(e);
  }
  return p;
}

StandardSdp import_sdpa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("import_sdpa: cannot open " + path);
  return import_sdpa(in);
}

bool structurally_equal(const StandardSdp& a, const StandardSdp& b) {
  if (a.block_dims != b.block_dims || a.b != b.b) return false;
  auto sorted = [](std::vector<StandardSdp::Entry> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(a.C) != sorted(b.C)) return false;
  if (a.constraints.size() != b.constraints.size()) return false;
  for (std::size_t i = 0; i < a.constraints.size(); ++i)
    if (sorted(a.constraints[i]) != sorted(b.constraints[i])) return false;
  return true;
}

}  // namespace chebsdp
