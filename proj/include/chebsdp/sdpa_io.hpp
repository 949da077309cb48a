#pragma once

// SDPA sparse format (.dat-s) writer and reader for StandardSdp instances:
// line 1: m; line 2: nblocks; line 3: block sizes (negative = diagonal);
// line 4: objective vector b; then quintuples "matno blockno i j value"
// (1-based, i <= j, matno 0 = constant matrix), values with 17 significant
// digits so doubles round-trip exactly.

#include "chebsdp/sdp_solver.hpp"

#include <iosfwd>
#include <string>

namespace chebsdp {

void export_sdpa(const StandardSdp& p, std::ostream& out);
void export_sdpa(const StandardSdp& p, const std::string& path);

StandardSdp import_sdpa(std::istream& in);
StandardSdp import_sdpa(const std::string& path);

// Structural equality: same blocks, b, and sorted entry lists.
bool structurally_equal(const StandardSdp& a, const StandardSdp& b);

}  // namespace chebsdp
