#pragma once

// Command-line front end: minimize invariant polynomials, compute chromatic
// bounds, export SDPA instances, and reproduce the bundled reference tables.

namespace chebsdp {

// Returns the process exit code: 0 iff every requested computation reached
// optimal status (for `table`, iff every cell matched its expected value
// within tolerance).
int run_cli(int argc, const char* const* argv);

}  // namespace chebsdp
