#pragma once

#include <iosfwd>

namespace gmoran {

/// Runs one gmoran command line. Reports go to `out`, diagnostics to `err`.
/// Returns 0 on success, 2 for usage or input-format errors, 3 for numeric
/// and validation errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gmoran
