#pragma once

#include <iosfwd>

namespace nsdecay::cli {

/// Exit codes: 0 all checks passed, 1 some check failed, 2 invalid
/// configuration or usage, 3 solver blow-up, 4 other runtime failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nsdecay::cli
