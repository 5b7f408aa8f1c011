#pragma once

#include <iosfwd>

namespace wallscale::cli {

/// Exit codes: 0 success, 1 usage or invalid input, 2 verification failure,
/// 3 numerical failure. Data goes to out (or --out), diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wallscale::cli
