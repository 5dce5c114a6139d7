#pragma once

#include <iosfwd>

namespace multitile::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDiscrepancy = 1;
inline constexpr int kInconclusive = 2;
inline constexpr int kInputError = 3;

// Runs the command line; the report goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace multitile::cli
