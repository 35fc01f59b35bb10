#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pqw/coin.hpp"

namespace pqw::cli {

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

/// Runs the command line `args` (without the program name). Returns the process
/// exit status: 0 success, 1 runtime or I/O failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Radians, or degrees with a trailing 'd' ("45d"). Throws DomainError.
double parse_angle(std::string_view text);

/// "<alpha>,<beta>,<gamma>", each component parsed by parse_angle.
CoinParams parse_coin(std::string_view text);

}  // namespace pqw::cli
