#pragma once

#include <string>

namespace pqw {

inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace pqw
