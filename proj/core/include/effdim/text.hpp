#pragma once

#include <string>
#include <string_view>

namespace effdim {

/// Shortest-safe round-trip formatting used by every file format here:
/// printf "%.17g".
std::string format_number(double v);

/// Strict parse of a whole token as a double. Throws FormatError.
double parse_number(std::string_view token);

}  // namespace effdim
