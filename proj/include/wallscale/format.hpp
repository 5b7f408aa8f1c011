#pragma once

#include <string>
#include <string_view>

namespace wallscale {

/// Shortest decimal form that parses back to the same double; locale-free.
std::string format_double(double v);

/// Locale-free parse of a whole string; throws InvalidArgument on junk.
double parse_double(std::string_view s);

}  // namespace wallscale
