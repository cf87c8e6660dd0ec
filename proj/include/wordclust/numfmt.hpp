#pragma once

#include <string>
#include <string_view>

namespace wordclust {

/// Shortest decimal form that round-trips to the exact same double.
std::string format_double(double v);

/// Strict full-field parses; return false on trailing garbage or empty input.
bool parse_double(std::string_view field, double& out);
bool parse_int(std::string_view field, long long& out);

} // namespace wordclust
