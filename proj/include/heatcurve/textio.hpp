#pragma once

#include <string>
#include <string_view>

namespace heatcurve {

// Shortest decimal form that round-trips the exact double (to_chars).
// Keeps CSV output byte-stable across platforms.
std::string num_to_string(double x);

// Strict full-field double parse; no leading/trailing junk.
bool parse_number(std::string_view field, double& out);

std::string_view trim(std::string_view s);

} // namespace heatcurve
