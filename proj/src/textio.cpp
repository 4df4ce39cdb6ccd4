#include "heatcurve/textio.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <system_error>

namespace heatcurve {

std::string num_to_string(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    assert(ec == std::errc());
    (void)ec;
    return std::string(buf, ptr);
}

bool parse_number(std::string_view field, double& out) {
    field = trim(field);
    if (field.empty()) return false;
    const char* first = field.data();
    const char* last = first + field.size();
    // from_chars rejects a leading '+', which is common in hand-edited CSVs.
    if (*first == '+') ++first;
    if (first == last) return false;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) return false;
    out = v;
    return true;
}

std::string_view trim(std::string_view s) {
    auto issp = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && issp(s.front())) s.remove_prefix(1);
    while (!s.empty() && issp(s.back())) s.remove_suffix(1);
    return s;
}

} // namespace heatcurve
