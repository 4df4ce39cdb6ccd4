#include "heatcurve/stats.hpp"

#include <algorithm>
#include <cassert>

namespace heatcurve {

double quantile_sorted(const std::vector<double>& sorted_values, double p) {
    assert(!sorted_values.empty());
    assert(p >= 0.0 && p <= 1.0);
    const std::size_t n = sorted_values.size();
    if (n == 1) return sorted_values[0];
    const double pos = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (frac == 0.0 || lo + 1 >= n) return sorted_values[lo];
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

double quantile(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    return quantile_sorted(values, p);
}

double mean(const std::vector<double>& values) {
    assert(!values.empty());
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

} // namespace heatcurve
