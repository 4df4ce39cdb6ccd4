#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace heatcurve {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

// Quantile with linear interpolation between order statistics
// (position (n-1)*p on the sorted sample, numpy's default convention).
// `sorted_values` must be ascending and non-empty.
double quantile_sorted(const std::vector<double>& sorted_values, double p);

// Convenience: copies, sorts, delegates.
double quantile(std::vector<double> values, double p);

double mean(const std::vector<double>& values);

} // namespace heatcurve
