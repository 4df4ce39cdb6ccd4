#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "heatcurve/timeseries.hpp"

namespace heatcurve {

struct WindowMatch {
    Timestamp ref_start = 0;        // start of the best-matching reference window
    double rmse_K = 0.0;
    std::size_t intervals = 0;      // window length in 10-minute steps
    std::size_t compared_pairs = 0; // non-missing pairs at the winning offset
};

// Slides the experiment's outdoor-temperature trace over every grid offset of
// the reference and returns the offset with the smallest RMSE over the
// non-missing pairs. Offsets where more than 20% of the pairs involve a
// missing value are skipped; ties go to the earliest start.
WindowMatch match_window(const AlignedSeries& exp, const AlignedSeries& ref);

struct ValveSeries {
    std::vector<Timestamp> t; // strictly increasing after dedup
    std::vector<double> pct;  // 0..100
};

// Keyed by heater id; the map order (lexicographic) is the output order.
using ValveMap = std::map<std::string, ValveSeries>;

// CSV with header "timestamp,heater_id,opening_pct"; rows may interleave
// heaters. Openings outside [0, 100] are rejected with the line number.
// Duplicate (heater, timestamp) rows collapse to the last occurrence.
ValveMap parse_valve_csv(std::istream& in);
ValveMap parse_valve_csv_file(const std::string& path);

struct ValveStats {
    std::vector<std::pair<std::string, double>> heater_means; // sorted by id
    double min_pct = 0.0;
    double q1_pct = 0.0;
    double median_pct = 0.0;
    double q3_pct = 0.0;
    double max_pct = 0.0;
    std::vector<std::string> outliers;  // outside the 1.5*IQR fences
    std::vector<std::string> saturated; // mean >= 99%

    double iqr() const { return q3_pct - q1_pct; }
};

// Per-heater mean opening over [begin, end), then a five-number summary over
// the heater means. Heaters with no samples in the window are excluded with a
// warning; excluding every heater is an error.
ValveStats valve_stats(const ValveMap& openings, Timestamp begin, Timestamp end,
                       std::vector<std::string>* warnings = nullptr);

std::string window_match_to_json(const WindowMatch& m);
std::string valve_stats_to_json(const ValveStats& s);

// "heater_id,mean_opening_pct" rows, the boxplot input data.
std::string valve_means_to_csv(const ValveStats& s);

} // namespace heatcurve
