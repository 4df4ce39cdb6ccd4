#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "heatcurve/stats.hpp"

namespace heatcurve {

// Seconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;

inline constexpr int kStepSeconds = 600;          // 10-minute grid
inline constexpr int kIntervalsPerDay = 144;

// ISO-8601: "YYYY-MM-DD[THH:MM[:SS[.frac]]][Z|+HH:MM|-HH:MM|+HHMM|-HHMM]".
// A missing zone designator means UTC. Fractional seconds are truncated.
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

// Interval-of-day in 0..143. `utc_offset_min` shifts the civil day boundary
// for sites that want local-time day alignment (fixed offset only).
int interval_of_day(Timestamp t, int utc_offset_min = 0);

enum class SeriesKind { heat_power_kW, outdoor_temp_C };

enum class NegativePolicy { reject, clamp_to_zero };

struct RawSeries {
    SeriesKind kind = SeriesKind::heat_power_kW;
    std::vector<Timestamp> t;   // strictly increasing after dedup
    std::vector<double> v;

    std::size_t size() const { return t.size(); }
    bool empty() const { return t.empty(); }
};

// CSV with header "timestamp,value". Duplicate timestamps collapse to the
// last occurrence in input order. Negative heat-power readings are rejected
// (with the offending line number) unless the policy clamps them to zero.
RawSeries parse_series(std::istream& in, SeriesKind kind,
                       NegativePolicy negatives = NegativePolicy::reject);
RawSeries parse_series_file(const std::string& path, SeriesKind kind,
                            NegativePolicy negatives = NegativePolicy::reject);

struct AlignReport {
    Timestamp start = 0;
    int intervals = 0;
    int missing_demand = 0;        // intervals with no demand sample
    int demand_samples = 0;        // raw samples that landed in the grid
    int demand_samples_outside = 0;
    int weather_points = 0;
};

// Both series on a shared 10-minute grid over their overlap. Demand is the
// mean of the raw samples inside each interval [start+600*i, start+600*(i+1));
// intervals without a sample are NaN, never zero. Outdoor temperature is
// linearly interpolated at each interval start.
struct AlignedSeries {
    Timestamp start = 0;           // multiple of 600
    std::vector<double> demand_kW; // NaN = missing
    std::vector<double> t_out_C;

    std::size_t size() const { return demand_kW.size(); }
    Timestamp time_at(std::size_t i) const {
        return start + static_cast<Timestamp>(i) * kStepSeconds;
    }
};

AlignedSeries align(const RawSeries& demand, const RawSeries& weather,
                    AlignReport* report = nullptr);

// Temperature-only variant used by the evaluation protocol: the demand
// channel is all-missing, t_out is interpolated over the series' own range.
AlignedSeries align_temperature(const RawSeries& weather);

// Keep rows with time_at(i) in [begin, end); both series channels copied.
AlignedSeries slice(const AlignedSeries& s, Timestamp begin, Timestamp end);

// "timestamp,demand_kW,t_out_C" with empty fields for missing values.
std::string aligned_to_csv(const AlignedSeries& s);
std::string align_report_to_json(const AlignReport& r);

} // namespace heatcurve
