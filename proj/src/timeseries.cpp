#include "heatcurve/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "heatcurve/errors.hpp"
#include "heatcurve/textio.hpp"

namespace heatcurve {

namespace {

// Howard Hinnant's civil-date algorithms: proleptic Gregorian, no tz database.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp < 10 ? mp + 3 : mp - 9;
    y = static_cast<int>(yr + (m <= 2));
}

bool is_leap(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

unsigned days_in_month(int y, unsigned m) {
    static const unsigned t[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return (m == 2 && is_leap(y)) ? 29 : t[m - 1];
}

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;

    bool done() const { return pos >= s.size(); }
    char peek() const { return pos < s.size() ? s[pos] : '\0'; }

    // Exactly `width` digits, or -1.
    int fixed_int(int width) {
        if (pos + static_cast<std::size_t>(width) > s.size()) return -1;
        int v = 0;
        for (int i = 0; i < width; ++i) {
            char c = s[pos + i];
            if (c < '0' || c > '9') return -1;
            v = v * 10 + (c - '0');
        }
        pos += static_cast<std::size_t>(width);
        return v;
    }

    bool eat(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }
};

[[noreturn]] void bad_ts(std::string_view text) {
    throw DataError("bad timestamp '" + std::string(text) + "'");
}

} // namespace

Timestamp parse_timestamp(std::string_view text) {
    Cursor c{trim(text)};
    if (c.s.empty()) bad_ts(text);

    const int year = c.fixed_int(4);
    if (year < 0 || !c.eat('-')) bad_ts(text);
    const int month = c.fixed_int(2);
    if (month < 1 || month > 12 || !c.eat('-')) bad_ts(text);
    const int day = c.fixed_int(2);
    if (day < 1 || day > static_cast<int>(days_in_month(year, month))) bad_ts(text);

    int hh = 0, mm = 0, ss = 0;
    if (!c.done() && (c.peek() == 'T' || c.peek() == 't' || c.peek() == ' ')) {
        ++c.pos;
        hh = c.fixed_int(2);
        if (hh < 0 || hh > 23 || !c.eat(':')) bad_ts(text);
        mm = c.fixed_int(2);
        if (mm < 0 || mm > 59) bad_ts(text);
        if (c.eat(':')) {
            ss = c.fixed_int(2);
            if (ss < 0 || ss > 59) bad_ts(text);
            if (c.eat('.')) { // fractional seconds: truncate
                bool any = false;
                while (!c.done() && c.peek() >= '0' && c.peek() <= '9') {
                    ++c.pos;
                    any = true;
                }
                if (!any) bad_ts(text);
            }
        }
    }

    std::int64_t offset = 0; // seconds east of UTC
    if (!c.done()) {
        char z = c.peek();
        if (z == 'Z' || z == 'z') {
            ++c.pos;
        } else if (z == '+' || z == '-') {
            ++c.pos;
            const int oh = c.fixed_int(2);
            if (oh < 0) bad_ts(text);
            c.eat(':');
            const int om = c.done() ? 0 : c.fixed_int(2);
            if (om < 0 || om > 59 || oh > 23) bad_ts(text);
            offset = (static_cast<std::int64_t>(oh) * 60 + om) * 60;
            if (z == '-') offset = -offset;
        } else {
            bad_ts(text);
        }
    }
    if (!c.done()) bad_ts(text);

    const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month),
                                              static_cast<unsigned>(day));
    return days * 86400 + hh * 3600 + mm * 60 + ss - offset;
}

std::string format_timestamp(Timestamp t) {
    std::int64_t days = t / 86400;
    std::int64_t sod = t % 86400;
    if (sod < 0) {
        sod += 86400;
        --days;
    }
    int y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(sod / 3600), static_cast<int>(sod / 60 % 60),
                  static_cast<int>(sod % 60));
    return buf;
}

int interval_of_day(Timestamp t, int utc_offset_min) {
    std::int64_t shifted = t + static_cast<std::int64_t>(utc_offset_min) * 60;
    std::int64_t sod = shifted % 86400;
    if (sod < 0) sod += 86400;
    return static_cast<int>(sod / kStepSeconds);
}

RawSeries parse_series(std::istream& in, SeriesKind kind, NegativePolicy negatives) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty input, expected 'timestamp,value' header");
    {
        std::string_view h = trim(line);
        if (h != "timestamp,value")
            throw DataError("bad header '" + std::string(h) + "', expected 'timestamp,value'");
    }

    struct Row {
        Timestamp t;
        double v;
        std::size_t ord;
    };
    std::vector<Row> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        const std::size_t comma = sv.find(',');
        if (comma == std::string_view::npos)
            throw DataError("line " + std::to_string(lineno) + ": expected 'timestamp,value'");
        Timestamp ts;
        try {
            ts = parse_timestamp(sv.substr(0, comma));
        } catch (const DataError& e) {
            throw DataError("line " + std::to_string(lineno) + ": " + e.what());
        }
        double v;
        if (!parse_number(sv.substr(comma + 1), v) || !std::isfinite(v))
            throw DataError("line " + std::to_string(lineno) + ": bad value '" +
                            std::string(trim(sv.substr(comma + 1))) + "'");
        if (kind == SeriesKind::heat_power_kW && v < 0.0) {
            if (negatives == NegativePolicy::reject)
                throw DataError("line " + std::to_string(lineno) +
                                ": negative heat power " + num_to_string(v));
            v = 0.0;
        }
        rows.push_back({ts, v, rows.size()});
    }
    if (rows.empty()) throw DataError("no data rows");

    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.t != b.t ? a.t < b.t : a.ord < b.ord;
    });

    RawSeries out;
    out.kind = kind;
    out.t.reserve(rows.size());
    out.v.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i + 1 < rows.size() && rows[i + 1].t == rows[i].t) continue; // last wins
        out.t.push_back(rows[i].t);
        out.v.push_back(rows[i].v);
    }
    return out;
}

RawSeries parse_series_file(const std::string& path, SeriesKind kind,
                            NegativePolicy negatives) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    try {
        return parse_series(in, kind, negatives);
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

namespace {

// Piecewise-linear value of (ts, vs) at time x, with x inside [front, back].
double interp_at(const std::vector<Timestamp>& ts, const std::vector<double>& vs,
                 Timestamp x) {
    auto it = std::lower_bound(ts.begin(), ts.end(), x);
    if (it == ts.end()) return vs.back();
    std::size_t i = static_cast<std::size_t>(it - ts.begin());
    if (ts[i] == x) return vs[i];
    // i > 0 because x >= ts.front()
    const double t0 = static_cast<double>(ts[i - 1]);
    const double t1 = static_cast<double>(ts[i]);
    const double f = (static_cast<double>(x) - t0) / (t1 - t0);
    return vs[i - 1] + f * (vs[i] - vs[i - 1]);
}

Timestamp ceil_to_grid(Timestamp t) {
    // trunc division rounds toward zero, which is already the ceiling for
    // negative t; positive remainders need a bump.
    Timestamp q = t / kStepSeconds;
    if (t % kStepSeconds != 0 && t > 0) ++q;
    return q * kStepSeconds;
}

} // namespace

AlignedSeries align(const RawSeries& demand, const RawSeries& weather,
                    AlignReport* report) {
    if (demand.empty()) throw DataError("demand series is empty");
    if (weather.empty()) throw DataError("weather series is empty");

    const Timestamp ov_begin = std::max(demand.t.front(), weather.t.front());
    const Timestamp ov_end = std::min(demand.t.back(), weather.t.back());
    if (ov_begin > ov_end)
        throw DataError("series do not overlap: demand " + format_timestamp(demand.t.front()) +
                        ".." + format_timestamp(demand.t.back()) + ", weather " +
                        format_timestamp(weather.t.front()) + ".." +
                        format_timestamp(weather.t.back()));

    const Timestamp start = ceil_to_grid(ov_begin);
    if (start > ov_end)
        throw DataError("series overlap is shorter than one 10-minute interval");
    const std::size_t n = static_cast<std::size_t>((ov_end - start) / kStepSeconds) + 1;

    AlignedSeries out;
    out.start = start;
    out.demand_kW.assign(n, kMissing);
    out.t_out_C.resize(n);

    std::vector<double> sum(n, 0.0);
    std::vector<int> cnt(n, 0);
    int outside = 0;
    for (std::size_t i = 0; i < demand.size(); ++i) {
        const Timestamp ts = demand.t[i];
        if (ts < start) {
            ++outside;
            continue;
        }
        const std::size_t idx = static_cast<std::size_t>((ts - start) / kStepSeconds);
        if (idx >= n) {
            ++outside;
            continue;
        }
        sum[idx] += demand.v[i];
        ++cnt[idx];
    }
    int missing = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (cnt[i] > 0)
            out.demand_kW[i] = sum[i] / cnt[i];
        else
            ++missing;
    }

    for (std::size_t i = 0; i < n; ++i)
        out.t_out_C[i] = interp_at(weather.t, weather.v, out.time_at(i));

    if (report) {
        report->start = start;
        report->intervals = static_cast<int>(n);
        report->missing_demand = missing;
        report->demand_samples = static_cast<int>(demand.size()) - outside;
        report->demand_samples_outside = outside;
        const Timestamp last = out.time_at(n - 1);
        report->weather_points = static_cast<int>(std::count_if(
            weather.t.begin(), weather.t.end(),
            [&](Timestamp t) { return t >= start && t <= last; }));
    }
    return out;
}

AlignedSeries align_temperature(const RawSeries& weather) {
    if (weather.empty()) throw DataError("weather series is empty");
    const Timestamp start = ceil_to_grid(weather.t.front());
    if (start > weather.t.back())
        throw DataError("weather series is shorter than one 10-minute interval");
    const std::size_t n =
        static_cast<std::size_t>((weather.t.back() - start) / kStepSeconds) + 1;
    AlignedSeries out;
    out.start = start;
    out.demand_kW.assign(n, kMissing);
    out.t_out_C.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.t_out_C[i] = interp_at(weather.t, weather.v, out.time_at(i));
    return out;
}

AlignedSeries slice(const AlignedSeries& s, Timestamp begin, Timestamp end) {
    AlignedSeries out;
    out.start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Timestamp t = s.time_at(i);
        if (t < begin || t >= end) continue;
        if (out.demand_kW.empty()) out.start = t;
        out.demand_kW.push_back(s.demand_kW[i]);
        out.t_out_C.push_back(s.t_out_C[i]);
    }
    return out;
}

std::string aligned_to_csv(const AlignedSeries& s) {
    std::string out = "timestamp,demand_kW,t_out_C\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += format_timestamp(s.time_at(i));
        out += ',';
        if (!is_missing(s.demand_kW[i])) out += num_to_string(s.demand_kW[i]);
        out += ',';
        if (!is_missing(s.t_out_C[i])) out += num_to_string(s.t_out_C[i]);
        out += '\n';
    }
    return out;
}

std::string align_report_to_json(const AlignReport& r) {
    nlohmann::ordered_json j;
    j["start"] = format_timestamp(r.start);
    j["intervals"] = r.intervals;
    j["missing_demand"] = r.missing_demand;
    j["demand_samples"] = r.demand_samples;
    j["demand_samples_outside"] = r.demand_samples_outside;
    j["weather_points"] = r.weather_points;
    return j.dump(2) + "\n";
}

} // namespace heatcurve
