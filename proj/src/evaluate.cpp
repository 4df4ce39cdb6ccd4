#include "heatcurve/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>

#include <json.hpp>

#include "heatcurve/errors.hpp"
#include "heatcurve/stats.hpp"
#include "heatcurve/textio.hpp"

namespace heatcurve {

WindowMatch match_window(const AlignedSeries& exp, const AlignedSeries& ref) {
    const std::size_t n = exp.size();
    if (n == 0) throw DataError("experiment window is empty");
    if (ref.size() < n)
        throw DataError("reference series is shorter than the experiment window");

    bool found = false;
    std::size_t best_offset = 0;
    std::size_t best_pairs = 0;
    double best_rmse = 0.0;
    for (std::size_t o = 0; o + n <= ref.size(); ++o) {
        std::size_t pairs = 0;
        double sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = exp.t_out_C[i];
            const double r = ref.t_out_C[o + i];
            if (is_missing(e) || is_missing(r)) continue;
            const double d = e - r;
            sq += d * d;
            ++pairs;
        }
        if (5 * (n - pairs) > n) continue; // > 20% of the pairs unusable
        const double rmse = std::sqrt(sq / static_cast<double>(pairs));
        if (!found || rmse < best_rmse) { // strict: ties keep the earliest
            found = true;
            best_offset = o;
            best_pairs = pairs;
            best_rmse = rmse;
        }
    }
    if (!found)
        throw DataError(
            "window match failed: every reference offset has too many missing values");

    WindowMatch m;
    m.ref_start = ref.time_at(best_offset);
    m.rmse_K = best_rmse;
    m.intervals = n;
    m.compared_pairs = best_pairs;
    return m;
}

ValveMap parse_valve_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw DataError("empty input, expected 'timestamp,heater_id,opening_pct' header");
    {
        std::string_view h = trim(line);
        if (h != "timestamp,heater_id,opening_pct")
            throw DataError("bad header '" + std::string(h) +
                            "', expected 'timestamp,heater_id,opening_pct'");
    }

    struct Row {
        Timestamp t;
        double pct;
        std::size_t ord;
    };
    std::map<std::string, std::vector<Row>> rows;
    std::size_t lineno = 1;
    std::size_t ord = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        const std::size_t c1 = sv.find(',');
        const std::size_t c2 = c1 == std::string_view::npos
                                   ? std::string_view::npos
                                   : sv.find(',', c1 + 1);
        if (c2 == std::string_view::npos || sv.find(',', c2 + 1) != std::string_view::npos)
            throw DataError("line " + std::to_string(lineno) +
                            ": expected 'timestamp,heater_id,opening_pct'");
        Timestamp ts;
        try {
            ts = parse_timestamp(sv.substr(0, c1));
        } catch (const DataError& e) {
            throw DataError("line " + std::to_string(lineno) + ": " + e.what());
        }
        const std::string heater(trim(sv.substr(c1 + 1, c2 - c1 - 1)));
        if (heater.empty())
            throw DataError("line " + std::to_string(lineno) + ": empty heater id");
        double pct;
        if (!parse_number(sv.substr(c2 + 1), pct) || !std::isfinite(pct))
            throw DataError("line " + std::to_string(lineno) + ": bad opening '" +
                            std::string(trim(sv.substr(c2 + 1))) + "'");
        if (pct < 0.0 || pct > 100.0)
            throw DataError("line " + std::to_string(lineno) + ": opening " +
                            num_to_string(pct) + " outside 0..100");
        rows[heater].push_back({ts, pct, ord++});
    }
    if (rows.empty()) throw DataError("no data rows");

    ValveMap out;
    for (auto& [heater, rs] : rows) {
        std::sort(rs.begin(), rs.end(), [](const Row& a, const Row& b) {
            return a.t != b.t ? a.t < b.t : a.ord < b.ord;
        });
        ValveSeries s;
        s.t.reserve(rs.size());
        s.pct.reserve(rs.size());
        for (std::size_t i = 0; i < rs.size(); ++i) {
            if (i + 1 < rs.size() && rs[i + 1].t == rs[i].t) continue; // last wins
            s.t.push_back(rs[i].t);
            s.pct.push_back(rs[i].pct);
        }
        out.emplace(heater, std::move(s));
    }
    return out;
}

ValveMap parse_valve_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    try {
        return parse_valve_csv(in);
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

ValveStats valve_stats(const ValveMap& openings, Timestamp begin, Timestamp end,
                       std::vector<std::string>* warnings) {
    if (begin >= end) throw ConfigError("empty evaluation window");
    if (openings.empty()) throw DataError("no heaters in valve data");

    ValveStats st;
    for (const auto& [heater, series] : openings) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < series.t.size(); ++i) {
            if (series.t[i] < begin || series.t[i] >= end) continue;
            sum += series.pct[i];
            ++count;
        }
        if (count == 0) {
            if (warnings)
                warnings->push_back("heater " + heater +
                                    " has no samples in the window, excluded");
            continue;
        }
        st.heater_means.emplace_back(heater, sum / static_cast<double>(count));
    }
    if (st.heater_means.empty())
        throw DataError("no heater has samples in the evaluation window");

    std::vector<double> means;
    means.reserve(st.heater_means.size());
    for (const auto& [heater, m] : st.heater_means) means.push_back(m);
    std::sort(means.begin(), means.end());
    st.min_pct = means.front();
    st.q1_pct = quantile_sorted(means, 0.25);
    st.median_pct = quantile_sorted(means, 0.5);
    st.q3_pct = quantile_sorted(means, 0.75);
    st.max_pct = means.back();

    const double lo = st.q1_pct - 1.5 * st.iqr();
    const double hi = st.q3_pct + 1.5 * st.iqr();
    for (const auto& [heater, m] : st.heater_means) {
        if (m < lo || m > hi) st.outliers.push_back(heater);
        if (m >= 99.0) st.saturated.push_back(heater);
    }
    return st;
}

std::string window_match_to_json(const WindowMatch& m) {
    nlohmann::ordered_json j;
    j["ref_start"] = format_timestamp(m.ref_start);
    j["rmse_K"] = m.rmse_K;
    j["intervals"] = m.intervals;
    j["length_s"] = m.intervals * static_cast<std::size_t>(kStepSeconds);
    j["compared_pairs"] = m.compared_pairs;
    return j.dump(2) + "\n";
}

std::string valve_stats_to_json(const ValveStats& s) {
    nlohmann::ordered_json j;
    j["heater_means"] = nlohmann::ordered_json::object();
    for (const auto& [heater, m] : s.heater_means) j["heater_means"][heater] = m;
    j["summary"] = {{"min", s.min_pct},
                    {"q1", s.q1_pct},
                    {"median", s.median_pct},
                    {"q3", s.q3_pct},
                    {"max", s.max_pct},
                    {"iqr", s.iqr()}};
    j["outliers"] = s.outliers;
    j["saturated"] = s.saturated;
    return j.dump(2) + "\n";
}

std::string valve_means_to_csv(const ValveStats& s) {
    std::string out = "heater_id,mean_opening_pct\n";
    for (const auto& [heater, m] : s.heater_means) {
        out += heater;
        out += ',';
        out += num_to_string(m);
        out += '\n';
    }
    return out;
}

} // namespace heatcurve
