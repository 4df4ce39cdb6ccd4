#include "heatcurve/demand.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "heatcurve/errors.hpp"
#include "heatcurve/stats.hpp"
#include "heatcurve/textio.hpp"

namespace heatcurve {

long bin_index(double t_out_C, double bin_width_K) {
    // round-half-away-from-zero, the documented bin-edge tie rule
    return std::lround(t_out_C / bin_width_K);
}

DemandModel fit_demand(const AlignedSeries& series, const ClusterModel& clusters,
                       double bin_width_K, int min_samples) {
    if (bin_width_K <= 0.0) throw ConfigError("bin_width_K must be > 0");
    if (min_samples < 1) throw ConfigError("min_samples must be >= 1");

    DemandModel model;
    model.bin_width_K = bin_width_K;
    model.min_samples = min_samples;
    model.bins.resize(static_cast<std::size_t>(clusters.n_cluster));

    std::vector<std::map<long, std::vector<double>>> cells(
        static_cast<std::size_t>(clusters.n_cluster));
    bool any = false;
    double tmin = 0.0, tmax = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double q = series.demand_kW[i];
        const double t = series.t_out_C[i];
        if (is_missing(q) || is_missing(t)) continue;
        const int c = cluster_of(clusters, series.time_at(i));
        cells[static_cast<std::size_t>(c)][bin_index(t, bin_width_K)].push_back(q);
        if (!any) {
            tmin = tmax = t;
            any = true;
        } else {
            tmin = std::min(tmin, t);
            tmax = std::max(tmax, t);
        }
    }
    if (!any) throw DataError("no usable (demand, t_out) samples");
    model.t_out_min_C = tmin;
    model.t_out_max_C = tmax;

    bool populated = false;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        for (auto& [idx, samples] : cells[c]) {
            if (static_cast<int>(samples.size()) < min_samples) continue;
            std::sort(samples.begin(), samples.end());
            model.bins[c][idx] =
                DemandBin{quantile_sorted(samples, 0.9), static_cast<int>(samples.size())};
            populated = true;
        }
    }
    if (!populated)
        throw DataError("demand model is empty: no bin reaches min_samples = " +
                        std::to_string(min_samples));
    return model;
}

double query_demand(const DemandModel& model, int cluster, double t_out_C) {
    if (cluster < 0 || cluster >= model.n_cluster())
        throw ConfigError("cluster id " + std::to_string(cluster) + " out of range");
    const auto& m = model.bins[static_cast<std::size_t>(cluster)];
    const auto it = m.find(bin_index(t_out_C, model.bin_width_K));
    return it == m.end() ? kMissing : it->second.q90_kW;
}

std::string demand_model_to_json(const DemandModel& model) {
    nlohmann::ordered_json j;
    j["bin_width_K"] = model.bin_width_K;
    j["min_samples"] = model.min_samples;
    j["t_out_range_C"] = {model.t_out_min_C, model.t_out_max_C};
    nlohmann::ordered_json clusters = nlohmann::ordered_json::array();
    for (const auto& m : model.bins) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& [idx, bin] : m) {
            nlohmann::ordered_json row;
            row["t_out_C"] = static_cast<double>(idx) * model.bin_width_K;
            row["q90_kW"] = bin.q90_kW;
            row["n"] = bin.sample_count;
            rows.push_back(row);
        }
        clusters.push_back(rows);
    }
    j["clusters"] = clusters;
    return j.dump(2) + "\n";
}

DemandModel demand_model_from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        DemandModel m;
        m.bin_width_K = j.at("bin_width_K").get<double>();
        m.min_samples = j.at("min_samples").get<int>();
        m.t_out_min_C = j.at("t_out_range_C").at(0).get<double>();
        m.t_out_max_C = j.at("t_out_range_C").at(1).get<double>();
        for (const auto& rows : j.at("clusters")) {
            std::map<long, DemandBin> bins;
            for (const auto& row : rows) {
                const double t = row.at("t_out_C").get<double>();
                bins[bin_index(t, m.bin_width_K)] =
                    DemandBin{row.at("q90_kW").get<double>(), row.at("n").get<int>()};
            }
            m.bins.push_back(std::move(bins));
        }
        if (m.bins.empty()) throw DataError("demand model: no clusters");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("demand model: ") + e.what());
    }
}

std::string demand_bins_to_csv(const DemandModel& model) {
    std::string out = "cluster,t_out_C,q90_kW,n\n";
    for (std::size_t c = 0; c < model.bins.size(); ++c) {
        for (const auto& [idx, bin] : model.bins[c]) {
            out += std::to_string(c);
            out += ',';
            out += num_to_string(static_cast<double>(idx) * model.bin_width_K);
            out += ',';
            out += num_to_string(bin.q90_kW);
            out += ',';
            out += std::to_string(bin.sample_count);
            out += '\n';
        }
    }
    return out;
}

} // namespace heatcurve
