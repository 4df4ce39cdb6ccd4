#include "heatcurve/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include <json.hpp>

#include "heatcurve/errors.hpp"
#include "heatcurve/stats.hpp"

namespace heatcurve {

namespace {

const char* const kFeatureNames[kNumFeatures] = {"mean_kW", "q90_kW", "q10_kW"};

using Point = std::array<double, kNumFeatures>;

double sq_dist(const Point& a, const Point& b) {
    double s = 0.0;
    for (int d = 0; d < kNumFeatures; ++d) {
        const double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

// Uniform in [0,1) built from raw generator bits: std::uniform_real_distribution
// is implementation-defined, and identical seeds must give identical clusters
// on every platform.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

std::vector<IntervalFeatures> compute_features(const AlignedSeries& series,
                                               int utc_offset_min) {
    if (series.size() < static_cast<std::size_t>(kIntervalsPerDay))
        throw DataError("series covers less than one full day (" +
                        std::to_string(series.size()) + " intervals)");

    std::vector<std::vector<double>> samples(kIntervalsPerDay);
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (is_missing(series.demand_kW[i])) continue;
        samples[interval_of_day(series.time_at(i), utc_offset_min)].push_back(
            series.demand_kW[i]);
    }

    std::vector<IntervalFeatures> out(kIntervalsPerDay);
    for (int k = 0; k < kIntervalsPerDay; ++k) {
        auto& cell = samples[k];
        if (cell.empty())
            throw DataError("no demand samples for interval-of-day " + std::to_string(k));
        std::sort(cell.begin(), cell.end());
        IntervalFeatures& f = out[k];
        f.interval_index = k;
        f.sample_count = static_cast<int>(cell.size());
        f.mean_kW = mean(cell);
        f.q90_kW = quantile_sorted(cell, 0.9);
        f.q10_kW = quantile_sorted(cell, 0.1);
    }
    return out;
}

ClusterModel kmeans_fit(const std::vector<IntervalFeatures>& features, int n_cluster,
                        std::uint64_t seed, KMeansTrace* trace) {
    if (n_cluster < 1) throw ConfigError("n_cluster must be >= 1");
    if (n_cluster > static_cast<int>(features.size()))
        throw ConfigError("n_cluster exceeds the number of interval profiles");
    const std::size_t n = features.size();

    ClusterModel model;
    model.n_cluster = n_cluster;
    model.seed = seed;

    // Standardize per feature; a zero-variance feature carries no cluster
    // information and would divide by zero, so it is dropped.
    for (int d = 0; d < kNumFeatures; ++d) {
        double m = 0.0;
        for (const auto& f : features) m += f.raw()[d];
        m /= static_cast<double>(n);
        double var = 0.0;
        for (const auto& f : features) {
            const double diff = f.raw()[d] - m;
            var += diff * diff;
        }
        const double sd = std::sqrt(var / static_cast<double>(n));
        model.feature_mean[d] = m;
        model.feature_std[d] = sd;
        model.feature_used[d] = sd > 0.0;
        if (sd <= 0.0 && trace)
            trace->warnings.push_back(std::string("feature ") + kFeatureNames[d] +
                                      " has zero variance and was dropped");
    }

    std::vector<Point> pts(n, Point{});
    for (std::size_t i = 0; i < n; ++i)
        for (int d = 0; d < kNumFeatures; ++d)
            if (model.feature_used[d])
                pts[i][d] = (features[i].raw()[d] - model.feature_mean[d]) /
                            model.feature_std[d];

    {
        std::set<Point> distinct(pts.begin(), pts.end());
        if (static_cast<std::size_t>(n_cluster) > distinct.size())
            throw DataError("degenerate clustering: n_cluster " +
                            std::to_string(n_cluster) + " exceeds " +
                            std::to_string(distinct.size()) +
                            " distinct interval profiles");
    }

    // k-means++ seeding
    std::mt19937_64 rng(seed);
    std::vector<Point> centroids;
    centroids.reserve(static_cast<std::size_t>(n_cluster));
    {
        std::size_t first = static_cast<std::size_t>(next_unit(rng) * static_cast<double>(n));
        if (first >= n) first = n - 1;
        centroids.push_back(pts[first]);
        std::vector<double> d2(n);
        while (centroids.size() < static_cast<std::size_t>(n_cluster)) {
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double best = std::numeric_limits<double>::infinity();
                for (const auto& c : centroids) best = std::min(best, sq_dist(pts[i], c));
                d2[i] = best;
                total += best;
            }
            std::size_t pick = 0;
            if (total > 0.0) {
                const double r = next_unit(rng) * total;
                double cum = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    cum += d2[i];
                    if (cum > r) {
                        pick = i;
                        break;
                    }
                }
            } else {
                // unreachable given the distinct-points check; defensive
                pick = centroids.size() % n;
            }
            centroids.push_back(pts[pick]);
        }
    }

    std::vector<int> assign(n, -1);
    auto assign_all = [&](std::vector<int>& a) {
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double bestd = sq_dist(pts[i], centroids[0]);
            for (int c = 1; c < n_cluster; ++c) {
                const double d = sq_dist(pts[i], centroids[static_cast<std::size_t>(c)]);
                if (d < bestd) { // ties keep the lowest cluster index
                    bestd = d;
                    best = c;
                }
            }
            a[i] = best;
        }
    };
    auto update_centroids = [&]() {
        std::vector<Point> sums(static_cast<std::size_t>(n_cluster), Point{});
        std::vector<int> counts(static_cast<std::size_t>(n_cluster), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = static_cast<std::size_t>(assign[i]);
            for (int d = 0; d < kNumFeatures; ++d) sums[c][d] += pts[i][d];
            ++counts[c];
        }
        for (int c = 0; c < n_cluster; ++c) {
            const auto cz = static_cast<std::size_t>(c);
            if (counts[cz] == 0) continue; // handled by repair before this runs
            for (int d = 0; d < kNumFeatures; ++d)
                centroids[cz][d] = sums[cz][d] / counts[cz];
        }
    };
    auto wcss = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += sq_dist(pts[i], centroids[static_cast<std::size_t>(assign[i])]);
        return s;
    };

    bool converged = false;
    int iter = 0;
    std::vector<int> prev;
    std::vector<int> member_count(static_cast<std::size_t>(n_cluster));
    for (; iter < 300; ++iter) {
        assign_all(assign);

        // Empty-cluster repair: reseed on the point farthest from its own
        // centroid (donor clusters of size one are kept intact).
        std::fill(member_count.begin(), member_count.end(), 0);
        for (std::size_t i = 0; i < n; ++i) ++member_count[static_cast<std::size_t>(assign[i])];
        for (int c = 0; c < n_cluster; ++c) {
            if (member_count[static_cast<std::size_t>(c)] > 0) continue;
            std::size_t far = n;
            double fard = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (member_count[static_cast<std::size_t>(assign[i])] <= 1) continue;
                const double d =
                    sq_dist(pts[i], centroids[static_cast<std::size_t>(assign[i])]);
                if (d > fard) {
                    fard = d;
                    far = i;
                }
            }
            if (far == n) throw DataError("degenerate clustering: cannot repair empty cluster");
            --member_count[static_cast<std::size_t>(assign[far])];
            assign[far] = c;
            member_count[static_cast<std::size_t>(c)] = 1;
            centroids[static_cast<std::size_t>(c)] = pts[far];
        }

        update_centroids();
        if (trace) trace->wcss.push_back(wcss());

        if (!prev.empty() && prev == assign) {
            converged = true;
            break;
        }
        prev = assign;
    }

    if (trace) {
        trace->iterations = iter;
        trace->converged = converged;
    }

    model.assignment = std::move(assign);
    model.centroids = std::move(centroids);
    return model;
}

int cluster_of(const ClusterModel& model, Timestamp t) {
    return model.assignment[static_cast<std::size_t>(
        interval_of_day(t, model.utc_offset_min))];
}

std::string cluster_model_to_json(const ClusterModel& model) {
    nlohmann::ordered_json j;
    j["n_cluster"] = model.n_cluster;
    j["seed"] = model.seed;
    j["utc_offset_min"] = model.utc_offset_min;
    nlohmann::ordered_json scaling = nlohmann::ordered_json::array();
    for (int d = 0; d < kNumFeatures; ++d) {
        nlohmann::ordered_json f;
        f["name"] = kFeatureNames[d];
        f["mean"] = model.feature_mean[d];
        f["stddev"] = model.feature_std[d];
        f["used"] = model.feature_used[d];
        scaling.push_back(f);
    }
    j["feature_scaling"] = scaling;
    j["centroids"] = model.centroids;
    j["assignment"] = model.assignment;
    return j.dump(2) + "\n";
}

ClusterModel cluster_model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("cluster model: ") + e.what());
    }
    try {
        ClusterModel m;
        m.n_cluster = j.at("n_cluster").get<int>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.utc_offset_min = j.at("utc_offset_min").get<int>();
        const auto& scaling = j.at("feature_scaling");
        if (scaling.size() != kNumFeatures)
            throw DataError("cluster model: feature_scaling must have 3 entries");
        for (int d = 0; d < kNumFeatures; ++d) {
            m.feature_mean[d] = scaling[d].at("mean").get<double>();
            m.feature_std[d] = scaling[d].at("stddev").get<double>();
            m.feature_used[d] = scaling[d].at("used").get<bool>();
        }
        m.centroids = j.at("centroids").get<std::vector<Point>>();
        m.assignment = j.at("assignment").get<std::vector<int>>();
        if (m.assignment.size() != static_cast<std::size_t>(kIntervalsPerDay))
            throw DataError("cluster model: assignment must have 144 entries");
        if (m.n_cluster < 1 || m.centroids.size() != static_cast<std::size_t>(m.n_cluster))
            throw DataError("cluster model: centroid count does not match n_cluster");
        for (int a : m.assignment)
            if (a < 0 || a >= m.n_cluster)
                throw DataError("cluster model: assignment id out of range");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("cluster model: ") + e.what());
    }
}

} // namespace heatcurve
