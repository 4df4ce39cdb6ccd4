#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "heatcurve/timeseries.hpp"

namespace heatcurve {

inline constexpr int kNumFeatures = 3; // mean, q90, q10 per interval-of-day

struct IntervalFeatures {
    int interval_index = 0; // 0..143
    double mean_kW = 0.0;
    double q90_kW = 0.0;
    double q10_kW = 0.0;
    int sample_count = 0;

    std::array<double, kNumFeatures> raw() const { return {mean_kW, q90_kW, q10_kW}; }
};

// Per interval-of-day statistics over all days of the aligned series,
// missing samples excluded. Every interval must have at least one sample.
std::vector<IntervalFeatures> compute_features(const AlignedSeries& series,
                                               int utc_offset_min = 0);

struct ClusterModel {
    int n_cluster = 1;
    std::uint64_t seed = 0;
    int utc_offset_min = 0;
    std::vector<int> assignment;                         // size 144
    std::vector<std::array<double, kNumFeatures>> centroids; // standardized space
    std::array<double, kNumFeatures> feature_mean{};
    std::array<double, kNumFeatures> feature_std{};      // population stddev
    std::array<bool, kNumFeatures> feature_used{};       // stddev > 0
};

struct KMeansTrace {
    std::vector<double> wcss; // recorded after every centroid update; non-increasing
    int iterations = 0;
    bool converged = false;
    std::vector<std::string> warnings;
};

// Standardize features (population stddev; zero-variance features dropped
// with a warning), k-means++ seeding from `seed`, Lloyd iterations until the
// assignment reaches a fixed point or 300 iterations. Deterministic across
// platforms: the seeding draws bits straight from mt19937_64.
ClusterModel kmeans_fit(const std::vector<IntervalFeatures>& features, int n_cluster,
                        std::uint64_t seed, KMeansTrace* trace = nullptr);

int cluster_of(const ClusterModel& model, Timestamp t);

std::string cluster_model_to_json(const ClusterModel& model);
ClusterModel cluster_model_from_json(const std::string& text);

} // namespace heatcurve
