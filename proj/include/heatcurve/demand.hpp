#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heatcurve/cluster.hpp"
#include "heatcurve/timeseries.hpp"

namespace heatcurve {

struct DemandBin {
    double q90_kW = 0.0;
    int sample_count = 0;
};

// 90%-quantile building heat demand per (cluster, outdoor-temperature bin).
// Bin key is the integer bin index; bin center = index * bin_width_K.
// Underpopulated cells are simply absent — a gap, never zero.
struct DemandModel {
    double bin_width_K = 1.0;
    int min_samples = 6;
    double t_out_min_C = 0.0; // observed range of fitted samples
    double t_out_max_C = 0.0;
    std::vector<std::map<long, DemandBin>> bins; // one map per cluster

    int n_cluster() const { return static_cast<int>(bins.size()); }
};

// Round-half-away-from-zero bin assignment for t_out / bin_width.
long bin_index(double t_out_C, double bin_width_K);

DemandModel fit_demand(const AlignedSeries& series, const ClusterModel& clusters,
                       double bin_width_K, int min_samples);

// Value of the containing bin, or the missing marker for a gap.
double query_demand(const DemandModel& model, int cluster, double t_out_C);

std::string demand_model_to_json(const DemandModel& model);
DemandModel demand_model_from_json(const std::string& text);

// "cluster,t_out_C,q90_kW,n" rows, sorted by (cluster, bin).
std::string demand_bins_to_csv(const DemandModel& model);

} // namespace heatcurve
