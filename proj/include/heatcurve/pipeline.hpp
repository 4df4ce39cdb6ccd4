#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "heatcurve/building.hpp"
#include "heatcurve/cluster.hpp"
#include "heatcurve/config.hpp"
#include "heatcurve/curve.hpp"
#include "heatcurve/demand.hpp"
#include "heatcurve/evaluate.hpp"
#include "heatcurve/loads.hpp"
#include "heatcurve/timeseries.hpp"

namespace heatcurve {

struct PipelineResult {
    AlignReport align_report;
    AlignedSeries aligned;

    std::vector<IntervalFeatures> features;
    ClusterModel cluster_model;
    KMeansTrace kmeans_trace;
    std::vector<std::pair<int, double>> elbow; // k -> final WCSS

    DemandModel demand_model;

    BuildingModel building;
    std::array<double, 3> u_ratio{};

    std::vector<RoomLoads> load_cells; // computed (cluster, bin) cells, residual applied
    std::vector<std::vector<HeaterState>> heater_states; // parallel to load_cells
    int infeasible_bins = 0;

    std::map<int, Heatcurve> raw_curves;   // pre-smoothing, computed bins only
    std::map<int, Heatcurve> final_curves; // filled, smoothed, offset, clamped
    std::vector<HallwayCheck> hallway_checks;
    double floor_t_sup_C = 0.0;

    WindowMatch window_match;
    bool window_match_done = false;
    ValveStats valve_summary;
    bool valve_summary_done = false;

    std::vector<std::string> warnings;
};

// Runs every stage up to `upto` in memory; throws on the first error so no
// artifact is ever half-written.
PipelineResult run_pipeline(const RunConfig& cfg, Stage upto, bool with_elbow = false);

// Serializes the artifact set for `upto` into out_dir. All file contents are
// generated before the first byte is written; each file goes through a
// temporary name and an atomic rename. Returns the artifact filenames.
std::vector<std::string> write_artifacts(const PipelineResult& r, const RunConfig& cfg,
                                         Stage upto, const std::string& out_dir);

} // namespace heatcurve
