#pragma once

#include <cstdint>
#include <string>

namespace heatcurve {

// How far to take a run. Stages up to `report` build on one another;
// `evaluate` is a separate branch needing only weather and valve data.
enum class Stage { ingest, cluster, demand, loads, heatcurve, evaluate, report };

struct EvaluateConfig {
    std::string exp_weather_csv; // empty: reuse the main weather file
    std::string exp_start;       // ISO timestamps; empty = no bound
    std::string exp_end;
    std::string ref_start; // optional reference-range filter
    std::string ref_end;
};

struct RunConfig {
    std::string demand_csv;
    std::string weather_csv;
    std::string building_json;
    std::string u_values_json;
    std::string valves_csv; // optional
    std::string out_dir = "out";

    int n_cluster = 1;
    std::uint64_t seed = 0;
    double bin_width_K = 1.0;
    int min_samples = 6;
    double hallway_assumed_t_sup_C = 45.0;
    double exponent_n = 1.3; // default for heaters that do not declare one
    double safety_offset_K = 0.0;
    double range_min_C = -15.0;
    double range_max_C = 20.0;
    int sg_window = 7;
    int sg_polyorder = 2;
    int utc_offset_min = 0;
    bool clamp_negative_demand = false;

    EvaluateConfig evaluate;
};

// Parse and range-check a run configuration. Unknown keys are rejected.
// Relative input paths are resolved against `base_dir` (the config file's
// directory when loaded from disk); out_dir is left as given.
RunConfig load_run_config(const std::string& json_text, const std::string& base_dir = "");
RunConfig load_run_config_file(const std::string& path);

// Requires the input files the stage needs and checks that every configured
// path exists; called after CLI flag overrides have been applied. Messages
// name the offending path.
void validate_input_paths(const RunConfig& cfg, Stage stage);

// The effective configuration, echoed into the run report.
std::string run_config_to_json(const RunConfig& cfg);

} // namespace heatcurve
