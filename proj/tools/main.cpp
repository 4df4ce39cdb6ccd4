#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heatcurve/config.hpp"
#include "heatcurve/errors.hpp"
#include "heatcurve/pipeline.hpp"

using namespace heatcurve;

namespace {

struct Flags {
    std::string config_path;
    std::string demand, weather, building, u_values, valves, out;
    int n_cluster = 1;
    std::uint64_t seed = 0;
    double bin_width = 1.0;
    int min_samples = 6;
    double hallway_t_sup = 45.0;
    double exponent_n = 1.3;
    double safety_offset = 0.0;
    std::vector<double> range;
    int sg_window = 7;
    int sg_polyorder = 2;
    int utc_offset_min = 0;
    bool clamp_negative = false;
    bool elbow = false;
    std::string exp_weather;
    std::vector<std::string> exp_range, ref_range;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config_path, "run configuration JSON");
    sub->add_option("--demand", f.demand, "heat meter CSV (timestamp,value in kW)");
    sub->add_option("--weather", f.weather, "outdoor temperature CSV");
    sub->add_option("--building", f.building, "building description JSON");
    sub->add_option("--u-values", f.u_values, "U-value table JSON");
    sub->add_option("--valves", f.valves, "valve opening CSV");
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--n-cluster", f.n_cluster, "number of demand clusters");
    sub->add_option("--seed", f.seed, "clustering seed");
    sub->add_option("--bin-width", f.bin_width, "outdoor-temperature bin width K");
    sub->add_option("--min-samples", f.min_samples, "minimum samples per demand bin");
    sub->add_option("--hallway-t-sup", f.hallway_t_sup,
                    "assumed hallway supply temperature C");
    sub->add_option("--exponent-n", f.exponent_n, "default radiator exponent");
    sub->add_option("--safety-offset", f.safety_offset, "offset K added to the curve");
    sub->add_option("--range", f.range, "output range: min max C")->expected(2);
    sub->add_option("--sg-window", f.sg_window, "smoothing window (odd number of bins)");
    sub->add_option("--sg-polyorder", f.sg_polyorder, "smoothing polynomial order");
    sub->add_option("--utc-offset-min", f.utc_offset_min,
                    "minutes added to UTC for the civil day");
    sub->add_flag("--clamp-negative", f.clamp_negative,
                  "clamp negative heat readings to zero instead of rejecting");
}

void add_evaluate(CLI::App* sub, Flags& f) {
    sub->add_option("--exp-weather", f.exp_weather,
                    "experiment outdoor-temperature CSV (default: --weather)");
    sub->add_option("--exp-range", f.exp_range, "experiment window: begin end (ISO)")
        ->expected(2);
    sub->add_option("--ref-range", f.ref_range, "reference search window: begin end (ISO)")
        ->expected(2);
}

RunConfig effective_config(const CLI::App* sub, const Flags& f) {
    RunConfig cfg;
    if (!f.config_path.empty()) cfg = load_run_config_file(f.config_path);
    if (sub->count("--demand")) cfg.demand_csv = f.demand;
    if (sub->count("--weather")) cfg.weather_csv = f.weather;
    if (sub->count("--building")) cfg.building_json = f.building;
    if (sub->count("--u-values")) cfg.u_values_json = f.u_values;
    if (sub->count("--valves")) cfg.valves_csv = f.valves;
    if (sub->count("--out")) cfg.out_dir = f.out;
    if (sub->count("--n-cluster")) cfg.n_cluster = f.n_cluster;
    if (sub->count("--seed")) cfg.seed = f.seed;
    if (sub->count("--bin-width")) cfg.bin_width_K = f.bin_width;
    if (sub->count("--min-samples")) cfg.min_samples = f.min_samples;
    if (sub->count("--hallway-t-sup")) cfg.hallway_assumed_t_sup_C = f.hallway_t_sup;
    if (sub->count("--exponent-n")) cfg.exponent_n = f.exponent_n;
    if (sub->count("--safety-offset")) cfg.safety_offset_K = f.safety_offset;
    if (sub->count("--range")) {
        cfg.range_min_C = f.range[0];
        cfg.range_max_C = f.range[1];
    }
    if (sub->count("--sg-window")) cfg.sg_window = f.sg_window;
    if (sub->count("--sg-polyorder")) cfg.sg_polyorder = f.sg_polyorder;
    if (sub->count("--utc-offset-min")) cfg.utc_offset_min = f.utc_offset_min;
    if (sub->count("--clamp-negative")) cfg.clamp_negative_demand = f.clamp_negative;
    if (sub->get_option_no_throw("--exp-weather")) {
        if (sub->count("--exp-weather")) cfg.evaluate.exp_weather_csv = f.exp_weather;
        if (sub->count("--exp-range")) {
            cfg.evaluate.exp_start = f.exp_range[0];
            cfg.evaluate.exp_end = f.exp_range[1];
        }
        if (sub->count("--ref-range")) {
            cfg.evaluate.ref_start = f.ref_range[0];
            cfg.evaluate.ref_end = f.ref_range[1];
        }
    }
    // re-validate: flag overrides must satisfy the same ranges as the file
    return load_run_config(run_config_to_json(cfg));
}

Stage stage_of(const std::string& name) {
    if (name == "ingest") return Stage::ingest;
    if (name == "cluster") return Stage::cluster;
    if (name == "demand") return Stage::demand;
    if (name == "loads") return Stage::loads;
    if (name == "heatcurve") return Stage::heatcurve;
    if (name == "evaluate") return Stage::evaluate;
    return Stage::report;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"derive minimal feasible heating curves from consumption history"};
    app.require_subcommand(1);
    Flags f;

    CLI::App* ingest = app.add_subcommand("ingest", "parse and align the input series");
    CLI::App* cluster = app.add_subcommand("cluster", "fit the interval-of-day clusters");
    CLI::App* demand = app.add_subcommand("demand", "fit the per-cluster demand model");
    CLI::App* loads = app.add_subcommand("loads", "allocate demand to rooms per bin");
    CLI::App* curve = app.add_subcommand("heatcurve", "derive per-cluster heating curves");
    CLI::App* evaluate = app.add_subcommand("evaluate", "window match and valve statistics");
    CLI::App* report = app.add_subcommand("report", "run everything and write a report");
    for (CLI::App* sub : {ingest, cluster, demand, loads, curve, evaluate, report})
        add_common(sub, f);
    cluster->add_flag("--elbow", f.elbow, "sweep k and write the WCSS elbow table");
    add_evaluate(evaluate, f);
    add_evaluate(report, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    const Stage stage = stage_of(sub->get_name());
    try {
        const RunConfig cfg = effective_config(sub, f);
        validate_input_paths(cfg, stage);
        const PipelineResult result = run_pipeline(cfg, stage, f.elbow);
        for (const std::string& w : result.warnings)
            std::cerr << "warning: " << w << "\n";
        for (const std::string& name : write_artifacts(result, cfg, stage, cfg.out_dir))
            std::cout << "wrote " << cfg.out_dir << "/" << name << "\n";
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
