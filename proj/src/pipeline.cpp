#include "heatcurve/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "heatcurve/errors.hpp"
#include "heatcurve/radiator.hpp"
#include "heatcurve/stats.hpp"
#include "heatcurve/textio.hpp"

namespace heatcurve {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

bool reaches(Stage upto, Stage s) {
    if (upto == Stage::evaluate) return s == Stage::evaluate;
    if (s == Stage::evaluate) return upto == Stage::report;
    return static_cast<int>(upto) >= static_cast<int>(s);
}

Timestamp parse_config_time(const std::string& text, const char* key) {
    try {
        return parse_timestamp(text);
    } catch (const DataError& e) {
        throw ConfigError(std::string("evaluate.") + key + ": " + e.what());
    }
}

AlignedSeries slice_by_config(AlignedSeries s, const std::string& start,
                              const std::string& end, const char* what) {
    if (start.empty() && end.empty()) return s;
    const Timestamp b = start.empty() ? s.start : parse_config_time(start, what);
    const Timestamp e =
        end.empty() ? s.time_at(s.size()) : parse_config_time(end, what);
    return slice(s, b, e);
}

void run_evaluate_branch(const RunConfig& cfg, PipelineResult& r, bool require_valves) {
    RawSeries ref_raw = parse_series_file(cfg.weather_csv, SeriesKind::outdoor_temp_C);
    AlignedSeries ref = align_temperature(ref_raw);
    ref = slice_by_config(std::move(ref), cfg.evaluate.ref_start, cfg.evaluate.ref_end,
                          "ref_range");

    AlignedSeries exp;
    if (!cfg.evaluate.exp_weather_csv.empty())
        exp = align_temperature(
            parse_series_file(cfg.evaluate.exp_weather_csv, SeriesKind::outdoor_temp_C));
    else
        exp = align_temperature(ref_raw);
    exp = slice_by_config(std::move(exp), cfg.evaluate.exp_start, cfg.evaluate.exp_end,
                          "exp_range");

    r.window_match = match_window(exp, ref);
    r.window_match_done = true;

    if (cfg.valves_csv.empty()) {
        if (require_valves) throw ConfigError("valve CSV is not configured");
        r.warnings.push_back("valve CSV not configured, valve statistics skipped");
        return;
    }
    const ValveMap valves = parse_valve_csv_file(cfg.valves_csv);
    r.valve_summary =
        valve_stats(valves, exp.start, exp.time_at(exp.size()), &r.warnings);
    r.valve_summary_done = true;
}

// Curve bins are the integer multiples of the bin width inside the range.
std::vector<long> range_bins(const RunConfig& cfg) {
    const long k_min = static_cast<long>(std::ceil(cfg.range_min_C / cfg.bin_width_K - 1e-9));
    const long k_max = static_cast<long>(std::floor(cfg.range_max_C / cfg.bin_width_K + 1e-9));
    std::vector<long> ks;
    for (long k = k_min; k <= k_max; ++k) ks.push_back(k);
    return ks;
}

std::string interval_quantiles_csv(const PipelineResult& r) {
    std::string out = "interval,mean_kW,q90_kW,q10_kW,n,cluster\n";
    for (const auto& f : r.features) {
        out += std::to_string(f.interval_index);
        out += ',';
        out += num_to_string(f.mean_kW);
        out += ',';
        out += num_to_string(f.q90_kW);
        out += ',';
        out += num_to_string(f.q10_kW);
        out += ',';
        out += std::to_string(f.sample_count);
        out += ',';
        out += std::to_string(r.cluster_model.assignment[f.interval_index]);
        out += '\n';
    }
    return out;
}

std::string elbow_csv(const PipelineResult& r) {
    std::string out = "k,wcss\n";
    for (const auto& [k, wcss] : r.elbow) {
        out += std::to_string(k);
        out += ',';
        out += num_to_string(wcss);
        out += '\n';
    }
    return out;
}

std::string heater_requirements_csv(const PipelineResult& r) {
    std::string out = "cluster,t_out_C,room_id,heater_id,q_required_W,t_sup_required_C,over_nominal\n";
    for (std::size_t i = 0; i < r.heater_states.size(); ++i) {
        const RoomLoads& cell = r.load_cells[i];
        for (const HeaterState& h : r.heater_states[i]) {
            out += std::to_string(cell.cluster);
            out += ',';
            out += num_to_string(cell.t_out_C);
            out += ',';
            out += h.room_id;
            out += ',';
            out += h.heater_id;
            out += ',';
            out += num_to_string(h.q_required_W);
            out += ',';
            out += num_to_string(h.t_sup_required_C);
            out += ',';
            out += h.over_nominal ? '1' : '0';
            out += '\n';
        }
    }
    return out;
}

struct CriticalHeater {
    double t_sup_required_C = 0.0;
    std::string heater_id;
    double t_out_C = 0.0;
    int cluster = 0;
};

std::map<std::string, CriticalHeater> critical_heaters(const PipelineResult& r) {
    std::map<std::string, CriticalHeater> crit;
    for (std::size_t i = 0; i < r.heater_states.size(); ++i) {
        const RoomLoads& cell = r.load_cells[i];
        for (const HeaterState& h : r.heater_states[i]) {
            auto it = crit.find(h.room_id);
            if (it == crit.end() || h.t_sup_required_C > it->second.t_sup_required_C) {
                crit[h.room_id] =
                    {h.t_sup_required_C, h.heater_id, cell.t_out_C, cell.cluster};
            }
        }
    }
    return crit;
}

std::string critical_heaters_json(const PipelineResult& r) {
    ordered_json j = ordered_json::object();
    for (const auto& [room, c] : critical_heaters(r)) {
        j[room] = {{"heater_id", c.heater_id},
                   {"t_sup_required_C", c.t_sup_required_C},
                   {"t_out_C", c.t_out_C},
                   {"cluster", c.cluster}};
    }
    return j.dump(2) + "\n";
}

ordered_json hallway_check_json(const HallwayCheck& c) {
    return {{"cluster", c.cluster},
            {"pass", c.pass},
            {"assumed_t_sup_C", c.assumed_t_sup_C},
            {"curve_min_C", c.curve_min_C},
            {"violating_bins", c.violating_bins}};
}

std::string hallway_checks_json(const PipelineResult& r) {
    ordered_json j = ordered_json::array();
    for (const auto& c : r.hallway_checks) j.push_back(hallway_check_json(c));
    return j.dump(2) + "\n";
}

std::string report_json(const PipelineResult& r, const RunConfig& cfg) {
    ordered_json j;
    j["config"] = ordered_json::parse(run_config_to_json(cfg));
    j["alignment"] = ordered_json::parse(align_report_to_json(r.align_report));

    ordered_json jc;
    jc["n_cluster"] = r.cluster_model.n_cluster;
    jc["seed"] = r.cluster_model.seed;
    jc["iterations"] = r.kmeans_trace.iterations;
    jc["converged"] = r.kmeans_trace.converged;
    if (!r.kmeans_trace.wcss.empty()) jc["final_wcss"] = r.kmeans_trace.wcss.back();
    j["clustering"] = jc;

    ordered_json jd;
    jd["bin_width_K"] = r.demand_model.bin_width_K;
    jd["t_out_min_C"] = r.demand_model.t_out_min_C;
    jd["t_out_max_C"] = r.demand_model.t_out_max_C;
    ordered_json per_cluster = ordered_json::array();
    for (const auto& m : r.demand_model.bins) per_cluster.push_back(m.size());
    jd["bins_per_cluster"] = per_cluster;
    j["demand"] = jd;

    j["floor_t_sup_C"] = r.floor_t_sup_C;
    j["infeasible_bins"] = r.infeasible_bins;

    ordered_json curves = ordered_json::array();
    for (const auto& [cluster, curve] : r.final_curves) {
        int computed = 0, filled = 0, smoothed = 0;
        double lo = 0.0, hi = 0.0;
        std::map<std::string, int> limiting;
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            const CurvePoint& p = curve.points[i];
            if (i == 0 || p.t_sup_C < lo) lo = p.t_sup_C;
            if (i == 0 || p.t_sup_C > hi) hi = p.t_sup_C;
            switch (p.provenance) {
                case PointProvenance::computed: ++computed; break;
                case PointProvenance::smoothed: ++smoothed; break;
                default: ++filled; break;
            }
            if (!p.limiting_heater.empty()) ++limiting[p.limiting_heater];
        }
        ordered_json jk;
        jk["cluster"] = cluster;
        jk["computed_bins"] = computed;
        jk["smoothed_bins"] = smoothed;
        jk["filled_bins"] = filled;
        jk["t_sup_min_C"] = lo;
        jk["t_sup_max_C"] = hi;
        jk["limiting_heaters"] = limiting;
        curves.push_back(jk);
    }
    j["curves"] = curves;

    j["critical_heaters"] = ordered_json::parse(critical_heaters_json(r));
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.hallway_checks) checks.push_back(hallway_check_json(c));
    j["hallway_checks"] = checks;

    if (r.window_match_done)
        j["window_match"] = ordered_json::parse(window_match_to_json(r.window_match));
    if (r.valve_summary_done)
        j["valve_stats"] = ordered_json::parse(valve_stats_to_json(r.valve_summary));

    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

} // namespace

PipelineResult run_pipeline(const RunConfig& cfg, Stage upto, bool with_elbow) {
    PipelineResult r;
    if (upto == Stage::evaluate) {
        run_evaluate_branch(cfg, r, /*require_valves=*/true);
        return r;
    }

    // ingest: parse, then align both series onto the shared 10-minute grid
    const RawSeries demand_raw = parse_series_file(
        cfg.demand_csv, SeriesKind::heat_power_kW,
        cfg.clamp_negative_demand ? NegativePolicy::clamp_to_zero : NegativePolicy::reject);
    const RawSeries weather_raw =
        parse_series_file(cfg.weather_csv, SeriesKind::outdoor_temp_C);
    r.aligned = align(demand_raw, weather_raw, &r.align_report);
    if (!reaches(upto, Stage::cluster)) return r;

    // cluster interval-of-day demand profiles
    r.features = compute_features(r.aligned, cfg.utc_offset_min);
    r.cluster_model = kmeans_fit(r.features, cfg.n_cluster, cfg.seed, &r.kmeans_trace);
    r.cluster_model.utc_offset_min = cfg.utc_offset_min;
    for (const auto& w : r.kmeans_trace.warnings) r.warnings.push_back(w);
    if (with_elbow) {
        const int k_max = std::min<int>(8, static_cast<int>(r.features.size()));
        for (int k = 1; k <= k_max; ++k) {
            KMeansTrace trace;
            try {
                kmeans_fit(r.features, k, cfg.seed, &trace);
            } catch (const DataError&) {
                r.warnings.push_back("elbow sweep stopped at k=" + std::to_string(k) +
                                     ": not enough distinct profiles");
                break;
            }
            r.elbow.emplace_back(k, trace.wcss.empty() ? 0.0 : trace.wcss.back());
        }
    }
    if (!reaches(upto, Stage::demand)) return r;

    // per-(cluster, bin) demand quantiles
    r.demand_model = fit_demand(r.aligned, r.cluster_model, cfg.bin_width_K, cfg.min_samples);
    if (!reaches(upto, Stage::loads)) return r;

    // building description and elementwise U ratios
    BuildingDefaults defaults;
    defaults.exponent_n = cfg.exponent_n;
    r.building = load_building_file(cfg.building_json, defaults);
    r.u_ratio = u_ratios(load_u_table_file(cfg.u_values_json, r.building.construction_type));

    // allocate demand to rooms for every populated bin in the output range
    for (int c = 0; c < r.demand_model.n_cluster(); ++c) {
        for (long k : range_bins(cfg)) {
            const double t_out = static_cast<double>(k) * cfg.bin_width_K;
            const double q_kW = query_demand(r.demand_model, c, t_out);
            if (is_missing(q_kW)) continue;
            RoomLoads cell;
            try {
                cell = solve_room_loads(r.building, r.u_ratio, q_kW * 1000.0, t_out);
                cell = partition_hallway_residual(std::move(cell), r.building,
                                                  cfg.hallway_assumed_t_sup_C);
            } catch (const InfeasibleError& e) {
                ++r.infeasible_bins;
                r.warnings.push_back("cluster " + std::to_string(c) + ", t_out " +
                                     num_to_string(t_out) + ": " + e.what() +
                                     " -> bin left as a gap");
                continue;
            }
            cell.cluster = c;
            r.load_cells.push_back(std::move(cell));
        }
    }
    if (r.load_cells.empty()) {
        if (r.infeasible_bins > 0)
            throw InfeasibleError("every populated bin is infeasible: outdoor "
                                  "temperatures at or above all room setpoints");
        throw DataError("demand model has no populated bin inside the output range");
    }
    if (!reaches(upto, Stage::heatcurve)) return r;

    // per-heater requirements, aggregated to one curve per cluster
    double max_t_in = r.building.rooms.empty() ? 20.0 : r.building.rooms[0].t_in_C;
    for (const Room& room : r.building.rooms) max_t_in = std::max(max_t_in, room.t_in_C);
    r.floor_t_sup_C = max_t_in + 1.0;

    r.heater_states.reserve(r.load_cells.size());
    for (const RoomLoads& cell : r.load_cells) {
        std::vector<HeaterState> states = heater_requirements(cell, r.building);
        Heatcurve& curve = r.raw_curves[cell.cluster];
        curve.cluster = cell.cluster;
        curve.points.push_back(aggregate(states, cell.t_out_C));
        r.heater_states.push_back(std::move(states));
    }
    for (int c = 0; c < r.demand_model.n_cluster(); ++c)
        if (!r.raw_curves.count(c))
            throw DataError("cluster " + std::to_string(c) +
                            " has no computed bins inside the output range");

    PostprocessOptions opt;
    opt.range_min_C = cfg.range_min_C;
    opt.range_max_C = cfg.range_max_C;
    opt.bin_width_K = cfg.bin_width_K;
    opt.sg_window = cfg.sg_window;
    opt.sg_polyorder = cfg.sg_polyorder;
    opt.safety_offset_K = cfg.safety_offset_K;
    opt.floor_t_sup_C = r.floor_t_sup_C;
    for (auto& [c, raw] : r.raw_curves) {
        // the assumption must hold against the curve as computed, pre-smoothing
        r.hallway_checks.push_back(verify_hallway_assumption(raw, cfg.hallway_assumed_t_sup_C));
        r.hallway_checks.back().cluster = c;
        if (!r.hallway_checks.back().pass)
            r.warnings.push_back("cluster " + std::to_string(c) +
                                 ": hallway supply assumption exceeds the curve minimum");
        std::vector<std::string> post_warnings;
        r.final_curves[c] = postprocess(raw, opt, &post_warnings);
        for (const auto& w : post_warnings)
            r.warnings.push_back("cluster " + std::to_string(c) + ": " + w);
    }
    if (!reaches(upto, Stage::report)) return r;

    run_evaluate_branch(cfg, r, /*require_valves=*/false);
    return r;
}

std::vector<std::string> write_artifacts(const PipelineResult& r, const RunConfig& cfg,
                                         Stage upto, const std::string& out_dir) {
    // generate every byte first so an error can never leave partial output
    std::vector<std::pair<std::string, std::string>> files;
    if (reaches(upto, Stage::ingest)) {
        files.emplace_back("alignment_report.json", align_report_to_json(r.align_report));
        files.emplace_back("aligned.csv", aligned_to_csv(r.aligned));
    }
    if (reaches(upto, Stage::cluster)) {
        files.emplace_back("cluster_model.json", cluster_model_to_json(r.cluster_model));
        files.emplace_back("interval_quantiles.csv", interval_quantiles_csv(r));
        if (!r.elbow.empty()) files.emplace_back("elbow.csv", elbow_csv(r));
    }
    if (reaches(upto, Stage::demand)) {
        files.emplace_back("demand_model.json", demand_model_to_json(r.demand_model));
        files.emplace_back("demand_bins.csv", demand_bins_to_csv(r.demand_model));
    }
    if (reaches(upto, Stage::loads))
        files.emplace_back("room_loads.csv", room_loads_to_csv(r.load_cells, r.building));
    if (reaches(upto, Stage::heatcurve)) {
        files.emplace_back("heater_requirements.csv", heater_requirements_csv(r));
        for (const auto& [c, curve] : r.final_curves) {
            const std::string tag = "_c" + std::to_string(c);
            files.emplace_back("heatcurve" + tag + ".csv", heatcurve_to_csv(curve));
            files.emplace_back("heatcurve" + tag + "_computed.csv",
                               heatcurve_to_csv(r.raw_curves.at(c)));
            files.emplace_back("automation" + tag + ".csv", automation_to_csv(curve));
        }
        files.emplace_back("critical_heaters.json", critical_heaters_json(r));
        files.emplace_back("hallway_check.json", hallway_checks_json(r));
    }
    if (reaches(upto, Stage::evaluate)) {
        if (r.window_match_done)
            files.emplace_back("window_match.json", window_match_to_json(r.window_match));
        if (r.valve_summary_done) {
            files.emplace_back("valve_stats.json", valve_stats_to_json(r.valve_summary));
            files.emplace_back("valve_means.csv", valve_means_to_csv(r.valve_summary));
        }
    }
    if (upto == Stage::report) files.emplace_back("report.json", report_json(r, cfg));

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + out_dir + ": " + ec.message());

    std::vector<std::string> written;
    for (const auto& [name, content] : files) {
        const fs::path final_path = fs::path(out_dir) / name;
        const fs::path tmp_path = fs::path(out_dir) / (name + ".tmp");
        {
            std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
            if (!out) throw ConfigError("cannot write " + tmp_path.string());
            out << content;
            if (!out) throw ConfigError("short write to " + tmp_path.string());
        }
        fs::rename(tmp_path, final_path, ec);
        if (ec)
            throw ConfigError("cannot move " + tmp_path.string() + " into place: " +
                              ec.message());
        written.push_back(name);
    }
    return written;
}

} // namespace heatcurve
