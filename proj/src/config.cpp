#include "heatcurve/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "heatcurve/errors.hpp"

namespace heatcurve {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& why) {
    throw ConfigError("config." + key + ": " + why);
}

void check_keys(const json& obj, const std::string& prefix,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) fail(prefix.empty() ? key : prefix + "." + key, "unknown field");
    }
}

double get_number(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) fail(key, "must be a number");
    const double v = obj[key].get<double>();
    if (!std::isfinite(v)) fail(key, "must be finite");
    return v;
}

int get_int(const json& obj, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer()) fail(key, "must be an integer");
    return obj[key].get<int>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback = "") {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_string()) fail(key, "must be a string");
    return obj[key].get<std::string>();
}

std::string resolve(const std::string& path, const std::string& base_dir) {
    if (path.empty() || base_dir.empty()) return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

} // namespace

RunConfig load_run_config(const std::string& json_text, const std::string& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    check_keys(doc, "",
               {"demand_csv", "weather_csv", "building_json", "u_values_json", "valves_csv",
                "out_dir", "n_cluster", "seed", "bin_width_K", "min_samples",
                "hallway_assumed_t_sup_C", "exponent_n", "safety_offset_K", "output_range_C",
                "sg_window", "sg_polyorder", "utc_offset_min", "clamp_negative_demand",
                "evaluate"});

    RunConfig cfg;
    cfg.demand_csv = resolve(get_string(doc, "demand_csv"), base_dir);
    cfg.weather_csv = resolve(get_string(doc, "weather_csv"), base_dir);
    cfg.building_json = resolve(get_string(doc, "building_json"), base_dir);
    cfg.u_values_json = resolve(get_string(doc, "u_values_json"), base_dir);
    cfg.valves_csv = resolve(get_string(doc, "valves_csv"), base_dir);
    cfg.out_dir = get_string(doc, "out_dir", cfg.out_dir);

    cfg.n_cluster = get_int(doc, "n_cluster", cfg.n_cluster);
    if (doc.contains("seed")) {
        if (doc["seed"].is_number_unsigned()) {
            cfg.seed = doc["seed"].get<std::uint64_t>();
        } else if (doc["seed"].is_number_integer()) {
            const auto s = doc["seed"].get<std::int64_t>();
            if (s < 0) fail("seed", "must be a non-negative integer");
            cfg.seed = static_cast<std::uint64_t>(s);
        } else {
            fail("seed", "must be a non-negative integer");
        }
    }
    cfg.bin_width_K = get_number(doc, "bin_width_K", cfg.bin_width_K);
    cfg.min_samples = get_int(doc, "min_samples", cfg.min_samples);
    cfg.hallway_assumed_t_sup_C =
        get_number(doc, "hallway_assumed_t_sup_C", cfg.hallway_assumed_t_sup_C);
    cfg.exponent_n = get_number(doc, "exponent_n", cfg.exponent_n);
    cfg.safety_offset_K = get_number(doc, "safety_offset_K", cfg.safety_offset_K);
    if (doc.contains("output_range_C")) {
        const auto& r = doc["output_range_C"];
        if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
            fail("output_range_C", "must be [min, max]");
        cfg.range_min_C = r[0].get<double>();
        cfg.range_max_C = r[1].get<double>();
    }
    cfg.sg_window = get_int(doc, "sg_window", cfg.sg_window);
    cfg.sg_polyorder = get_int(doc, "sg_polyorder", cfg.sg_polyorder);
    cfg.utc_offset_min = get_int(doc, "utc_offset_min", cfg.utc_offset_min);
    if (doc.contains("clamp_negative_demand")) {
        if (!doc["clamp_negative_demand"].is_boolean())
            fail("clamp_negative_demand", "must be a boolean");
        cfg.clamp_negative_demand = doc["clamp_negative_demand"].get<bool>();
    }

    if (doc.contains("evaluate")) {
        const auto& ev = doc["evaluate"];
        if (!ev.is_object()) fail("evaluate", "must be an object");
        check_keys(ev, "evaluate",
                   {"exp_weather_csv", "exp_start", "exp_end", "ref_start", "ref_end"});
        cfg.evaluate.exp_weather_csv = resolve(get_string(ev, "exp_weather_csv"), base_dir);
        cfg.evaluate.exp_start = get_string(ev, "exp_start");
        cfg.evaluate.exp_end = get_string(ev, "exp_end");
        cfg.evaluate.ref_start = get_string(ev, "ref_start");
        cfg.evaluate.ref_end = get_string(ev, "ref_end");
    }

    // range checks mirror the owning modules so bad values fail fast
    if (cfg.n_cluster < 1) fail("n_cluster", "must be >= 1");
    if (!(cfg.bin_width_K > 0.0)) fail("bin_width_K", "must be > 0");
    if (cfg.min_samples < 1) fail("min_samples", "must be >= 1");
    if (cfg.exponent_n < 1.0 || cfg.exponent_n > 1.6)
        fail("exponent_n", "must be in [1.0, 1.6]");
    if (!(cfg.range_min_C < cfg.range_max_C))
        fail("output_range_C", "min must be below max");
    if (cfg.sg_window < 1 || cfg.sg_window % 2 == 0) fail("sg_window", "must be odd and >= 1");
    if (cfg.sg_polyorder < 0 || cfg.sg_polyorder >= cfg.sg_window)
        fail("sg_polyorder", "must be in [0, sg_window)");
    if (cfg.sg_polyorder > 7) fail("sg_polyorder", "above 7 is not supported");
    if (cfg.utc_offset_min <= -1440 || cfg.utc_offset_min >= 1440)
        fail("utc_offset_min", "must be within a day");
    return cfg;
}

RunConfig load_run_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_run_config(buf.str(), std::filesystem::path(path).parent_path().string());
}

void validate_input_paths(const RunConfig& cfg, Stage stage) {
    auto require = [](const std::string& path, const char* what) {
        if (path.empty()) throw ConfigError(std::string(what) + " is not configured");
    };
    if (stage == Stage::evaluate) {
        require(cfg.weather_csv, "weather CSV");
        require(cfg.valves_csv, "valve CSV");
    } else {
        require(cfg.demand_csv, "demand CSV");
        require(cfg.weather_csv, "weather CSV");
        if (static_cast<int>(stage) >= static_cast<int>(Stage::loads)) {
            require(cfg.building_json, "building description");
            require(cfg.u_values_json, "u-value table");
        }
    }
    auto exists = [](const std::string& path, const char* what) {
        if (!path.empty() && !std::filesystem::exists(path))
            throw ConfigError(std::string(what) + " not found: " + path);
    };
    exists(cfg.demand_csv, "demand CSV");
    exists(cfg.weather_csv, "weather CSV");
    exists(cfg.building_json, "building description");
    exists(cfg.u_values_json, "u-value table");
    exists(cfg.valves_csv, "valve CSV");
    exists(cfg.evaluate.exp_weather_csv, "experiment weather CSV");
}

std::string run_config_to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["demand_csv"] = cfg.demand_csv;
    j["weather_csv"] = cfg.weather_csv;
    j["building_json"] = cfg.building_json;
    j["u_values_json"] = cfg.u_values_json;
    if (!cfg.valves_csv.empty()) j["valves_csv"] = cfg.valves_csv;
    j["out_dir"] = cfg.out_dir;
    j["n_cluster"] = cfg.n_cluster;
    j["seed"] = cfg.seed;
    j["bin_width_K"] = cfg.bin_width_K;
    j["min_samples"] = cfg.min_samples;
    j["hallway_assumed_t_sup_C"] = cfg.hallway_assumed_t_sup_C;
    j["exponent_n"] = cfg.exponent_n;
    j["safety_offset_K"] = cfg.safety_offset_K;
    j["output_range_C"] = {cfg.range_min_C, cfg.range_max_C};
    j["sg_window"] = cfg.sg_window;
    j["sg_polyorder"] = cfg.sg_polyorder;
    j["utc_offset_min"] = cfg.utc_offset_min;
    j["clamp_negative_demand"] = cfg.clamp_negative_demand;
    if (!cfg.evaluate.exp_weather_csv.empty() || !cfg.evaluate.exp_start.empty() ||
        !cfg.evaluate.exp_end.empty() || !cfg.evaluate.ref_start.empty() ||
        !cfg.evaluate.ref_end.empty()) {
        nlohmann::ordered_json ev;
        if (!cfg.evaluate.exp_weather_csv.empty())
            ev["exp_weather_csv"] = cfg.evaluate.exp_weather_csv;
        if (!cfg.evaluate.exp_start.empty()) ev["exp_start"] = cfg.evaluate.exp_start;
        if (!cfg.evaluate.exp_end.empty()) ev["exp_end"] = cfg.evaluate.exp_end;
        if (!cfg.evaluate.ref_start.empty()) ev["ref_start"] = cfg.evaluate.ref_start;
        if (!cfg.evaluate.ref_end.empty()) ev["ref_end"] = cfg.evaluate.ref_end;
        j["evaluate"] = ev;
    }
    return j.dump(2) + "\n";
}

} // namespace heatcurve
