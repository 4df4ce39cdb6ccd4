#include "heatcurve/building.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "heatcurve/errors.hpp"

namespace heatcurve {

using nlohmann::json;

const char* to_string(BoundaryKind k) {
    switch (k) {
        case BoundaryKind::wall: return "wall";
        case BoundaryKind::window: return "window";
        case BoundaryKind::roof: return "roof";
        case BoundaryKind::floor_slab: return "floor_slab";
    }
    return "?";
}

const char* to_string(RoomType t) {
    switch (t) {
        case RoomType::standard: return "standard";
        case RoomType::bathroom: return "bathroom";
        case RoomType::hallway: return "hallway";
        case RoomType::staircase: return "staircase";
    }
    return "?";
}

const Room* BuildingModel::find_room(const std::string& id) const {
    for (const auto& r : rooms)
        if (r.id == id) return &r;
    return nullptr;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) {
    throw DataError(path + ": " + why);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) fail(path + "." + key, "unknown field");
    }
}

double get_number(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail(path + "." + key, "missing");
    if (!obj[key].is_number()) fail(path + "." + key, "must be a number");
    const double v = obj[key].get<double>();
    if (!std::isfinite(v)) fail(path + "." + key, "must be finite");
    return v;
}

std::string get_string(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail(path + "." + key, "missing");
    if (!obj[key].is_string()) fail(path + "." + key, "must be a string");
    std::string s = obj[key].get<std::string>();
    if (s.empty()) fail(path + "." + key, "must be non-empty");
    return s;
}

BoundaryKind parse_boundary_kind(const std::string& s, const std::string& path) {
    if (s == "wall") return BoundaryKind::wall;
    if (s == "window") return BoundaryKind::window;
    if (s == "roof") return BoundaryKind::roof;
    if (s == "floor_slab") return BoundaryKind::floor_slab;
    fail(path, "unknown boundary kind '" + s + "' (wall|window|roof|floor_slab)");
}

RoomType parse_room_type(const std::string& s, const std::string& path) {
    if (s == "standard") return RoomType::standard;
    if (s == "bathroom") return RoomType::bathroom;
    if (s == "hallway") return RoomType::hallway;
    if (s == "staircase") return RoomType::staircase;
    fail(path, "unknown room type '" + s + "' (standard|bathroom|hallway|staircase)");
}

} // namespace

BuildingModel load_building(const std::string& json_text, const BuildingDefaults& defaults) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw DataError(std::string("building document: ") + e.what());
    }
    if (!doc.is_object()) fail("building document", "must be a JSON object");
    check_keys(doc, "building", {"building_id", "construction_type", "rooms"});

    BuildingModel b;
    b.building_id = get_string(doc, "building", "building_id");
    b.construction_type = get_string(doc, "building", "construction_type");
    if (!doc.contains("rooms") || !doc["rooms"].is_array() || doc["rooms"].empty())
        fail("building.rooms", "must be a non-empty array");

    std::set<std::string> room_ids;
    std::set<std::string> heater_ids;
    for (std::size_t ri = 0; ri < doc["rooms"].size(); ++ri) {
        const json& jr = doc["rooms"][ri];
        const std::string rp = "rooms[" + std::to_string(ri) + "]";
        if (!jr.is_object()) fail(rp, "must be an object");
        check_keys(jr, rp, {"id", "room_type", "t_in_C", "boundaries", "heaters",
                            "hallway_shared_wall_m2"});

        Room room;
        room.id = get_string(jr, rp, "id");
        if (!room_ids.insert(room.id).second) fail(rp + ".id", "duplicate room id '" + room.id + "'");
        room.room_type = jr.contains("room_type")
                             ? parse_room_type(get_string(jr, rp, "room_type"), rp + ".room_type")
                             : RoomType::standard;
        room.t_in_C = room.room_type == RoomType::bathroom ? defaults.t_in_bathroom_C
                                                           : defaults.t_in_standard_C;
        if (jr.contains("t_in_C")) room.t_in_C = get_number(jr, rp, "t_in_C");

        if (jr.contains("boundaries")) {
            if (!jr["boundaries"].is_array()) fail(rp + ".boundaries", "must be an array");
            for (std::size_t bi = 0; bi < jr["boundaries"].size(); ++bi) {
                const json& jb = jr["boundaries"][bi];
                const std::string bp = rp + ".boundaries[" + std::to_string(bi) + "]";
                if (!jb.is_object()) fail(bp, "must be an object");
                check_keys(jb, bp, {"kind", "area_m2"});
                Boundary bd;
                bd.kind = parse_boundary_kind(get_string(jb, bp, "kind"), bp + ".kind");
                bd.area_m2 = get_number(jb, bp, "area_m2");
                if (bd.area_m2 <= 0.0) fail(bp + ".area_m2", "must be > 0");
                room.boundaries.push_back(bd);
            }
        }

        if (jr.contains("heaters")) {
            if (!jr["heaters"].is_array()) fail(rp + ".heaters", "must be an array");
            for (std::size_t hi = 0; hi < jr["heaters"].size(); ++hi) {
                const json& jh = jr["heaters"][hi];
                const std::string hp = rp + ".heaters[" + std::to_string(hi) + "]";
                if (!jh.is_object()) fail(hp, "must be an object");
                check_keys(jh, hp, {"id", "q_nom_W", "t_sup_nom_C", "t_ret_nom_C", "exponent_n"});
                Heater h;
                h.id = get_string(jh, hp, "id");
                if (!heater_ids.insert(h.id).second)
                    fail(hp + ".id", "duplicate heater id '" + h.id + "'");
                h.q_nom_W = get_number(jh, hp, "q_nom_W");
                if (h.q_nom_W <= 0.0) fail(hp + ".q_nom_W", "must be > 0");
                h.t_sup_nom_C = get_number(jh, hp, "t_sup_nom_C");
                h.t_ret_nom_C = get_number(jh, hp, "t_ret_nom_C");
                h.exponent_n = jh.contains("exponent_n") ? get_number(jh, hp, "exponent_n")
                                                         : defaults.exponent_n;
                if (!(h.t_sup_nom_C > h.t_ret_nom_C))
                    fail(hp + ".t_sup_nom_C", "nominal supply must exceed nominal return");
                if (!(h.t_ret_nom_C > room.t_in_C))
                    fail(hp + ".t_ret_nom_C",
                         "nominal return must exceed the room temperature " +
                             std::to_string(room.t_in_C));
                if (h.exponent_n < 1.0 || h.exponent_n > 1.6)
                    fail(hp + ".exponent_n", "must be within [1.0, 1.6]");
                room.heaters.push_back(h);
            }
        }

        if (jr.contains("hallway_shared_wall_m2")) {
            const json& jm = jr["hallway_shared_wall_m2"];
            if (!jm.is_object()) fail(rp + ".hallway_shared_wall_m2", "must be an object");
            for (const auto& [hid, area] : jm.items()) {
                const std::string mp = rp + ".hallway_shared_wall_m2." + hid;
                if (!area.is_number() || !std::isfinite(area.get<double>()) ||
                    area.get<double>() <= 0.0)
                    fail(mp, "area must be a number > 0");
                if (hid == room.id) fail(mp, "room cannot share a wall with itself");
                room.hallway_shared_wall_m2[hid] = area.get<double>();
            }
        }

        b.rooms.push_back(std::move(room));
    }

    // hallway references can only be checked once all rooms are known
    for (std::size_t ri = 0; ri < b.rooms.size(); ++ri) {
        for (const auto& [hid, _] : b.rooms[ri].hallway_shared_wall_m2) {
            const Room* h = b.find_room(hid);
            const std::string mp =
                "rooms[" + std::to_string(ri) + "].hallway_shared_wall_m2." + hid;
            if (!h) fail(mp, "unknown hallway id");
            if (h->room_type != RoomType::hallway)
                fail(mp, "room '" + hid + "' is not a hallway");
        }
    }
    return b;
}

BuildingModel load_building_file(const std::string& path, const BuildingDefaults& defaults) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return load_building(ss.str(), defaults);
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

std::string building_to_json(const BuildingModel& b) {
    nlohmann::ordered_json doc;
    doc["building_id"] = b.building_id;
    doc["construction_type"] = b.construction_type;
    auto rooms = nlohmann::ordered_json::array();
    for (const auto& r : b.rooms) {
        nlohmann::ordered_json jr;
        jr["id"] = r.id;
        jr["room_type"] = to_string(r.room_type);
        jr["t_in_C"] = r.t_in_C;
        auto bs = nlohmann::ordered_json::array();
        for (const auto& bd : r.boundaries)
            bs.push_back({{"kind", to_string(bd.kind)}, {"area_m2", bd.area_m2}});
        jr["boundaries"] = bs;
        auto hs = nlohmann::ordered_json::array();
        for (const auto& h : r.heaters) {
            nlohmann::ordered_json jh;
            jh["id"] = h.id;
            jh["q_nom_W"] = h.q_nom_W;
            jh["t_sup_nom_C"] = h.t_sup_nom_C;
            jh["t_ret_nom_C"] = h.t_ret_nom_C;
            jh["exponent_n"] = h.exponent_n;
            hs.push_back(jh);
        }
        jr["heaters"] = hs;
        if (!r.hallway_shared_wall_m2.empty()) {
            nlohmann::ordered_json jm;
            for (const auto& [hid, area] : r.hallway_shared_wall_m2) jm[hid] = area;
            jr["hallway_shared_wall_m2"] = jm;
        }
        rooms.push_back(jr);
    }
    doc["rooms"] = rooms;
    return doc.dump(2) + "\n";
}

std::array<double, 3> u_ratios(const URatioTable& t) {
    return {t.u_wall / t.u_window, t.u_roof / t.u_window, t.u_floor_slab / t.u_window};
}

std::array<double, kNumBoundaryKinds> relative_u(const URatioTable& t, BoundaryKind anchor) {
    const std::array<double, kNumBoundaryKinds> u{t.u_wall, t.u_window, t.u_roof,
                                                  t.u_floor_slab};
    const double a = u[static_cast<int>(anchor)];
    return {u[0] / a, u[1] / a, u[2] / a, u[3] / a};
}

URatioTable load_u_table(const std::string& json_text, const std::string& construction_type) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw DataError(std::string("u-value table: ") + e.what());
    }
    if (!doc.is_object()) throw DataError("u-value table: must be a JSON object");
    if (!doc.contains(construction_type)) {
        std::string known;
        for (const auto& [key, _] : doc.items()) {
            if (!known.empty()) known += ", ";
            known += key;
        }
        throw DataError("u-value table: no entry for construction type '" +
                        construction_type + "' (have: " + known + ")");
    }
    const json& e = doc[construction_type];
    const std::string path = "u-value table." + construction_type;
    if (!e.is_object()) fail(path, "must be an object");
    check_keys(e, path, {"u_wall", "u_window", "u_roof", "u_floor_slab"});
    URatioTable t;
    t.u_wall = get_number(e, path, "u_wall");
    t.u_window = get_number(e, path, "u_window");
    t.u_roof = get_number(e, path, "u_roof");
    t.u_floor_slab = get_number(e, path, "u_floor_slab");
    for (double u : {t.u_wall, t.u_window, t.u_roof, t.u_floor_slab})
        if (u <= 0.0) fail(path, "all U-values must be > 0");
    return t;
}

URatioTable load_u_table_file(const std::string& path, const std::string& construction_type) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return load_u_table(ss.str(), construction_type);
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

} // namespace heatcurve
