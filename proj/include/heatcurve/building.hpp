#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

namespace heatcurve {

enum class BoundaryKind { wall = 0, window = 1, roof = 2, floor_slab = 3 };
inline constexpr int kNumBoundaryKinds = 4;

enum class RoomType { standard, bathroom, hallway, staircase };

const char* to_string(BoundaryKind k);
const char* to_string(RoomType t);

struct Boundary {
    BoundaryKind kind = BoundaryKind::wall;
    double area_m2 = 0.0;
};

struct Heater {
    std::string id;
    double q_nom_W = 0.0;
    double t_sup_nom_C = 0.0;
    double t_ret_nom_C = 0.0;
    double exponent_n = 1.3;
};

struct Room {
    std::string id;
    RoomType room_type = RoomType::standard;
    double t_in_C = 20.0;
    std::vector<Boundary> boundaries;
    std::vector<Heater> heaters;
    // hallway id -> shared wall area, for residual-load partitioning
    std::map<std::string, double> hallway_shared_wall_m2;
};

struct BuildingModel {
    std::string building_id;
    std::string construction_type;
    std::vector<Room> rooms;

    const Room* find_room(const std::string& id) const;
};

struct BuildingDefaults {
    double t_in_standard_C = 20.0;
    double t_in_bathroom_C = 18.0;
    double exponent_n = 1.3;
};

// Validates the whole document; error messages carry the path of the
// offending field (e.g. "rooms[2].heaters[0].q_nom_W").
BuildingModel load_building(const std::string& json_text,
                            const BuildingDefaults& defaults = {});
BuildingModel load_building_file(const std::string& path,
                                 const BuildingDefaults& defaults = {});
std::string building_to_json(const BuildingModel& b);

// Typical U-values for one construction type; only ratios ever matter.
struct URatioTable {
    double u_wall = 0.0;
    double u_window = 0.0;
    double u_roof = 0.0;
    double u_floor_slab = 0.0;
};

// (u_wall/u_window, u_roof/u_window, u_floor_slab/u_window)
std::array<double, 3> u_ratios(const URatioTable& t);

// Relative U per boundary kind, anchor kind scaled to exactly 1.
std::array<double, kNumBoundaryKinds> relative_u(
    const URatioTable& t, BoundaryKind anchor = BoundaryKind::window);

// File is a JSON map: construction type -> {u_wall, u_window, u_roof, u_floor_slab}.
URatioTable load_u_table(const std::string& json_text,
                         const std::string& construction_type);
URatioTable load_u_table_file(const std::string& path,
                              const std::string& construction_type);

} // namespace heatcurve
