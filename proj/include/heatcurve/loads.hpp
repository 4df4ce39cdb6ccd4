#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "heatcurve/building.hpp"

namespace heatcurve {

// Heat-load allocation for one (cluster, outdoor-temperature bin) cell.
struct RoomLoads {
    int cluster = 0;
    double t_out_C = 0.0;
    std::vector<double> q_mod_W; // per room, building order
    // Effective U-values (anchor ratios times the closure-implied scale);
    // only meaningful when total load > 0.
    std::array<double, kNumBoundaryKinds> solved_u{};
    std::map<std::string, double> hallway_residual_W;

    double total_W() const;
};

// Allocate the building demand q_mod to rooms in proportion to their
// envelope loss weight w_i = sum_k A_{i,k} * r_k * (t_in,i - t_out), where
// r is the relative U per boundary kind. Rooms at or below the outdoor
// temperature take exactly zero. The ratio constraints and the total-demand
// closure hold exactly by construction.
RoomLoads solve_room_loads_rel(const BuildingModel& building,
                               const std::array<double, kNumBoundaryKinds>& rel_u,
                               double q_mod_W, double t_out_C);

// Same, from the three window-anchored ratios (wall/window, roof/window,
// floor_slab/window).
RoomLoads solve_room_loads(const BuildingModel& building,
                           const std::array<double, 3>& ratios, double q_mod_W,
                           double t_out_C);

// Heat output the hallway's heaters can deliver at the assumed (reduced)
// supply temperature. The water-side spread shrinks proportionally with
// (assumed - t_in)/(t_sup_nom - t_in) below the nominal point, which makes
// the capacity exactly q_nom * ((assumed - t_in)/(t_sup_nom - t_in))^n there;
// above the nominal point the spread stays at its nominal value.
double hallway_capacity(const Room& hallway, double assumed_t_sup_C);

// Clamp every hallway's load to its capacity at the assumed supply
// temperature and push the residual to the rooms declaring a shared wall
// with it, in proportion to the shared area. Total building load is
// conserved. Single pass in building order: residual landing on another
// hallway is not re-clamped.
RoomLoads partition_hallway_residual(RoomLoads loads, const BuildingModel& building,
                                     double assumed_t_sup_C);

// CSV export: "cluster,t_out_C,room_id,q_mod_W"
std::string room_loads_to_csv(const std::vector<RoomLoads>& cells,
                              const BuildingModel& building);

} // namespace heatcurve
