#include "heatcurve/loads.hpp"

#include <cmath>
#include <numeric>

#include "heatcurve/errors.hpp"
#include "heatcurve/radiator.hpp"
#include "heatcurve/textio.hpp"

namespace heatcurve {

double RoomLoads::total_W() const {
    return std::accumulate(q_mod_W.begin(), q_mod_W.end(), 0.0);
}

RoomLoads solve_room_loads_rel(const BuildingModel& building,
                               const std::array<double, kNumBoundaryKinds>& rel_u,
                               double q_mod_W, double t_out_C) {
    if (q_mod_W < 0.0) throw DataError("solve_room_loads: negative building demand");

    RoomLoads out;
    out.t_out_C = t_out_C;
    out.q_mod_W.resize(building.rooms.size());

    std::vector<double> w(building.rooms.size(), 0.0);
    double w_total = 0.0;
    for (std::size_t i = 0; i < building.rooms.size(); ++i) {
        const Room& room = building.rooms[i];
        const double dt = room.t_in_C - t_out_C;
        if (dt <= 0.0) continue; // no equation: load pinned at zero
        double ua = 0.0;
        for (const auto& b : room.boundaries)
            ua += b.area_m2 * rel_u[static_cast<int>(b.kind)];
        w[i] = ua * dt;
        w_total += w[i];
    }

    if (q_mod_W == 0.0) return out; // all zeros, solved_u all zero

    if (w_total <= 0.0)
        throw InfeasibleError(
            "room-load allocation infeasible at t_out " + num_to_string(t_out_C) +
            ": demand " + num_to_string(q_mod_W) +
            " W but every room is at or below the outdoor temperature");

    const double scale = q_mod_W / w_total;
    for (std::size_t i = 0; i < building.rooms.size(); ++i)
        out.q_mod_W[i] = w[i] * scale;
    for (int k = 0; k < kNumBoundaryKinds; ++k) out.solved_u[k] = scale * rel_u[k];
    return out;
}

RoomLoads solve_room_loads(const BuildingModel& building,
                           const std::array<double, 3>& ratios, double q_mod_W,
                           double t_out_C) {
    return solve_room_loads_rel(building, {ratios[0], 1.0, ratios[1], ratios[2]},
                                q_mod_W, t_out_C);
}

double hallway_capacity(const Room& hallway, double assumed_t_sup_C) {
    double capacity = 0.0;
    for (const auto& h : hallway.heaters) {
        if (assumed_t_sup_C <= hallway.t_in_C) continue; // no driving difference
        const double dt_nom = h.t_sup_nom_C - h.t_ret_nom_C;
        const double frac =
            (assumed_t_sup_C - hallway.t_in_C) / (h.t_sup_nom_C - hallway.t_in_C);
        const double dt_used = frac < 1.0 ? dt_nom * frac : dt_nom;
        const double lmtd_nom = lmtd(h.t_sup_nom_C, h.t_ret_nom_C, hallway.t_in_C);
        const double lmtd_assumed =
            lmtd(assumed_t_sup_C, assumed_t_sup_C - dt_used, hallway.t_in_C);
        capacity += h.q_nom_W * std::pow(lmtd_assumed / lmtd_nom, h.exponent_n);
    }
    return capacity;
}

RoomLoads partition_hallway_residual(RoomLoads loads, const BuildingModel& building,
                                     double assumed_t_sup_C) {
    for (std::size_t i = 0; i < building.rooms.size(); ++i) {
        const Room& hall = building.rooms[i];
        if (hall.room_type != RoomType::hallway) continue;

        const double capacity = hallway_capacity(hall, assumed_t_sup_C);
        const double residual = std::max(0.0, loads.q_mod_W[i] - capacity);
        loads.hallway_residual_W[hall.id] = residual;
        if (residual <= 0.0) continue;

        double shared_total = 0.0;
        for (const auto& room : building.rooms) {
            const auto it = room.hallway_shared_wall_m2.find(hall.id);
            if (it != room.hallway_shared_wall_m2.end()) shared_total += it->second;
        }
        if (shared_total <= 0.0)
            throw ConfigError("hallway '" + hall.id + "' has a residual of " +
                              num_to_string(residual) +
                              " W but no room declares a shared wall with it");

        loads.q_mod_W[i] -= residual;
        for (std::size_t j = 0; j < building.rooms.size(); ++j) {
            const auto it = building.rooms[j].hallway_shared_wall_m2.find(hall.id);
            if (it == building.rooms[j].hallway_shared_wall_m2.end()) continue;
            loads.q_mod_W[j] += residual * (it->second / shared_total);
        }
    }
    return loads;
}

std::string room_loads_to_csv(const std::vector<RoomLoads>& cells,
                              const BuildingModel& building) {
    std::string out = "cluster,t_out_C,room_id,q_mod_W\n";
    for (const auto& cell : cells) {
        for (std::size_t i = 0; i < building.rooms.size(); ++i) {
            out += std::to_string(cell.cluster);
            out += ',';
            out += num_to_string(cell.t_out_C);
            out += ',';
            out += building.rooms[i].id;
            out += ',';
            out += num_to_string(cell.q_mod_W[i]);
            out += '\n';
        }
    }
    return out;
}

} // namespace heatcurve
