#include "heatcurve/radiator.hpp"

#include <cmath>

#include "heatcurve/errors.hpp"
#include "heatcurve/textio.hpp"

namespace heatcurve {

double lmtd(double t_sup_C, double t_ret_C, double t_in_C) {
    if (!(t_ret_C > t_in_C))
        throw DataError("lmtd: return temperature " + num_to_string(t_ret_C) +
                        " must exceed room temperature " + num_to_string(t_in_C));
    if (t_sup_C < t_ret_C)
        throw DataError("lmtd: supply temperature " + num_to_string(t_sup_C) +
                        " below return temperature " + num_to_string(t_ret_C));
    const double dt = t_sup_C - t_ret_C;
    if (dt < 1e-9) return (t_sup_C + t_ret_C) / 2.0 - t_in_C;
    return dt / std::log((t_sup_C - t_in_C) / (t_ret_C - t_in_C));
}

double required_lmtd(double q_mod_W, double q_nom_W, double exponent_n,
                     double lmtd_nom_K) {
    if (!(q_nom_W > 0.0)) throw ConfigError("required_lmtd: q_nom must be > 0");
    if (q_mod_W < 0.0) throw DataError("required_lmtd: negative load");
    if (q_mod_W == 0.0) return 0.0;
    return std::pow(q_mod_W / q_nom_W, 1.0 / exponent_n) * lmtd_nom_K;
}

double invert_supply_temp(double lmtd_required_K, double delta_t_K, double t_in_C) {
    if (!(delta_t_K > 0.0)) throw ConfigError("invert_supply_temp: delta_t must be > 0");
    if (lmtd_required_K < 0.0)
        throw DataError("invert_supply_temp: negative required LMTD");
    if (lmtd_required_K == 0.0) return t_in_C;
    if (lmtd_required_K >= 1e6 * delta_t_K)
        return t_in_C + lmtd_required_K + delta_t_K / 2.0;
    return t_in_C + delta_t_K / (-std::expm1(-delta_t_K / lmtd_required_K));
}

std::vector<HeaterState> heater_requirements(const RoomLoads& loads,
                                             const BuildingModel& building,
                                             HeaterSplit split) {
    std::vector<HeaterState> out;
    for (std::size_t ri = 0; ri < building.rooms.size(); ++ri) {
        const Room& room = building.rooms[ri];
        if (room.room_type == RoomType::hallway) continue;
        const double q_room = loads.q_mod_W[ri];
        if (room.heaters.empty()) {
            if (q_room > 0.0)
                throw ConfigError("room '" + room.id + "' carries " +
                                  num_to_string(q_room) + " W but has no heater");
            continue;
        }

        double q_nom_total = 0.0;
        for (const auto& h : room.heaters) q_nom_total += h.q_nom_W;

        for (const auto& h : room.heaters) {
            const double share = split == HeaterSplit::equal
                                     ? 1.0 / static_cast<double>(room.heaters.size())
                                     : h.q_nom_W / q_nom_total;
            HeaterState s;
            s.heater_id = h.id;
            s.room_id = room.id;
            s.q_required_W = q_room * share;
            s.lmtd_nom_K = lmtd(h.t_sup_nom_C, h.t_ret_nom_C, room.t_in_C);
            s.delta_t_K = h.t_sup_nom_C - h.t_ret_nom_C;
            s.lmtd_required_K =
                required_lmtd(s.q_required_W, h.q_nom_W, h.exponent_n, s.lmtd_nom_K);
            s.t_sup_required_C = invert_supply_temp(s.lmtd_required_K, s.delta_t_K,
                                                    room.t_in_C);
            s.over_nominal = s.q_required_W > h.q_nom_W;
            out.push_back(std::move(s));
        }
    }
    return out;
}

} // namespace heatcurve
