#pragma once

#include <string>
#include <vector>

#include "heatcurve/building.hpp"
#include "heatcurve/loads.hpp"

namespace heatcurve {

// Logarithmic mean temperature difference between radiator water and room
// air: (t_sup - t_ret) / ln((t_sup - t_in)/(t_ret - t_in)). The removable
// singularity at t_sup == t_ret returns the arithmetic mean excess.
double lmtd(double t_sup_C, double t_ret_C, double t_in_C);

// LMTD a heater must reach to deliver q_mod, given its nominal point:
// (q_mod/q_nom)^(1/n) * lmtd_nom. The water-side temperature spread is held
// at its nominal value across load levels, so radiator output scales with
// LMTD^n alone. q_mod > q_nom is allowed (undersized heater, flagged later).
double required_lmtd(double q_mod_W, double q_nom_W, double exponent_n,
                     double lmtd_nom_K);

// Supply temperature whose LMTD (at fixed spread delta_t) equals
// lmtd_required: t_in + delta_t / (1 - exp(-delta_t/lmtd_required)),
// evaluated via expm1 to survive small spreads; for lmtd_required >=
// 1e6*delta_t the series limit t_in + lmtd + delta_t/2 avoids 0/0 noise.
double invert_supply_temp(double lmtd_required_K, double delta_t_K, double t_in_C);

struct HeaterState {
    std::string heater_id;
    std::string room_id;
    double q_required_W = 0.0;
    double lmtd_nom_K = 0.0;
    double delta_t_K = 0.0;
    double lmtd_required_K = 0.0;
    double t_sup_required_C = 0.0;
    bool over_nominal = false; // q_required > q_nom: heater undersized for the bin
};

enum class HeaterSplit { equal, capacity_weighted };

// Per-heater required supply temperatures for one (cluster, t_out) cell.
// Room load splits across the room's heaters (equally by default); hallway
// heaters are excluded — they run on the fixed low-temperature assumption.
std::vector<HeaterState> heater_requirements(const RoomLoads& loads,
                                             const BuildingModel& building,
                                             HeaterSplit split = HeaterSplit::equal);

} // namespace heatcurve
