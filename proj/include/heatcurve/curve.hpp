#pragma once

#include <string>
#include <vector>

#include "heatcurve/radiator.hpp"

namespace heatcurve {

enum class PointProvenance { computed, front_filled, back_filled, smoothed };
const char* to_string(PointProvenance p);

struct CurvePoint {
    double t_out_C = 0.0;
    double t_sup_C = 0.0;
    PointProvenance provenance = PointProvenance::computed;
    std::string limiting_heater; // empty for filled-in bins
};

struct Heatcurve {
    int cluster = 0;
    double safety_offset_K = 0.0;
    std::vector<CurvePoint> points; // ascending t_out_C
};

// Building requirement at one bin: the hottest per-heater requirement wins;
// equal temperatures resolve to the lexicographically smallest heater id.
CurvePoint aggregate(const std::vector<HeaterState>& states, double t_out_C);

struct HallwayCheck {
    int cluster = 0;
    bool pass = true;
    double assumed_t_sup_C = 0.0;
    double curve_min_C = 0.0;           // min over computed points
    std::vector<double> violating_bins; // computed bins below the assumption
};

// The hallway treatment assumed its heaters stay below the building curve;
// holds iff assumed <= every computed setpoint.
HallwayCheck verify_hallway_assumption(const Heatcurve& curve, double assumed_t_sup_C);

// Least-squares polynomial smoothing; window truncates at the edges, where
// the fit simply uses fewer points. Exact on polynomials of degree <= polyorder.
std::vector<double> savitzky_golay(const std::vector<double>& y, int window,
                                   int polyorder);

struct PostprocessOptions {
    double range_min_C = -15.0;
    double range_max_C = 20.0;
    double bin_width_K = 1.0;
    int sg_window = 7;
    int sg_polyorder = 2;
    double safety_offset_K = 0.0;
    double floor_t_sup_C = 21.0; // physical floor, typically max room t_in + 1
};

// Dense curve over the output range: cold bins below the data hold the
// coldest computed value, warm bins hold the warmest, interior gaps hold the
// nearest computed value on the cold side; then smoothing (skipped with a
// warning when computed points are fewer than the window), then the safety
// offset, then the floor clamp.
Heatcurve postprocess(const Heatcurve& curve, const PostprocessOptions& opt,
                      std::vector<std::string>* warnings = nullptr);

// "cluster,t_out_C,t_sup_C,provenance,limiting_heater"
std::string heatcurve_to_csv(const Heatcurve& curve);
// flat "t_out_C,t_sup_C" table for the building automation
std::string automation_to_csv(const Heatcurve& curve);

} // namespace heatcurve
