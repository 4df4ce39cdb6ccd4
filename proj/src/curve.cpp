#include "heatcurve/curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "heatcurve/errors.hpp"
#include "heatcurve/textio.hpp"

namespace heatcurve {

const char* to_string(PointProvenance p) {
    switch (p) {
        case PointProvenance::computed: return "computed";
        case PointProvenance::front_filled: return "front_filled";
        case PointProvenance::back_filled: return "back_filled";
        case PointProvenance::smoothed: return "smoothed";
    }
    return "?";
}

CurvePoint aggregate(const std::vector<HeaterState>& states, double t_out_C) {
    if (states.empty())
        throw ConfigError("aggregate: no heater states at t_out " + num_to_string(t_out_C));
    const HeaterState* best = &states[0];
    for (const auto& s : states) {
        if (s.t_sup_required_C > best->t_sup_required_C ||
            (s.t_sup_required_C == best->t_sup_required_C && s.heater_id < best->heater_id))
            best = &s;
    }
    CurvePoint p;
    p.t_out_C = t_out_C;
    p.t_sup_C = best->t_sup_required_C;
    p.provenance = PointProvenance::computed;
    p.limiting_heater = best->heater_id;
    return p;
}

HallwayCheck verify_hallway_assumption(const Heatcurve& curve, double assumed_t_sup_C) {
    HallwayCheck check;
    check.cluster = curve.cluster;
    check.assumed_t_sup_C = assumed_t_sup_C;
    bool any = false;
    for (const auto& p : curve.points) {
        if (p.provenance != PointProvenance::computed) continue;
        if (!any || p.t_sup_C < check.curve_min_C) check.curve_min_C = p.t_sup_C;
        any = true;
        if (p.t_sup_C < assumed_t_sup_C) check.violating_bins.push_back(p.t_out_C);
    }
    check.pass = check.violating_bins.empty();
    if (!any) check.curve_min_C = assumed_t_sup_C; // vacuous pass on an empty curve
    return check;
}

std::vector<double> savitzky_golay(const std::vector<double>& y, int window,
                                   int polyorder) {
    if (window < 1 || window % 2 == 0)
        throw ConfigError("smoothing window must be odd and positive");
    if (polyorder < 0 || polyorder >= window)
        throw ConfigError("polyorder must be in [0, window)");
    if (polyorder > 7) throw ConfigError("polyorder above 7 is not supported");

    const int n = static_cast<int>(y.size());
    const int half = window / 2;
    const int terms = polyorder + 1;
    std::vector<double> out(y.size());

    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - half);
        const int hi = std::min(n - 1, i + half);
        // normal equations for the LS fit of a degree-p polynomial in (j - i)
        double m[8][9] = {};
        for (int j = lo; j <= hi; ++j) {
            const double x = static_cast<double>(j - i);
            double xa = 1.0;
            std::array<double, 16> powers{};
            for (int a = 0; a < 2 * terms - 1; ++a) {
                powers[static_cast<std::size_t>(a)] = xa;
                xa *= x;
            }
            for (int a = 0; a < terms; ++a) {
                for (int bidx = 0; bidx < terms; ++bidx)
                    m[a][bidx] += powers[static_cast<std::size_t>(a + bidx)];
                m[a][terms] += powers[static_cast<std::size_t>(a)] * y[static_cast<std::size_t>(j)];
            }
        }
        // Gaussian elimination with partial pivoting on the (terms x terms) system
        for (int col = 0; col < terms; ++col) {
            int piv = col;
            for (int row = col + 1; row < terms; ++row)
                if (std::abs(m[row][col]) > std::abs(m[piv][col])) piv = row;
            for (int c2 = 0; c2 <= terms; ++c2) std::swap(m[col][c2], m[piv][c2]);
            for (int row = 0; row < terms; ++row) {
                if (row == col || m[row][col] == 0.0) continue;
                const double f = m[row][col] / m[col][col];
                for (int c2 = col; c2 <= terms; ++c2) m[row][c2] -= f * m[col][c2];
            }
        }
        out[static_cast<std::size_t>(i)] = m[0][terms] / m[0][0]; // value at x = 0
    }
    return out;
}

Heatcurve postprocess(const Heatcurve& curve, const PostprocessOptions& opt,
                      std::vector<std::string>* warnings) {
    if (opt.bin_width_K <= 0.0) throw ConfigError("bin_width_K must be > 0");
    if (opt.range_min_C >= opt.range_max_C)
        throw ConfigError("output range must satisfy min < max");
    if (opt.sg_window < 1 || opt.sg_window % 2 == 0 ||
        opt.sg_polyorder >= opt.sg_window || opt.sg_polyorder < 0)
        throw ConfigError("smoothing window must be odd and exceed the polyorder");

    std::map<long, const CurvePoint*> computed;
    for (const auto& p : curve.points) {
        if (p.provenance != PointProvenance::computed) continue;
        const long idx = std::lround(p.t_out_C / opt.bin_width_K);
        computed[idx] = &p;
    }
    if (computed.empty())
        throw DataError("cannot postprocess a curve with no computed points");

    const long i_min = std::lround(opt.range_min_C / opt.bin_width_K);
    const long i_max = std::lround(opt.range_max_C / opt.bin_width_K);
    if (warnings)
        for (const auto& [idx, p] : computed)
            if (idx < i_min || idx > i_max)
                warnings->push_back("computed bin " + num_to_string(p->t_out_C) +
                                    " lies outside the output range and was dropped");

    Heatcurve out;
    out.cluster = curve.cluster;
    out.safety_offset_K = opt.safety_offset_K;

    int n_computed = 0;
    for (long idx = i_min; idx <= i_max; ++idx) {
        CurvePoint p;
        p.t_out_C = static_cast<double>(idx) * opt.bin_width_K;
        const auto exact = computed.find(idx);
        if (exact != computed.end()) {
            p.t_sup_C = exact->second->t_sup_C;
            p.provenance = PointProvenance::computed;
            p.limiting_heater = exact->second->limiting_heater;
            ++n_computed;
        } else {
            // nearest computed bin on the cold side; below all data the
            // coldest computed bin extends downward instead
            auto after = computed.upper_bound(idx);
            if (after == computed.begin()) {
                p.t_sup_C = after->second->t_sup_C;
                p.provenance = PointProvenance::back_filled;
            } else {
                p.t_sup_C = std::prev(after)->second->t_sup_C;
                p.provenance = PointProvenance::front_filled;
            }
        }
        out.points.push_back(std::move(p));
    }

    if (n_computed >= opt.sg_window) {
        std::vector<double> vals(out.points.size());
        for (std::size_t i = 0; i < out.points.size(); ++i) vals[i] = out.points[i].t_sup_C;
        const std::vector<double> smooth = savitzky_golay(vals, opt.sg_window, opt.sg_polyorder);
        for (std::size_t i = 0; i < out.points.size(); ++i) {
            // below the tolerance the filter is the identity: keep the exact
            // value so flat filled stretches stay bit-stable
            if (std::abs(smooth[i] - out.points[i].t_sup_C) > 1e-12) {
                out.points[i].provenance = PointProvenance::smoothed;
                out.points[i].t_sup_C = smooth[i];
            }
        }
    } else if (warnings) {
        warnings->push_back("smoothing skipped: " + std::to_string(n_computed) +
                            " computed points are fewer than the window " +
                            std::to_string(opt.sg_window));
    }

    for (auto& p : out.points) {
        p.t_sup_C += opt.safety_offset_K;
        p.t_sup_C = std::max(p.t_sup_C, opt.floor_t_sup_C);
    }
    return out;
}

std::string heatcurve_to_csv(const Heatcurve& curve) {
    std::string out = "cluster,t_out_C,t_sup_C,provenance,limiting_heater\n";
    for (const auto& p : curve.points) {
        out += std::to_string(curve.cluster);
        out += ',';
        out += num_to_string(p.t_out_C);
        out += ',';
        out += num_to_string(p.t_sup_C);
        out += ',';
        out += to_string(p.provenance);
        out += ',';
        out += p.limiting_heater;
        out += '\n';
    }
    return out;
}

std::string automation_to_csv(const Heatcurve& curve) {
    std::string out = "t_out_C,t_sup_C\n";
    for (const auto& p : curve.points) {
        out += num_to_string(p.t_out_C);
        out += ',';
        out += num_to_string(p.t_sup_C);
        out += '\n';
    }
    return out;
}

} // namespace heatcurve
