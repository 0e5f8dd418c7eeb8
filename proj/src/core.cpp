#include "dipolechain/core.hpp"

#include <stdexcept>

namespace dipole {

std::string to_string(Preset p) {
    switch (p) {
        case Preset::HighEnergy: return "HIGH_ENERGY";
        case Preset::GroundState: return "GROUND_STATE";
        case Preset::Supp: return "SUPP";
        case Preset::Custom: return "CUSTOM";
    }
    return "?";
}

Preset preset_from_string(const std::string& name) {
    if (name == "HIGH_ENERGY") return Preset::HighEnergy;
    if (name == "GROUND_STATE") return Preset::GroundState;
    if (name == "SUPP") return Preset::Supp;
    if (name == "CUSTOM") return Preset::Custom;
    throw std::invalid_argument("unknown preset '" + name +
                                "' (expected HIGH_ENERGY, GROUND_STATE, SUPP or CUSTOM)");
}

std::size_t preset_center(Preset p, std::size_t n_sites) {
    if (p == Preset::Supp) return n_sites / 2;
    return (n_sites + 1) / 2;
}

Vec3 preset_bulk_direction(Preset p) {
    switch (p) {
        case Preset::HighEnergy:
        case Preset::GroundState: return {0, 1, 0};
        case Preset::Supp: return {1, 0, 0};
        case Preset::Custom: break;
    }
    throw std::invalid_argument("CUSTOM preset has no built-in bulk direction");
}

SpinChain make_preset(Preset p, std::size_t n_sites) {
    if (n_sites < 1) throw std::invalid_argument("n_sites must be >= 1");
    const bool centered = (p == Preset::HighEnergy || p == Preset::GroundState);
    if (centered && n_sites % 2 == 0) {
        throw std::invalid_argument("preset " + to_string(p) +
                                    " requires an odd n_sites so a center site exists; got " +
                                    std::to_string(n_sites));
    }
    if (p == Preset::Custom) {
        throw std::invalid_argument("CUSTOM preset has no built-in configuration");
    }

    SpinChain chain;
    chain.spins.assign(n_sites, preset_bulk_direction(p));
    const std::size_t center = preset_center(p, n_sites);
    switch (p) {
        case Preset::HighEnergy: chain.spins[center - 1] = {1, 0, 0}; break;
        case Preset::GroundState: chain.spins[center - 1] = {0, 0, 1}; break;
        case Preset::Supp: chain.spins[center - 1] = {0, 0, 1}; break;
        case Preset::Custom: break;
    }
    return chain;
}

void SimConfig::validate() const {
    if (n_sites < 1) throw std::invalid_argument("n_sites: must be >= 1");
    if (alpha < 2.0) throw std::invalid_argument("alpha: must be >= 2");
    if (c_m <= 0.0) throw std::invalid_argument("c_m: must be > 0");
    if (dt <= 0.0) throw std::invalid_argument("dt: must be > 0");
    if (t_end < 0.0) throw std::invalid_argument("t_end: must be >= 0");
    if (snapshot_stride < 1) throw std::invalid_argument("snapshot_stride: must be >= 1");
    if (contour_level <= 0.0) throw std::invalid_argument("contour_level: must be > 0");
    if (field_sign != 1 && field_sign != -1)
        throw std::invalid_argument("field_sign: must be +1 or -1");
    if (fine_start_dt < 0.0) throw std::invalid_argument("fine_start_dt: must be >= 0");
    const bool centered = (preset == Preset::HighEnergy || preset == Preset::GroundState);
    if (centered && n_sites % 2 == 0)
        throw std::invalid_argument("n_sites: preset " + to_string(preset) +
                                    " requires an odd site count");
    if (fit_window_early.lo < 0.0 || fit_window_early.hi < fit_window_early.lo)
        throw std::invalid_argument("fit_window_early: must be an ordered interval with lo >= 0");
    if (fit_window_linear.hi >= 0.0 && fit_window_linear.hi < fit_window_linear.lo)
        throw std::invalid_argument("fit_window_linear: must be an ordered interval");
    // An empty linear window (t_end before its start) just means the linear
    // fit is skipped; when both windows are usable they must not overlap.
    const Interval lin = linear_window();
    if (lin.lo < lin.hi && lin.lo < fit_window_early.hi)
        throw std::invalid_argument("fit windows: linear window must start after the early window");
}

}  // namespace dipole
