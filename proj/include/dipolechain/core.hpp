#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dipolechain/vec3.hpp"

namespace dipole {

using Spin = Vec3;

// A finite chain of unit spins on a regular 1D lattice along the x axis.
// Site l (1-indexed in every external surface) sits at x = l * spacing.
struct SpinChain {
    std::vector<Spin> spins;
    double spacing = 1.0;

    std::size_t size() const { return spins.size(); }
    // Position of 1-indexed site in units of length.
    double position(std::size_t site) const { return static_cast<double>(site) * spacing; }
};

enum class Preset { HighEnergy, GroundState, Supp, Custom };

std::string to_string(Preset p);
Preset preset_from_string(const std::string& name);

// 1-indexed perturbed site of a preset: center (n+1)/2 for the odd centered
// presets, n/2 for Supp.
std::size_t preset_center(Preset p, std::size_t n_sites);

// Common orientation of the unperturbed bulk; the fidelity reference.
Vec3 preset_bulk_direction(Preset p);

// Builds the initial configuration. Throws std::invalid_argument when a
// centered preset is given an even site count.
SpinChain make_preset(Preset p, std::size_t n_sites);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct SimConfig {
    Preset preset = Preset::HighEnergy;
    std::size_t n_sites = 213;
    double alpha = 3.0;       // interaction decay exponent
    double c_m = 1.0;         // coupling prefactor, sets the time scale
    double dt = 2.5e-3;
    double t_end = 2.0;
    std::size_t snapshot_stride = 1;
    double contour_level = 1e-8;
    int field_sign = +1;
    Interval fit_window_early{0.0, 0.1};
    Interval fit_window_linear{0.15, -1.0};  // hi < 0 means "until t_end"
    // When > 0, integrate with this finer step until fit_window_early.hi,
    // then continue with dt.
    double fine_start_dt = 0.0;
    // Relative energy drift at which a run is aborted as unstable.
    double energy_abort = 1e-2;

    Interval linear_window() const {
        return {fit_window_linear.lo,
                fit_window_linear.hi < 0.0 ? t_end : fit_window_linear.hi};
    }

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

}  // namespace dipole
