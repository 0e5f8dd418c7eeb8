#pragma once

#include <vector>

#include "dipolechain/core.hpp"
#include "dipolechain/integrator.hpp"

namespace dipole {

// Per-snapshot observable matrices; rows follow Trajectory::times.
struct ObservableSeries {
    std::vector<double> times;
    std::vector<std::vector<double>> one_minus_f;  // [snapshot][site], in [0, 2]
    std::vector<std::vector<double>> s_normal;     // [snapshot][site], in [0, 1]
};

// 1 - F per site, F_l = s_l . ref_l. Throws on length mismatch.
std::vector<double> fidelity_departure(const SpinChain& chain, const SpinChain& reference);

// sqrt(s_y^2 + s_z^2) per site.
std::vector<double> normal_component(const SpinChain& chain);

// Builds both observables against a uniform reference direction (the bulk
// orientation of the preset that produced the run).
ObservableSeries make_series(const Trajectory& traj, const Vec3& reference_dir);

}  // namespace dipole
