#pragma once

#include <vector>

#include "dipolechain/core.hpp"
#include "dipolechain/field.hpp"

namespace dipole {

struct StepStats {
    double time = 0.0;
    double max_norm_drift = 0.0;        // max over sites of ||s| - 1| so far
    double energy = 0.0;
    double max_precession_angle = 0.0;  // radians, largest |H| dt this step
};

struct Trajectory {
    std::vector<double> times;
    std::vector<SpinChain> snapshots;
    std::vector<StepStats> stats;  // one entry per snapshot
};

// Rotates s by angle |H| dt about H/|H| (closed-form rotation, norm exact).
// The small-dt limit is ds/dt = -s x H. Zero field returns s unchanged.
Vec3 rodrigues_rotate(const Vec3& s, const Vec3& h_field, double dt);

// One Heun (improved Euler) step: predictor rotates every spin in its
// current field, the corrector rotates the original spins in the average of
// the current and predicted fields. Single rotation per spin, so unit norms
// survive exactly.
SpinChain heun_step(const SpinChain& chain, double alpha, double c_m, double dt, int sign = +1);

// Fixed-step evolution from the preset initial state (or a caller-provided
// one), recording a snapshot every snapshot_stride steps plus the initial
// state. When fine_start_dt > 0 the run starts at that step size and switches
// to dt at fit_window_early.hi. Throws std::runtime_error when the relative
// energy drift exceeds config.energy_abort.
Trajectory run_simulation(const SimConfig& config);
Trajectory run_simulation(const SimConfig& config, const SpinChain& initial);

}  // namespace dipole
