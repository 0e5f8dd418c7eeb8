#include "dipolechain/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace dipole {

namespace {

// Crossover below which the direct sum beats the FFT path.
constexpr std::size_t kFftThreshold = 64;

Vec3 rotate(const Vec3& s, const Vec3& h_field, double dt) {
    const double mag = h_field.norm();
    const double omega = mag * dt;
    if (omega == 0.0) return s;
    const Vec3 axis = h_field * (1.0 / mag);
    const double u = std::sin(omega);
    const double v = std::cos(omega);
    const double w = 1.0 - v;
    return s * v + axis.cross(s) * u + axis * (w * axis.dot(s));
}

struct FieldEvaluator {
    double alpha;
    double c_m;
    int sign;
    std::optional<FieldKernel> kernel;

    FieldEvaluator(std::size_t n, double alpha_, double c_m_, int sign_)
        : alpha(alpha_), c_m(c_m_), sign(sign_) {
        if (n >= kFftThreshold) kernel.emplace(n, alpha_);
    }

    FieldArray operator()(const SpinChain& chain) {
        if (kernel) return field_fft(chain, *kernel, c_m, sign);
        return field_direct(chain, alpha, c_m, sign);
    }
};

// In-place Heun step; returns the largest precession angle applied.
double advance(SpinChain& chain, FieldEvaluator& eval, double dt, SpinChain& predictor) {
    const FieldArray h0 = eval(chain);
    predictor.spacing = chain.spacing;
    predictor.spins.resize(chain.size());
    for (std::size_t l = 0; l < chain.size(); ++l)
        predictor.spins[l] = rotate(chain.spins[l], h0[l], dt);
    const FieldArray h1 = eval(predictor);
    double max_angle = 0.0;
    for (std::size_t l = 0; l < chain.size(); ++l) {
        const Vec3 h_avg = (h0[l] + h1[l]) * 0.5;
        max_angle = std::max(max_angle, h_avg.norm() * dt);
        chain.spins[l] = rotate(chain.spins[l], h_avg, dt);
    }
    return max_angle;
}

double max_norm_drift(const SpinChain& chain) {
    double drift = 0.0;
    for (const Vec3& s : chain.spins) drift = std::max(drift, std::abs(s.norm() - 1.0));
    return drift;
}

}  // namespace

Vec3 rodrigues_rotate(const Vec3& s, const Vec3& h_field, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("rodrigues_rotate: dt must be > 0");
    return rotate(s, h_field, dt);
}

SpinChain heun_step(const SpinChain& chain, double alpha, double c_m, double dt, int sign) {
    SpinChain out = chain;
    SpinChain scratch;
    FieldEvaluator eval(0, alpha, c_m, sign);  // n=0 forces the direct path
    advance(out, eval, dt, scratch);
    return out;
}

Trajectory run_simulation(const SimConfig& config) {
    return run_simulation(config, make_preset(config.preset, config.n_sites));
}

Trajectory run_simulation(const SimConfig& config, const SpinChain& initial) {
    config.validate();
    if (initial.size() != config.n_sites)
        throw std::invalid_argument("run_simulation: initial chain has " +
                                    std::to_string(initial.size()) + " sites, config says " +
                                    std::to_string(config.n_sites));

    FieldEvaluator eval(initial.size(), config.alpha, config.c_m, config.field_sign);

    // Precession angle per step must stay small for the chosen dt.
    {
        const FieldArray h0 = eval(initial);
        double c_max = 0.0;
        for (const Vec3& h : h0) c_max = std::max(c_max, h.norm());
        if (config.dt * c_max >= 0.1)
            throw std::invalid_argument(
                "dt: dt * max|H| = " + std::to_string(config.dt * c_max) +
                " >= 0.1; reduce the time step");
    }

    Trajectory traj;
    SpinChain chain = initial;
    SpinChain scratch;
    double worst_norm_drift = 0.0;
    const double e0 = total_energy(chain, config.alpha, config.c_m);

    auto record = [&](double t, double max_angle) {
        const double e = total_energy(chain, config.alpha, config.c_m);
        traj.times.push_back(t);
        traj.snapshots.push_back(chain);
        traj.stats.push_back({t, worst_norm_drift, e, max_angle});
        const double denom = std::abs(e0) > 0.0 ? std::abs(e0) : 1.0;
        if (std::abs(e - e0) / denom > config.energy_abort)
            throw std::runtime_error("energy drift " + std::to_string(std::abs(e - e0) / denom) +
                                     " exceeded abort threshold at t = " + std::to_string(t) +
                                     " (unstable dt?)");
    };

    record(0.0, 0.0);

    auto run_phase = [&](double t0, double dt, long n_steps) {
        for (long k = 1; k <= n_steps; ++k) {
            const double angle = advance(chain, eval, dt, scratch);
            worst_norm_drift = std::max(worst_norm_drift, max_norm_drift(chain));
            if (k % static_cast<long>(config.snapshot_stride) == 0 || k == n_steps)
                record(t0 + static_cast<double>(k) * dt, angle);
        }
        return t0 + static_cast<double>(n_steps) * dt;
    };

    double t = 0.0;
    if (config.fine_start_dt > 0.0 && config.t_end > 0.0) {
        const double t_switch = std::min(config.fit_window_early.hi, config.t_end);
        const long n_fine = std::lround(t_switch / config.fine_start_dt);
        t = run_phase(t, config.fine_start_dt, n_fine);
    }
    if (config.t_end > t) {
        const long n_main = std::lround(std::ceil((config.t_end - t) / config.dt - 1e-9));
        t = run_phase(t, config.dt, n_main);
    }
    return traj;
}

}  // namespace dipole
