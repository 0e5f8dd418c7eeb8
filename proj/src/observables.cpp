#include "dipolechain/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace dipole {

std::vector<double> fidelity_departure(const SpinChain& chain, const SpinChain& reference) {
    if (chain.size() != reference.size())
        throw std::invalid_argument("fidelity_departure: chain length " +
                                    std::to_string(chain.size()) + " vs reference " +
                                    std::to_string(reference.size()));
    std::vector<double> out(chain.size());
    for (std::size_t l = 0; l < chain.size(); ++l)
        out[l] = 1.0 - chain.spins[l].dot(reference.spins[l]);
    return out;
}

std::vector<double> normal_component(const SpinChain& chain) {
    std::vector<double> out(chain.size());
    for (std::size_t l = 0; l < chain.size(); ++l) {
        const Vec3& s = chain.spins[l];
        out[l] = std::hypot(s.y, s.z);
    }
    return out;
}

ObservableSeries make_series(const Trajectory& traj, const Vec3& reference_dir) {
    ObservableSeries series;
    series.times = traj.times;
    series.one_minus_f.reserve(traj.snapshots.size());
    series.s_normal.reserve(traj.snapshots.size());
    for (const SpinChain& chain : traj.snapshots) {
        SpinChain ref;
        ref.spacing = chain.spacing;
        ref.spins.assign(chain.size(), reference_dir);
        series.one_minus_f.push_back(fidelity_departure(chain, ref));
        series.s_normal.push_back(normal_component(chain));
    }
    return series;
}

}  // namespace dipole
