#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "dipolechain/core.hpp"

namespace dipole {

// Sub-lattice front positions where an observable crosses a fixed contour
// level, per recorded time. Positions are in units of a, 1-indexed origin.
struct FrontTrace {
    std::vector<double> times;
    std::vector<double> x_left;
    std::vector<double> x_right;
    double center_x = 0.0;
    double level = 0.0;
    // First recorded time at which the contour reaches site 1 or N.
    double end_contact_time = std::numeric_limits<double>::infinity();

    bool has_end_contact() const { return end_contact_time < std::numeric_limits<double>::infinity(); }
};

struct PowerFit {
    double amplitude = 0.0;  // A in d(t) = A t^beta
    double exponent = 0.0;   // beta
    double residual_rms = 0.0;
};

struct LineFit {
    double intercept = 0.0;  // B in d(t) = B + v_s t
    double speed = 0.0;      // v_s
    double residual_rms = 0.0;
};

struct FitReport {
    bool valid = false;  // false when the run had too little data to fit
    double a = 0.0;
    double beta = 0.0;
    double b = 0.0;
    double v_s = 0.0;
    double b_predicted = 0.0;
    double residual_rms_early = 0.0;
    double residual_rms_linear = 0.0;
};

struct MasterRescale {
    std::vector<std::size_t> sites;         // 1-indexed, sites that carried signal
    std::vector<double> coefficients;       // per-site slope of S_N vs t through 0
    std::vector<std::size_t> excluded;      // sites below the noise floor throughout
    double distance_exponent = 0.0;         // log-log slope of coefficient vs distance
};

// Scans outward from the perturbation center at each time and interpolates
// the outermost crossing of `level` in log-observable space. Times where
// neither side crosses yield no entry. Throws when level is at or below the
// noise floor.
FrontTrace detect_front(const std::vector<double>& times,
                        const std::vector<std::vector<double>>& observable, double level,
                        std::size_t center_site, double spacing = 1.0,
                        double noise_floor = 1e-12);

// Least-squares power law on log distance-from-center vs log t over the
// window; pools left and right branches. Requires >= 10 points.
PowerFit fit_precursor(const FrontTrace& trace, Interval window);

// Least-squares line on distance-from-center vs t over the window. Rejects
// windows that extend past the first end contact. Requires >= 10 points.
LineFit fit_linear(const FrontTrace& trace, Interval window);

// Intercept of the linear regime implied by continuity and tangency with the
// precursor: (2/sqrt(27)) A^{3/2} / sqrt(v_s).
double predicted_b(double amplitude, double speed);

// Per-site early-time scale factors of S_N (slope vs t through the origin)
// and their log-log decay exponent with distance from the center.
MasterRescale master_rescale(const std::vector<double>& times,
                             const std::vector<std::vector<double>>& s_normal,
                             std::size_t center_site, Interval window, double spacing = 1.0,
                             double noise_floor = 1e-12);

}  // namespace dipole
