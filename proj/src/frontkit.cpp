#include "dipolechain/frontkit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dipole {

namespace {

struct LsqLine {
    double slope = 0.0;
    double intercept = 0.0;
};

LsqLine lsq(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    return {(n * sxy - sx * sy) / denom, (sxx * sy - sx * sxy) / denom};
}

// Outermost crossing of `level` on one side of the center, interpolated in
// log-observable space. dir = +1 scans right, -1 scans left. Returns the
// crossing position or NaN; sets `contact` when the boundary site itself is
// above the level.
double side_crossing(const std::vector<double>& row, std::size_t center, int dir, double level,
                     double floor, double spacing, bool& contact) {
    const long n = static_cast<long>(row.size());
    const long c = static_cast<long>(center);  // 1-indexed
    const long last = dir > 0 ? n : 1;
    long outer = 0;  // outermost site (1-indexed) at or above the level
    for (long j = c + dir; dir > 0 ? j <= last : j >= last; j += dir) {
        if (row[static_cast<std::size_t>(j - 1)] >= level) outer = j;
    }
    if (outer == 0) return std::nan("");
    if (outer == last) {
        contact = true;
        return static_cast<double>(outer) * spacing;
    }
    const double s_in = row[static_cast<std::size_t>(outer - 1)];
    const double s_out = std::max(row[static_cast<std::size_t>(outer + dir - 1)], floor * 1e-3);
    const double frac = (std::log(level) - std::log(s_in)) / (std::log(s_out) - std::log(s_in));
    return (static_cast<double>(outer) + dir * frac) * spacing;
}

}  // namespace

FrontTrace detect_front(const std::vector<double>& times,
                        const std::vector<std::vector<double>>& observable, double level,
                        std::size_t center_site, double spacing, double noise_floor) {
    if (level <= noise_floor)
        throw std::invalid_argument("contour_level " + std::to_string(level) +
                                    " is at or below the noise floor " +
                                    std::to_string(noise_floor));
    if (times.size() != observable.size())
        throw std::invalid_argument("detect_front: times/observable row count mismatch");

    FrontTrace trace;
    trace.center_x = static_cast<double>(center_site) * spacing;
    trace.level = level;
    for (std::size_t i = 0; i < times.size(); ++i) {
        bool contact = false;
        const double xr = side_crossing(observable[i], center_site, +1, level, noise_floor,
                                        spacing, contact);
        const double xl = side_crossing(observable[i], center_site, -1, level, noise_floor,
                                        spacing, contact);
        if (contact && !trace.has_end_contact()) trace.end_contact_time = times[i];
        if (std::isnan(xr) || std::isnan(xl)) continue;
        trace.times.push_back(times[i]);
        trace.x_left.push_back(xl);
        trace.x_right.push_back(xr);
    }
    return trace;
}

PowerFit fit_precursor(const FrontTrace& trace, Interval window) {
    std::vector<double> log_t, log_d;
    std::size_t rows = 0;
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        const double t = trace.times[i];
        if (t <= 0.0 || t < window.lo || t > window.hi) continue;
        ++rows;
        for (const double d : {trace.x_right[i] - trace.center_x,
                               trace.center_x - trace.x_left[i]}) {
            if (d <= 0.0) continue;
            log_t.push_back(std::log(t));
            log_d.push_back(std::log(d));
        }
    }
    if (rows < 10)
        throw std::invalid_argument("fit_precursor: only " + std::to_string(rows) +
                                    " trace points in the window, need >= 10");
    const LsqLine line = lsq(log_t, log_d);
    PowerFit fit;
    fit.exponent = line.slope;
    fit.amplitude = std::exp(line.intercept);
    double ss = 0.0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
        const double model = fit.amplitude * std::exp(fit.exponent * log_t[i]);
        const double r = std::exp(log_d[i]) - model;
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(log_t.size()));
    return fit;
}

LineFit fit_linear(const FrontTrace& trace, Interval window) {
    if (window.hi >= trace.end_contact_time)
        throw std::invalid_argument("fit_linear: window ends after the front reached a chain end"
                                    " at t = " + std::to_string(trace.end_contact_time));
    std::vector<double> ts, ds;
    std::size_t rows = 0;
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        const double t = trace.times[i];
        if (t < window.lo || t > window.hi) continue;
        ++rows;
        ts.push_back(t);
        ds.push_back(trace.x_right[i] - trace.center_x);
        ts.push_back(t);
        ds.push_back(trace.center_x - trace.x_left[i]);
    }
    if (rows < 10)
        throw std::invalid_argument("fit_linear: only " + std::to_string(rows) +
                                    " trace points in the window, need >= 10");
    const LsqLine line = lsq(ts, ds);
    LineFit fit;
    fit.speed = line.slope;
    fit.intercept = line.intercept;
    double ss = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double r = ds[i] - (fit.intercept + fit.speed * ts[i]);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(ts.size()));
    return fit;
}

double predicted_b(double amplitude, double speed) {
    if (amplitude < 0.0 || speed <= 0.0)
        throw std::invalid_argument("predicted_b: requires amplitude >= 0 and speed > 0");
    if (amplitude == 0.0) return 0.0;
    return 2.0 / std::sqrt(27.0) * std::pow(amplitude, 1.5) / std::sqrt(speed);
}

MasterRescale master_rescale(const std::vector<double>& times,
                             const std::vector<std::vector<double>>& s_normal,
                             std::size_t center_site, Interval window, double spacing,
                             double noise_floor) {
    if (times.size() != s_normal.size())
        throw std::invalid_argument("master_rescale: times/observable row count mismatch");
    const std::size_t n = s_normal.empty() ? 0 : s_normal.front().size();

    MasterRescale out;
    std::vector<double> log_d, log_c;
    for (std::size_t site = 1; site <= n; ++site) {
        if (site == center_site) continue;
        double st = 0.0, tt = 0.0;
        bool any_signal = false;
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double t = times[i];
            if (t <= 0.0 || t < window.lo || t > window.hi) continue;
            const double s = s_normal[i][site - 1];
            if (s >= noise_floor) any_signal = true;
            st += s * t;
            tt += t * t;
        }
        if (!any_signal || tt == 0.0) {
            out.excluded.push_back(site);
            continue;
        }
        const double coeff = st / tt;
        out.sites.push_back(site);
        out.coefficients.push_back(coeff);
        const double dist =
            std::abs(static_cast<double>(site) - static_cast<double>(center_site)) * spacing;
        log_d.push_back(std::log(dist));
        log_c.push_back(std::log(coeff));
    }
    if (log_d.size() < 2)
        throw std::invalid_argument("master_rescale: fewer than two sites carried signal");
    out.distance_exponent = lsq(log_d, log_c).slope;
    return out;
}

}  // namespace dipole
