#include "dipolechain/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace dipole {

namespace {

std::string fmt_g(double v, int digits) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

std::string fmt17(double v) { return fmt_g(v, 17); }
std::string fmt8(double v) { return fmt_g(v, 8); }

Interval parse_interval(const std::string& key, const std::string& value, bool open_end_ok) {
    const auto comma = value.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument(key + ": expected 'lo,hi', got '" + value + "'");
    Interval iv;
    try {
        iv.lo = std::stod(value.substr(0, comma));
        const std::string hi = value.substr(comma + 1);
        if (hi.empty() && open_end_ok)
            iv.hi = -1.0;
        else
            iv.hi = std::stod(hi);
    } catch (const std::exception&) {
        throw std::invalid_argument(key + ": malformed interval '" + value + "'");
    }
    return iv;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(key + ": not a number: '" + value + "'");
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(key + ": not an integer: '" + value + "'");
    }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
}

}  // namespace

SimConfig parse_config(const std::string& text) {
    SimConfig config;
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> tokens;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
    }
    for (const std::string& tok : tokens) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed token '" + tok + "' (expected key=value)");
        const std::string key = tok.substr(0, eq);
        const std::string value = tok.substr(eq + 1);
        if (key == "preset") {
            config.preset = preset_from_string(value);
        } else if (key == "n_sites") {
            const long v = parse_long(key, value);
            if (v < 1) throw std::invalid_argument("n_sites: must be >= 1, got " + value);
            config.n_sites = static_cast<std::size_t>(v);
        } else if (key == "alpha") {
            config.alpha = parse_double(key, value);
        } else if (key == "c_m") {
            config.c_m = parse_double(key, value);
        } else if (key == "dt") {
            config.dt = parse_double(key, value);
        } else if (key == "t_end") {
            config.t_end = parse_double(key, value);
        } else if (key == "snapshot_stride") {
            const long v = parse_long(key, value);
            if (v < 1) throw std::invalid_argument("snapshot_stride: must be >= 1, got " + value);
            config.snapshot_stride = static_cast<std::size_t>(v);
        } else if (key == "contour_level") {
            config.contour_level = parse_double(key, value);
        } else if (key == "field_sign") {
            const long v = parse_long(key, value);
            if (v != 1 && v != -1)
                throw std::invalid_argument("field_sign: must be +1 or -1, got " + value);
            config.field_sign = static_cast<int>(v);
        } else if (key == "fit_window_early") {
            config.fit_window_early = parse_interval(key, value, false);
        } else if (key == "fit_window_linear") {
            config.fit_window_linear = parse_interval(key, value, true);
        } else if (key == "fine_start_dt") {
            config.fine_start_dt = parse_double(key, value);
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
    config.validate();
    return config;
}

std::string serialize_config(const SimConfig& config) {
    std::ostringstream out;
    out << "preset=" << to_string(config.preset) << "\n"
        << "n_sites=" << config.n_sites << "\n"
        << "alpha=" << fmt17(config.alpha) << "\n"
        << "c_m=" << fmt17(config.c_m) << "\n"
        << "dt=" << fmt17(config.dt) << "\n"
        << "t_end=" << fmt17(config.t_end) << "\n"
        << "snapshot_stride=" << config.snapshot_stride << "\n"
        << "contour_level=" << fmt17(config.contour_level) << "\n"
        << "field_sign=" << config.field_sign << "\n"
        << "fit_window_early=" << fmt17(config.fit_window_early.lo) << ","
        << fmt17(config.fit_window_early.hi) << "\n"
        << "fit_window_linear=" << fmt17(config.fit_window_linear.lo) << ","
        << (config.fit_window_linear.hi < 0 ? std::string{}
                                            : fmt17(config.fit_window_linear.hi))
        << "\n"
        << "fine_start_dt=" << fmt17(config.fine_start_dt) << "\n";
    return out.str();
}

RunManifest run_experiment(const SimConfig& config, const std::filesystem::path& out_dir) {
    const auto t_start = std::chrono::steady_clock::now();
    config.validate();
    std::filesystem::create_directories(out_dir);

    const Trajectory traj = run_simulation(config);
    const Vec3 bulk = preset_bulk_direction(config.preset);
    const ObservableSeries series = make_series(traj, bulk);
    const std::size_t center = preset_center(config.preset, config.n_sites);

    // Supplementary-style runs are tracked with S_N, the others via fidelity.
    const bool use_s_normal = config.preset == Preset::Supp;
    const auto& front_obs = use_s_normal ? series.s_normal : series.one_minus_f;

    RunManifest manifest;
    manifest.version = kVersion;
    manifest.config_echo = serialize_config(config);

    FrontTrace trace =
        detect_front(series.times, front_obs, config.contour_level, center, 1.0);

    // Fits; a short run simply reports "insufficient data".
    manifest.fits.valid = false;
    std::string fit_note;
    try {
        Interval early = config.fit_window_early;
        if (early.lo <= 0.0) early.lo = std::nextafter(0.0, 1.0);
        const PowerFit pf = fit_precursor(trace, early);
        Interval lin = config.linear_window();
        if (trace.has_end_contact()) lin.hi = std::min(lin.hi, trace.end_contact_time * (1.0 - 1e-12));
        const LineFit lf = fit_linear(trace, lin);
        manifest.fits.valid = true;
        manifest.fits.a = pf.amplitude;
        manifest.fits.beta = pf.exponent;
        manifest.fits.residual_rms_early = pf.residual_rms;
        manifest.fits.b = lf.intercept;
        manifest.fits.v_s = lf.speed;
        manifest.fits.residual_rms_linear = lf.residual_rms;
        manifest.fits.b_predicted = predicted_b(pf.amplitude, lf.speed);
    } catch (const std::invalid_argument& e) {
        fit_note = std::string("insufficient data: ") + e.what();
    }

    manifest.master_valid = false;
    if (use_s_normal) {
        try {
            manifest.master =
                master_rescale(series.times, series.s_normal, center, config.fit_window_early);
            manifest.master_valid = true;
        } catch (const std::invalid_argument&) {
        }
    }

    // Conservation summary from the recorded stats.
    const double e0 = traj.stats.front().energy;
    const double e_denom = std::abs(e0) > 0.0 ? std::abs(e0) : 1.0;
    for (const StepStats& st : traj.stats) {
        manifest.conservation.max_norm_drift =
            std::max(manifest.conservation.max_norm_drift, st.max_norm_drift);
        manifest.conservation.energy_drift =
            std::max(manifest.conservation.energy_drift, std::abs(st.energy - e0) / e_denom);
    }
    manifest.conservation.ok = manifest.conservation.max_norm_drift < 1e-9 &&
                               manifest.conservation.energy_drift < 1e-4;

    // snapshots.csv
    {
        std::ostringstream out;
        out << "t,site,sx,sy,sz\n";
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const std::string t = fmt17(traj.times[i]);
            const SpinChain& chain = traj.snapshots[i];
            for (std::size_t l = 0; l < chain.size(); ++l) {
                const Vec3& s = chain.spins[l];
                out << t << ',' << (l + 1) << ',' << fmt17(s.x) << ',' << fmt17(s.y) << ','
                    << fmt17(s.z) << "\n";
            }
        }
        write_file(out_dir / "snapshots.csv", out.str());
    }
    // observables.csv
    {
        std::ostringstream out;
        out << "t,site,one_minus_F,S_N\n";
        for (std::size_t i = 0; i < series.times.size(); ++i) {
            const std::string t = fmt17(series.times[i]);
            for (std::size_t l = 0; l < series.one_minus_f[i].size(); ++l)
                out << t << ',' << (l + 1) << ',' << fmt17(series.one_minus_f[i][l]) << ','
                    << fmt17(series.s_normal[i][l]) << "\n";
        }
        write_file(out_dir / "observables.csv", out.str());
    }
    // front.csv
    {
        std::ostringstream out;
        out << "t,x_left,x_right\n";
        for (std::size_t i = 0; i < trace.times.size(); ++i)
            out << fmt17(trace.times[i]) << ',' << fmt17(trace.x_left[i]) << ','
                << fmt17(trace.x_right[i]) << "\n";
        write_file(out_dir / "front.csv", out.str());
    }
    // report.txt
    {
        std::ostringstream out;
        out << "# " << kVersion << " run report\n"
            << "#\n"
            << "# Preset " << to_string(config.preset) << ", N = " << config.n_sites
            << ", perturbed site " << center << " (x = " << center
            << " a, distance from center 0)\n"
            << "# Front observable: " << (use_s_normal ? "S_N" : "1-F")
            << " at contour level " << fmt8(config.contour_level) << "\n"
            << "#\n";
        if (manifest.fits.valid) {
            out << "# Precursor x(t) = center + A t^beta, linear x(t) = center + B + v_s t\n";
        } else {
            out << "# Fits skipped (" << fit_note << ")\n";
        }
        out << "\n";
        out << "preset=" << to_string(config.preset) << "\n";
        out << "n_sites=" << config.n_sites << "\n";
        out << "center_site=" << center << "\n";
        out << "contour_level=" << fmt8(config.contour_level) << "\n";
        out << "fits_valid=" << (manifest.fits.valid ? 1 : 0) << "\n";
        if (manifest.fits.valid) {
            out << "A=" << fmt8(manifest.fits.a) << "\n";
            out << "beta=" << fmt8(manifest.fits.beta) << "\n";
            out << "B=" << fmt8(manifest.fits.b) << "\n";
            out << "v_s=" << fmt8(manifest.fits.v_s) << "\n";
            out << "B_predicted=" << fmt8(manifest.fits.b_predicted) << "\n";
            out << "residual_rms_early=" << fmt8(manifest.fits.residual_rms_early) << "\n";
            out << "residual_rms_linear=" << fmt8(manifest.fits.residual_rms_linear) << "\n";
        }
        if (manifest.master_valid)
            out << "master_distance_exponent=" << fmt8(manifest.master.distance_exponent) << "\n";
        out << "max_norm_drift=" << fmt8(manifest.conservation.max_norm_drift) << "\n";
        out << "energy_drift=" << fmt8(manifest.conservation.energy_drift) << "\n";
        out << "conservation_ok=" << (manifest.conservation.ok ? 1 : 0) << "\n";
        write_file(out_dir / "report.txt", out.str());
    }
    // manifest.json (wall time deliberately omitted so reruns are byte-equal)
    {
        nlohmann::json j;
        j["version"] = kVersion;
        j["config"] = manifest.config_echo;
        j["files"] = {"snapshots.csv", "observables.csv", "front.csv", "report.txt"};
        j["conservation"] = {{"max_norm_drift", manifest.conservation.max_norm_drift},
                             {"energy_drift", manifest.conservation.energy_drift},
                             {"ok", manifest.conservation.ok}};
        j["fits"] = {{"valid", manifest.fits.valid},
                     {"A", manifest.fits.a},
                     {"beta", manifest.fits.beta},
                     {"B", manifest.fits.b},
                     {"v_s", manifest.fits.v_s},
                     {"B_predicted", manifest.fits.b_predicted}};
        if (manifest.master_valid)
            j["master_distance_exponent"] = manifest.master.distance_exponent;
        write_file(out_dir / "manifest.json", j.dump(2) + "\n");
    }

    for (const char* name : {"snapshots.csv", "observables.csv", "front.csv", "report.txt",
                             "manifest.json"})
        manifest.output_files.push_back(out_dir / name);
    manifest.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return manifest;
}

}  // namespace dipole
