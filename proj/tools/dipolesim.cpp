#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dipolechain/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Classical dipole chain simulator: undamped precession dynamics,"
                 " front detection and two-regime light-cone fits"};

    std::string config_path;
    std::string out_dir = "out";
    std::string preset_override;
    bool quiet = false;
    app.add_option("--config", config_path, "Path to a key=value config file");
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_option("--preset", preset_override,
                   "Preset override: HIGH_ENERGY, GROUND_STATE or SUPP");
    app.add_flag("--quiet", quiet, "Suppress progress output");
    CLI11_PARSE(app, argc, argv);

    try {
        std::string text;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "error: cannot read config file " << config_path << "\n";
                return 2;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            text = buf.str();
        }
        dipole::SimConfig config = dipole::parse_config(text);
        if (!preset_override.empty()) {
            config.preset = dipole::preset_from_string(preset_override);
            config.validate();
        }

        if (!quiet) {
            std::cout << dipole::kVersion << "\n"
                      << "preset " << dipole::to_string(config.preset) << ", N = "
                      << config.n_sites << ", alpha = " << config.alpha << ", dt = " << config.dt
                      << ", t_end = " << config.t_end << "\n";
        }

        const dipole::RunManifest manifest = dipole::run_experiment(config, out_dir);

        if (!quiet) {
            std::cout << "wall time " << manifest.wall_time_s << " s\n"
                      << "max norm drift " << manifest.conservation.max_norm_drift
                      << ", energy drift " << manifest.conservation.energy_drift << "\n";
            if (manifest.fits.valid) {
                std::cout << "precursor A = " << manifest.fits.a << ", beta = "
                          << manifest.fits.beta << "\n"
                          << "linear B = " << manifest.fits.b << ", v_s = " << manifest.fits.v_s
                          << " (predicted B = " << manifest.fits.b_predicted << ")\n";
            } else {
                std::cout << "fits skipped: insufficient data\n";
            }
            if (manifest.master_valid)
                std::cout << "master-plot distance exponent "
                          << manifest.master.distance_exponent << "\n";
            std::cout << "outputs in " << out_dir << "\n";
        }
        return manifest.conservation.ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
