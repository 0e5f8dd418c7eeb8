#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dipolechain/core.hpp"
#include "dipolechain/frontkit.hpp"
#include "dipolechain/integrator.hpp"
#include "dipolechain/observables.hpp"

namespace dipole {

inline constexpr const char* kVersion = "dipolechain 0.1.0";

// Parses a flat key=value document (whitespace separated tokens, '#' starts
// a comment). Unknown keys are rejected with the key name. Interval values
// are written "lo,hi"; fit_window_linear accepts "lo," for "until t_end".
SimConfig parse_config(const std::string& text);

std::string serialize_config(const SimConfig& config);

struct ConservationSummary {
    double max_norm_drift = 0.0;
    double energy_drift = 0.0;  // max relative drift over the run
    bool ok = false;            // norm < 1e-9 and energy < 1e-4
};

struct RunManifest {
    std::string config_echo;
    std::string version;
    double wall_time_s = 0.0;  // not serialized; outputs stay byte-reproducible
    std::vector<std::filesystem::path> output_files;
    ConservationSummary conservation;
    FitReport fits;
    MasterRescale master;       // populated for SUPP-style runs
    bool master_valid = false;
};

// Runs the full pipeline: simulate, observables, front detection, fits,
// master rescale (SUPP preset), and writes snapshots.csv, observables.csv,
// front.csv, report.txt and manifest.json under out_dir.
RunManifest run_experiment(const SimConfig& config, const std::filesystem::path& out_dir);

}  // namespace dipole
