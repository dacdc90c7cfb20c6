#pragma once

#include "diagnostics.hpp"
#include "run_config.hpp"

#include <map>

namespace specwin {

struct Manifest {
    int format = 1;
    std::string code_version;
    std::string tableau;
    std::string advection_form;
    std::string fft_planner;
    int threads = 1;
    std::string status; // complete | incomplete
    std::uint64_t config_hash = 0;
    int cycles = 0;
    double total_time = 0.0;
    double estimated_singularity_time = 0.0;
    double wall_seconds = 0.0;
    std::vector<std::pair<std::string, std::uint64_t>> checkpoints; // relative path, bytes
    std::string config_text;
    std::string dir; // directory holding the manifest (not serialized)
};

void save_manifest(const std::string& path, const Manifest& mf);
Manifest load_manifest(const std::string& path);

struct AnalyzeOptions {
    bool override_fit_range = false;
    double fit_r_min = 0.0, fit_r_max = 0.0;
    bool override_exclude_cycle0 = false;
    bool exclude_cycle0 = true;
    std::string out_dir; // empty: write next to the manifest
};

struct RunSummary {
    std::string manifest_path;
    std::string out_dir;
    bool complete = false;
    std::string failure;
    int cycles = 0;
    double total_time = 0.0;
    double estimated_singularity_time = 0.0;
    double bkm = 0.0;
    BlowupFit blowup;
    std::map<std::string, FitResult> fits; // "S2_scalar", "S2_longitudinal", ...
    double max_velocity_low = 0.0;         // min over cycles of max|u|
    double max_velocity_high = 0.0;        // max over cycles of max|u|
    double vorticity_growth = 0.0;         // original-frame growth factor
    std::vector<LedgerEntry> ledger;
};

/// Execute the cascade for a config: checkpoints, diagnostics tables, JSON
/// summary and the manifest land under out_dir. On numerical failure the
/// manifest is written with status=incomplete and the summary reports it.
RunSummary run(const RunConfig& cfg, const std::string& out_dir, const LogFn& log = {});

/// Recompute every diagnostic from the stored checkpoints. With default
/// options the outputs are byte-identical to the ones written at run time.
RunSummary analyze(const std::string& manifest_path, const AnalyzeOptions& opts = {},
                   const LogFn& log = {});

} // namespace specwin
