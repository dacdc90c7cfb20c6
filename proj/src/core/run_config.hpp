#pragma once

#include "cascade.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace specwin {

inline constexpr const char* code_version = "specwin 1.0.0";

enum class ModelKind { Burgers, Euler };

struct DiagnosticsConfig {
    std::vector<int> orders;        // structure function orders (scalar flavor)
    int max_separation_cells = 0;   // 0 = n/2
    bool fit_range_auto = true;
    double fit_r_min = 0.0, fit_r_max = 0.0;
    bool exclude_cycle0 = true;
    int blowup_tail = 10000;
};

/// Everything a run needs; parses from / serializes to the plain-text
/// key-value format, with every default written back so manifests are
/// self-describing.
struct RunConfig {
    ModelKind model = ModelKind::Burgers;
    int grid_n = 1024;
    std::string initial_condition = "cos-x"; // cos-x | taylor-green | file:PATH
    double viscosity = 0.0;
    RescaleConfig rescale;
    IntegratorConfig integrator;
    DiagnosticsConfig diagnostics;
    std::string output_directory;
    std::uint64_t seed = 0;

    void validate() const;
    std::string to_text() const;
    std::uint64_t hash() const; // FNV-1a over the normalized text

    static RunConfig parse_text(const std::string& text);
    static RunConfig load_file(const std::string& path);

    /// Named configurations reproducing the reference experiments:
    /// burgers_calibration, euler_tg_32, euler_eps_1e-3, euler_eps_1e-5.
    static RunConfig preset(const std::string& name);
    static std::vector<std::string> preset_names();

    /// Generic key access ("section.key") used by the C API.
    void set(const std::string& key, const std::string& value);
    std::string get(const std::string& key) const;
};

} // namespace specwin
