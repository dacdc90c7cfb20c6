#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace specwin {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        fail(ErrorCode::ConfigError, "bad number '" + v + "' for " + key);
    }
}

long parse_long(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        fail(ErrorCode::ConfigError, "bad integer '" + v + "' for " + key);
    }
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(ErrorCode::ConfigError, "bad boolean '" + v + "' for " + key);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

void RunConfig::validate() const {
    if (grid_n < 8 || grid_n % 8 != 0)
        fail(ErrorCode::ConfigError, "grid_n must be a multiple of 8, at least 8");
    if (model == ModelKind::Burgers) {
        if (initial_condition != "cos-x" && initial_condition.rfind("file:", 0) != 0)
            fail(ErrorCode::ConfigError, "burgers initial_condition must be cos-x or file:PATH");
    } else {
        if (initial_condition != "taylor-green" && initial_condition.rfind("file:", 0) != 0)
            fail(ErrorCode::ConfigError,
                 "euler initial_condition must be taylor-green or file:PATH");
    }
    if (viscosity < 0) fail(ErrorCode::ConfigError, "viscosity must be >= 0");
    rescale.validate();
    integrator.validate();
    if (diagnostics.orders.empty())
        fail(ErrorCode::ConfigError, "diagnostics.orders must not be empty");
    for (int o : diagnostics.orders)
        if (o < 2 || o > 12) fail(ErrorCode::ConfigError, "structure function orders must be 2..12");
    if (diagnostics.max_separation_cells < 0 ||
        diagnostics.max_separation_cells > grid_n / 2)
        fail(ErrorCode::ConfigError, "max_separation_cells must lie in [0, n/2]");
    if (!diagnostics.fit_range_auto && !(diagnostics.fit_r_min > 0 &&
                                         diagnostics.fit_r_min < diagnostics.fit_r_max))
        fail(ErrorCode::ConfigError, "explicit fit_range needs 0 < rmin < rmax");
    if (diagnostics.blowup_tail < 2) fail(ErrorCode::ConfigError, "blowup_tail must be >= 2");
}

std::string RunConfig::to_text() const {
    std::ostringstream os;
    os << "[run]\n";
    os << "model = " << (model == ModelKind::Burgers ? "burgers" : "euler") << "\n";
    os << "grid_n = " << grid_n << "\n";
    os << "initial_condition = " << initial_condition << "\n";
    os << "viscosity = " << fmt(viscosity) << "\n";
    os << "epsilon = " << fmt(rescale.epsilon) << "\n";
    os << "max_cycles = " << rescale.max_cycles << "\n";
    os << "vorticity_mode = "
       << (rescale.vorticity_mode == VorticityMode::Component ? "component" : "modulus") << "\n";
    os << "cycle_time_cap = " << fmt(rescale.cycle_time_cap) << "\n";
    os << "\n[integrator]\n";
    os << "tol_per_unit_step = " << fmt(integrator.tol_per_unit_step) << "\n";
    os << "dt_init = " << fmt(integrator.dt_init) << "\n";
    os << "dt_min = " << fmt(integrator.dt_min) << "\n";
    os << "dt_max = " << fmt(integrator.dt_max) << "\n";
    os << "safety_factor = " << fmt(integrator.safety_factor) << "\n";
    os << "\n[fringe]\n";
    os << "profile = " << rescale.fringe_profile << "\n";
    os << "runtime_forcing = " << (rescale.fringe_runtime_forcing ? "true" : "false") << "\n";
    os << "forcing_strength = " << fmt(rescale.forcing_strength) << "\n";
    os << "\n[diagnostics]\n";
    os << "orders = ";
    for (std::size_t i = 0; i < diagnostics.orders.size(); ++i)
        os << (i ? "," : "") << diagnostics.orders[i];
    os << "\n";
    os << "max_separation_cells = " << diagnostics.max_separation_cells << "\n";
    if (diagnostics.fit_range_auto)
        os << "fit_range = auto\n";
    else
        os << "fit_range = " << fmt(diagnostics.fit_r_min) << ":" << fmt(diagnostics.fit_r_max)
           << "\n";
    os << "exclude_cycle0 = " << (diagnostics.exclude_cycle0 ? "true" : "false") << "\n";
    os << "blowup_tail = " << diagnostics.blowup_tail << "\n";
    os << "\n[output]\n";
    os << "directory = " << output_directory << "\n";
    os << "seed = " << seed << "\n";
    return os.str();
}

std::uint64_t RunConfig::hash() const {
    // FNV-1a over the serialized text, output directory excluded so moving a
    // run does not change its identity.
    RunConfig c = *this;
    c.output_directory.clear();
    std::string text = c.to_text();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (key == "run.model") {
        if (v == "burgers")
            model = ModelKind::Burgers;
        else if (v == "euler")
            model = ModelKind::Euler;
        else
            fail(ErrorCode::ConfigError, "unknown model '" + v + "'");
    } else if (key == "run.grid_n") {
        grid_n = static_cast<int>(parse_long(v, key));
    } else if (key == "run.initial_condition") {
        initial_condition = v;
    } else if (key == "run.viscosity") {
        viscosity = parse_double(v, key);
    } else if (key == "run.epsilon") {
        rescale.epsilon = parse_double(v, key);
    } else if (key == "run.max_cycles") {
        rescale.max_cycles = static_cast<int>(parse_long(v, key));
    } else if (key == "run.vorticity_mode") {
        if (v == "component")
            rescale.vorticity_mode = VorticityMode::Component;
        else if (v == "modulus")
            rescale.vorticity_mode = VorticityMode::Modulus;
        else
            fail(ErrorCode::ConfigError, "unknown vorticity_mode '" + v + "'");
    } else if (key == "run.cycle_time_cap") {
        rescale.cycle_time_cap = parse_double(v, key);
    } else if (key == "integrator.tol_per_unit_step") {
        integrator.tol_per_unit_step = parse_double(v, key);
    } else if (key == "integrator.dt_init") {
        integrator.dt_init = parse_double(v, key);
    } else if (key == "integrator.dt_min") {
        integrator.dt_min = parse_double(v, key);
    } else if (key == "integrator.dt_max") {
        integrator.dt_max = parse_double(v, key);
    } else if (key == "integrator.safety_factor") {
        integrator.safety_factor = parse_double(v, key);
    } else if (key == "fringe.profile") {
        rescale.fringe_profile = v;
    } else if (key == "fringe.runtime_forcing") {
        rescale.fringe_runtime_forcing = parse_bool(v, key);
    } else if (key == "fringe.forcing_strength") {
        rescale.forcing_strength = parse_double(v, key);
    } else if (key == "diagnostics.orders") {
        diagnostics.orders.clear();
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ','))
            diagnostics.orders.push_back(static_cast<int>(parse_long(trim(item), key)));
    } else if (key == "diagnostics.max_separation_cells") {
        diagnostics.max_separation_cells = static_cast<int>(parse_long(v, key));
    } else if (key == "diagnostics.fit_range") {
        if (v == "auto") {
            diagnostics.fit_range_auto = true;
        } else {
            auto colon = v.find(':');
            if (colon == std::string::npos)
                fail(ErrorCode::ConfigError, "fit_range must be 'auto' or RMIN:RMAX");
            diagnostics.fit_range_auto = false;
            diagnostics.fit_r_min = parse_double(trim(v.substr(0, colon)), key);
            diagnostics.fit_r_max = parse_double(trim(v.substr(colon + 1)), key);
        }
    } else if (key == "diagnostics.exclude_cycle0") {
        diagnostics.exclude_cycle0 = parse_bool(v, key);
    } else if (key == "diagnostics.blowup_tail") {
        diagnostics.blowup_tail = static_cast<int>(parse_long(v, key));
    } else if (key == "output.directory") {
        output_directory = v;
    } else if (key == "output.seed") {
        seed = static_cast<std::uint64_t>(parse_long(v, key));
    } else {
        fail(ErrorCode::ConfigError, "unknown config key '" + key + "'");
    }
}

std::string RunConfig::get(const std::string& key) const {
    // serialize and scan; config surface is small enough for this to be fine
    std::istringstream is(to_text());
    std::string line, section;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string k = section + "." + trim(line.substr(0, eq));
        if (k == key) return trim(line.substr(eq + 1));
    }
    fail(ErrorCode::ConfigError, "unknown config key '" + key + "'");
}

RunConfig RunConfig::parse_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(ErrorCode::ConfigError, "bad section header at line " + std::to_string(lineno));
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::ConfigError, "expected key = value at line " + std::to_string(lineno));
        std::string key = section + "." + trim(line.substr(0, eq));
        cfg.set(key, trim(line.substr(eq + 1)));
    }
    return cfg;
}

RunConfig RunConfig::load_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail(ErrorCode::ConfigError, "cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_text(ss.str());
}

RunConfig RunConfig::preset(const std::string& name) {
    RunConfig cfg;
    if (name == "burgers_calibration") {
        cfg.model = ModelKind::Burgers;
        cfg.grid_n = 1024;
        cfg.initial_condition = "cos-x";
        cfg.rescale.epsilon = 2.5e-7;
        cfg.rescale.max_cycles = 45;
        cfg.diagnostics.orders = {2, 3, 4, 5};
        return cfg;
    }
    if (name == "euler_tg_32" || name == "euler_eps_1e-3" || name == "euler_eps_1e-5") {
        cfg.model = ModelKind::Euler;
        cfg.grid_n = 32;
        cfg.initial_condition = "taylor-green";
        cfg.rescale.epsilon = name == "euler_eps_1e-3"   ? 1e-3
                              : name == "euler_eps_1e-5" ? 1e-5
                                                         : 1e-4;
        cfg.rescale.max_cycles = 45;
        cfg.rescale.cycle_time_cap = 50.0;
        cfg.diagnostics.orders = {2, 3, 4};
        return cfg;
    }
    fail(ErrorCode::ConfigError, "unknown preset '" + name + "'");
}

std::vector<std::string> RunConfig::preset_names() {
    return {"burgers_calibration", "euler_tg_32", "euler_eps_1e-3", "euler_eps_1e-5"};
}

} // namespace specwin
