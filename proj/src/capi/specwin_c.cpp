#include "specwin.h"

#include "../core/runner.hpp"

#include <cstdio>
#include <cstring>
#include <string>

using namespace specwin;

struct specwin_config {
    RunConfig cfg;
};

struct specwin_result {
    RunSummary summary;
};

namespace {

thread_local std::string g_last_error;

specwin_status map_error(const Error& e) {
    g_last_error = e.what();
    switch (e.code()) {
    case ErrorCode::ConfigError: return SPECWIN_ERR_CONFIG;
    case ErrorCode::IoError: return SPECWIN_ERR_IO;
    case ErrorCode::MissingCheckpoint: return SPECWIN_ERR_MISSING_DATA;
    case ErrorCode::NonFiniteState:
    case ErrorCode::StepUnderflow:
    case ErrorCode::CycleDegenerate: return SPECWIN_ERR_NUMERICAL;
    default: return SPECWIN_ERR_INTERNAL;
    }
}

template <typename Fn>
specwin_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        return map_error(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SPECWIN_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return SPECWIN_ERR_INTERNAL;
    }
}

specwin_status copy_out(const std::string& s, char* buf, size_t buflen) {
    if (!buf || buflen == 0) {
        g_last_error = "null output buffer";
        return SPECWIN_ERR_INVALID_ARG;
    }
    std::snprintf(buf, buflen, "%s", s.c_str());
    return SPECWIN_OK;
}

specwin_status bad_arg(const char* what) {
    g_last_error = what;
    return SPECWIN_ERR_INVALID_ARG;
}

AnalyzeOptions parse_options(const char* options) {
    AnalyzeOptions opts;
    if (!options) return opts;
    std::string s(options);
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t semi = s.find(';', pos);
        std::string item = s.substr(pos, semi == std::string::npos ? std::string::npos
                                                                   : semi - pos);
        pos = semi == std::string::npos ? s.size() : semi + 1;
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::ConfigError, "analyze option '" + item + "' is not key=value");
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        if (key == "fit_range") {
            auto colon = val.find(':');
            if (colon == std::string::npos)
                fail(ErrorCode::ConfigError, "fit_range option must be RMIN:RMAX");
            opts.override_fit_range = true;
            opts.fit_r_min = std::stod(val.substr(0, colon));
            opts.fit_r_max = std::stod(val.substr(colon + 1));
        } else if (key == "exclude_cycle0") {
            opts.override_exclude_cycle0 = true;
            opts.exclude_cycle0 = val == "true" || val == "1";
        } else if (key == "out") {
            opts.out_dir = val;
        } else {
            fail(ErrorCode::ConfigError, "unknown analyze option '" + key + "'");
        }
    }
    return opts;
}

} // namespace

extern "C" {

unsigned specwin_abi_version(void) { return 1; }

const char* specwin_version_string(void) { return code_version; }

const char* specwin_status_name(specwin_status status) {
    switch (status) {
    case SPECWIN_OK: return "ok";
    case SPECWIN_ERR_INVALID_ARG: return "invalid_argument";
    case SPECWIN_ERR_CONFIG: return "config_error";
    case SPECWIN_ERR_NUMERICAL: return "numerical_failure";
    case SPECWIN_ERR_IO: return "io_error";
    case SPECWIN_ERR_MISSING_DATA: return "missing_data";
    case SPECWIN_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* specwin_last_error(void) { return g_last_error.c_str(); }

specwin_status specwin_config_preset(const char* name, specwin_config** out) {
    if (!name || !out) return bad_arg("name and out must be non-null");
    return guarded([&] {
        *out = new specwin_config{RunConfig::preset(name)};
        return SPECWIN_OK;
    });
}

specwin_status specwin_config_load(const char* path, specwin_config** out) {
    if (!path || !out) return bad_arg("path and out must be non-null");
    return guarded([&] {
        *out = new specwin_config{RunConfig::load_file(path)};
        return SPECWIN_OK;
    });
}

specwin_status specwin_config_parse(const char* text, specwin_config** out) {
    if (!text || !out) return bad_arg("text and out must be non-null");
    return guarded([&] {
        *out = new specwin_config{RunConfig::parse_text(text)};
        return SPECWIN_OK;
    });
}

specwin_status specwin_config_set(specwin_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) return bad_arg("cfg, key and value must be non-null");
    return guarded([&] {
        cfg->cfg.set(key, value);
        return SPECWIN_OK;
    });
}

specwin_status specwin_config_get(const specwin_config* cfg, const char* key, char* buf,
                                  size_t buflen) {
    if (!cfg || !key) return bad_arg("cfg and key must be non-null");
    return guarded([&] { return copy_out(cfg->cfg.get(key), buf, buflen); });
}

specwin_status specwin_config_validate(const specwin_config* cfg) {
    if (!cfg) return bad_arg("cfg must be non-null");
    return guarded([&] {
        cfg->cfg.validate();
        return SPECWIN_OK;
    });
}

void specwin_config_free(specwin_config* cfg) { delete cfg; }

specwin_status specwin_run(const specwin_config* cfg, const char* out_dir,
                           specwin_result** out) {
    if (!cfg || !out_dir || !out) return bad_arg("cfg, out_dir and out must be non-null");
    return guarded([&]() -> specwin_status {
        RunSummary s = specwin::run(cfg->cfg, out_dir);
        auto* r = new specwin_result{std::move(s)};
        *out = r;
        if (!r->summary.complete) {
            g_last_error = r->summary.failure;
            return SPECWIN_ERR_NUMERICAL;
        }
        return SPECWIN_OK;
    });
}

specwin_status specwin_analyze(const char* manifest_path, const char* options,
                               specwin_result** out) {
    if (!manifest_path || !out) return bad_arg("manifest_path and out must be non-null");
    return guarded([&] {
        AnalyzeOptions opts = parse_options(options);
        *out = new specwin_result{specwin::analyze(manifest_path, opts)};
        return SPECWIN_OK;
    });
}

specwin_status specwin_result_total_time(const specwin_result* r, double* out) {
    if (!r || !out) return bad_arg("r and out must be non-null");
    *out = r->summary.total_time;
    return SPECWIN_OK;
}

specwin_status specwin_result_estimated_blowup_time(const specwin_result* r, double* out) {
    if (!r || !out) return bad_arg("r and out must be non-null");
    *out = r->summary.estimated_singularity_time;
    return SPECWIN_OK;
}

specwin_status specwin_result_cycle_count(const specwin_result* r, int* out) {
    if (!r || !out) return bad_arg("r and out must be non-null");
    *out = r->summary.cycles;
    return SPECWIN_OK;
}

specwin_status specwin_result_bkm_integral(const specwin_result* r, double* out) {
    if (!r || !out) return bad_arg("r and out must be non-null");
    *out = r->summary.bkm;
    return SPECWIN_OK;
}

specwin_status specwin_result_blowup_exponent(const specwin_result* r, double* zeta,
                                              double* zeta_stderr) {
    if (!r || !zeta) return bad_arg("r and zeta must be non-null");
    *zeta = r->summary.blowup.zeta;
    if (zeta_stderr) *zeta_stderr = r->summary.blowup.zeta_stderr;
    return SPECWIN_OK;
}

static specwin_status find_fit(const specwin_result* r, int order, const char* flavor,
                               const FitResult** out) {
    if (!r || !flavor) return bad_arg("r and flavor must be non-null");
    std::string key = "S" + std::to_string(order) + "_" + flavor;
    auto it = r->summary.fits.find(key);
    if (it == r->summary.fits.end()) {
        g_last_error = "no fit named " + key;
        return SPECWIN_ERR_MISSING_DATA;
    }
    *out = &it->second;
    return SPECWIN_OK;
}

specwin_status specwin_result_fit_slope(const specwin_result* r, int order, const char* flavor,
                                        double* slope, double* slope_stderr) {
    const FitResult* fr = nullptr;
    specwin_status st = find_fit(r, order, flavor, &fr);
    if (st != SPECWIN_OK) return st;
    if (!slope) return bad_arg("slope must be non-null");
    *slope = fr->slope;
    if (slope_stderr) *slope_stderr = fr->slope_stderr;
    return SPECWIN_OK;
}

specwin_status specwin_result_fit_sign(const specwin_result* r, int order, const char* flavor,
                                       int* sign) {
    const FitResult* fr = nullptr;
    specwin_status st = find_fit(r, order, flavor, &fr);
    if (st != SPECWIN_OK) return st;
    if (!sign) return bad_arg("sign must be non-null");
    *sign = fr->sign;
    return SPECWIN_OK;
}

specwin_status specwin_result_manifest_path(const specwin_result* r, char* buf, size_t buflen) {
    if (!r) return bad_arg("r must be non-null");
    return copy_out(r->summary.manifest_path, buf, buflen);
}

void specwin_result_free(specwin_result* r) { delete r; }

} // extern "C"
