// specwin command line: drives the shared-library C API.
//   specwin run     --preset NAME | --config FILE  --out DIR [--set k=v ...]
//   specwin analyze --manifest FILE [--fit-range a:b] [--exclude-cycle0 0|1] [--out DIR]
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 io/missing data, 5 internal.

#include <specwin.h>

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace {

int exit_code(specwin_status st) {
    switch (st) {
    case SPECWIN_OK: return 0;
    case SPECWIN_ERR_INVALID_ARG:
    case SPECWIN_ERR_CONFIG: return 2;
    case SPECWIN_ERR_NUMERICAL: return 3;
    case SPECWIN_ERR_IO:
    case SPECWIN_ERR_MISSING_DATA: return 4;
    case SPECWIN_ERR_INTERNAL: return 5;
    }
    return 5;
}

int report(specwin_status st, const char* action) {
    std::fprintf(stderr, "specwin: %s failed (%s): %s\n", action, specwin_status_name(st),
                 specwin_last_error());
    return exit_code(st);
}

void print_result(specwin_result* res) {
    double total = 0, test = 0, bkm = 0, zeta = 0, zeta_err = 0;
    int cycles = 0;
    specwin_result_total_time(res, &total);
    specwin_result_estimated_blowup_time(res, &test);
    specwin_result_cycle_count(res, &cycles);
    specwin_result_bkm_integral(res, &bkm);
    specwin_result_blowup_exponent(res, &zeta, &zeta_err);
    std::printf("cycles                 %d\n", cycles);
    std::printf("total time (original)  %.6f\n", total);
    std::printf("estimated blow-up time %.6f\n", test);
    std::printf("bkm integral           %.4f\n", bkm);
    std::printf("zeta                   %.4f +- %.4f\n", zeta, zeta_err);
    for (int order = 2; order <= 5; ++order) {
        for (const char* flavor : {"scalar", "longitudinal", "transverse"}) {
            double slope = 0, err = 0;
            if (specwin_result_fit_slope(res, order, flavor, &slope, &err) == SPECWIN_OK)
                std::printf("S%d %-12s slope   %.4f +- %.4f\n", order, flavor, slope, err);
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"successive-rescaling pseudospectral solver"};
    app.require_subcommand(1);

    std::string preset, config_path, out_dir, manifest, fit_range;
    std::vector<std::string> overrides;
    int exclude_cycle0 = -1;

    CLI::App* run_cmd = app.add_subcommand("run", "execute a configured cascade");
    run_cmd->add_option("--preset", preset, "named preset (burgers_calibration, euler_tg_32, ...)");
    run_cmd->add_option("--config", config_path, "config file path");
    run_cmd->add_option("--out", out_dir, "output directory")->required();
    run_cmd->add_option("--set", overrides, "override config entries, section.key=value");

    CLI::App* an_cmd = app.add_subcommand("analyze", "recompute diagnostics from checkpoints");
    an_cmd->add_option("--manifest", manifest, "manifest.txt of a completed run")->required();
    an_cmd->add_option("--fit-range", fit_range, "override fit range, RMIN:RMAX");
    an_cmd->add_option("--exclude-cycle0", exclude_cycle0, "1 to exclude cycle 0, 0 to include");
    an_cmd->add_option("--out", out_dir, "write outputs to this directory instead");

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) {
        if (preset.empty() == config_path.empty()) {
            std::fprintf(stderr, "specwin: pass exactly one of --preset or --config\n");
            return 2;
        }
        specwin_config* cfg = nullptr;
        specwin_status st = preset.empty() ? specwin_config_load(config_path.c_str(), &cfg)
                                           : specwin_config_preset(preset.c_str(), &cfg);
        if (st != SPECWIN_OK) return report(st, "config");
        for (const std::string& kv : overrides) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) {
                std::fprintf(stderr, "specwin: --set expects section.key=value, got '%s'\n",
                             kv.c_str());
                specwin_config_free(cfg);
                return 2;
            }
            st = specwin_config_set(cfg, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
            if (st != SPECWIN_OK) {
                specwin_config_free(cfg);
                return report(st, "config override");
            }
        }
        st = specwin_config_validate(cfg);
        if (st != SPECWIN_OK) {
            specwin_config_free(cfg);
            return report(st, "config validation");
        }
        specwin_result* res = nullptr;
        st = specwin_run(cfg, out_dir.c_str(), &res);
        specwin_config_free(cfg);
        if (st != SPECWIN_OK) {
            if (res) specwin_result_free(res);
            return report(st, "run");
        }
        print_result(res);
        char buf[4096];
        if (specwin_result_manifest_path(res, buf, sizeof(buf)) == SPECWIN_OK)
            std::printf("manifest               %s\n", buf);
        specwin_result_free(res);
        return 0;
    }

    // analyze
    std::string options;
    if (!fit_range.empty()) options += "fit_range=" + fit_range + ";";
    if (exclude_cycle0 == 0) options += "exclude_cycle0=false;";
    if (exclude_cycle0 == 1) options += "exclude_cycle0=true;";
    if (!out_dir.empty()) options += "out=" + out_dir + ";";

    specwin_result* res = nullptr;
    specwin_status st =
        specwin_analyze(manifest.c_str(), options.empty() ? nullptr : options.c_str(), &res);
    if (st != SPECWIN_OK) {
        if (res) specwin_result_free(res);
        return report(st, "analyze");
    }
    print_result(res);
    specwin_result_free(res);
    return 0;
}
