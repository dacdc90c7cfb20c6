#include "runner.hpp"

#include "checkpoint.hpp"
#include "fft.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

namespace specwin {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kAdvectionForm =
    "divergence (equals convective on divergence-free states)";

int env_threads() {
    const char* v = std::getenv("SPECWIN_THREADS");
    if (!v) return 1;
    int t = std::atoi(v);
    return t < 1 ? 1 : t;
}

std::string fmt17(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string cycle_checkpoint_name(int cycle) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "checkpoints/cycle_%03d.swck", cycle);
    return buf;
}

std::string table_name(int cycle, int order, SfFlavor flavor) {
    std::ostringstream os;
    os << "tables/";
    if (cycle < 0)
        os << "averaged";
    else {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "cycle_%03d", cycle);
        os << buf;
    }
    os << "_S" << order << "_" << sf_flavor_name(flavor) << ".csv";
    return os.str();
}

void write_table_csv(const std::string& path, const StructureFunctionTable& t) {
    std::ofstream os(path);
    if (!os) fail(ErrorCode::IoError, "cannot write '" + path + "'");
    os << "r,S_n,variance\n";
    for (std::size_t i = 0; i < t.r.size(); ++i)
        os << fmt17(t.r[i]) << "," << fmt17(t.values[i]) << "," << fmt17(t.variance[i]) << "\n";
}

SpectralField initial_state(const RunConfig& cfg) {
    Grid grid(cfg.model == ModelKind::Burgers ? 1 : 3, cfg.grid_n);
    if (cfg.initial_condition == "cos-x") {
        SpectralField f(grid, 1);
        f.at(0, mode_index(1, grid.n)) = 0.5;
        f.at(0, mode_index(-1, grid.n)) = 0.5;
        return f;
    }
    if (cfg.initial_condition == "taylor-green") return taylor_green(grid).field;
    if (cfg.initial_condition.rfind("file:", 0) == 0) {
        std::string path = cfg.initial_condition.substr(5);
        LoadedCheckpoint lc = load_checkpoint(path);
        if (!(lc.snapshot.pre_restart.grid() == grid))
            fail(ErrorCode::ConfigError, "initial-condition file grid does not match config");
        SpectralField f = lc.snapshot.pre_restart;
        if (cfg.model == ModelKind::Euler) leray_project_inplace(f);
        return f;
    }
    fail(ErrorCode::ConfigError, "unknown initial condition '" + cfg.initial_condition + "'");
}

} // namespace

// ============================================================================
// Manifest io
// ============================================================================

void save_manifest(const std::string& path, const Manifest& mf) {
    std::ofstream os(path);
    if (!os) fail(ErrorCode::IoError, "cannot write manifest '" + path + "'");
    os << "# specwin manifest\n";
    os << "format = " << mf.format << "\n";
    os << "code_version = " << mf.code_version << "\n";
    os << "tableau = " << mf.tableau << "\n";
    os << "advection_form = " << mf.advection_form << "\n";
    os << "fft_planner = " << mf.fft_planner << "\n";
    os << "threads = " << mf.threads << "\n";
    os << "status = " << mf.status << "\n";
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(mf.config_hash));
    os << "config_hash = " << hash << "\n";
    os << "cycles = " << mf.cycles << "\n";
    os << "total_time_original = " << fmt17(mf.total_time) << "\n";
    os << "estimated_singularity_time = " << fmt17(mf.estimated_singularity_time) << "\n";
    os << "wall_seconds = " << fmt17(mf.wall_seconds) << "\n";
    os << "checkpoints = " << mf.checkpoints.size() << "\n";
    for (std::size_t i = 0; i < mf.checkpoints.size(); ++i)
        os << "checkpoint_" << i << " = " << mf.checkpoints[i].first << ";"
           << mf.checkpoints[i].second << "\n";
    os << "config_begin\n" << mf.config_text << "config_end\n";
}

Manifest load_manifest(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail(ErrorCode::IoError, "cannot open manifest '" + path + "'");
    Manifest mf;
    mf.dir = fs::path(path).parent_path().string();
    std::string line;
    bool in_config = false;
    std::map<std::string, std::string> kv;
    std::vector<std::string> cp_lines;
    while (std::getline(is, line)) {
        if (in_config) {
            if (line == "config_end") {
                in_config = false;
                continue;
            }
            mf.config_text += line + "\n";
            continue;
        }
        if (line == "config_begin") {
            in_config = true;
            continue;
        }
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        while (!key.empty() && key.back() == ' ') key.pop_back();
        std::string val = line.substr(eq + 1);
        while (!val.empty() && val.front() == ' ') val.erase(val.begin());
        if (key.rfind("checkpoint_", 0) == 0)
            cp_lines.push_back(val);
        else
            kv[key] = val;
    }
    auto want = [&](const std::string& k) -> std::string {
        auto it = kv.find(k);
        if (it == kv.end()) fail(ErrorCode::IoError, "manifest misses key '" + k + "'");
        return it->second;
    };
    mf.format = std::stoi(want("format"));
    mf.code_version = want("code_version");
    mf.tableau = want("tableau");
    mf.advection_form = want("advection_form");
    mf.fft_planner = want("fft_planner");
    mf.threads = std::stoi(want("threads"));
    mf.status = want("status");
    mf.config_hash = std::stoull(want("config_hash"), nullptr, 16);
    mf.cycles = std::stoi(want("cycles"));
    mf.total_time = std::stod(want("total_time_original"));
    mf.estimated_singularity_time = std::stod(want("estimated_singularity_time"));
    mf.wall_seconds = std::stod(want("wall_seconds"));
    for (const std::string& v : cp_lines) {
        auto semi = v.find(';');
        if (semi == std::string::npos)
            fail(ErrorCode::IoError, "bad checkpoint entry in manifest");
        mf.checkpoints.emplace_back(v.substr(0, semi),
                                    std::stoull(v.substr(semi + 1)));
    }
    return mf;
}

// ============================================================================
// Shared analysis pipeline
// ============================================================================

namespace {

struct CycleAnalysis {
    LedgerEntry entry;
    std::vector<StructureFunctionTable> tables;
    std::vector<DiagnosticsSample> samples;
    double max_velocity = 0.0;
};

std::vector<double> separation_grid(const RunConfig& cfg) {
    int n = cfg.grid_n;
    int cells = cfg.diagnostics.max_separation_cells;
    if (cells == 0) cells = n / 2;
    std::vector<double> r(cells + 1);
    for (int j = 0; j <= cells; ++j) r[j] = j * (two_pi / n);
    return r;
}

CycleAnalysis analyze_cycle(const RunConfig& cfg, const LoadedCheckpoint& lc,
                            const std::vector<double>& rgrid, int threads) {
    CycleAnalysis out;
    out.entry = lc.entry;
    out.samples = lc.snapshot.samples;
    PhysicalField phys = inverse_transform_unchecked(lc.snapshot.pre_restart);
    out.max_velocity = phys.max_abs();

    struct Task {
        int order;
        SfFlavor flavor;
    };
    std::vector<Task> tasks;
    for (int o : cfg.diagnostics.orders) tasks.push_back({o, SfFlavor::ScalarAxis});
    if (cfg.model == ModelKind::Euler) {
        tasks.push_back({2, SfFlavor::Longitudinal});
        tasks.push_back({2, SfFlavor::Transverse});
    }

    out.tables.resize(tasks.size());
    auto compute = [&](std::size_t idx) {
        const Task& t = tasks[idx];
        StructureFunctionTable table =
            cfg.model == ModelKind::Burgers
                ? structure_function_1d(phys, t.order, rgrid)
                : structure_function_3d(phys, t.order, rgrid, t.flavor);
        table.cycle = lc.snapshot.cycle;
        out.tables[idx] = std::move(table);
    };

    if (threads <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) compute(i);
    } else {
        std::vector<std::future<void>> fut;
        for (std::size_t i = 0; i < tasks.size(); ++i)
            fut.push_back(std::async(std::launch::async, compute, i));
        for (auto& f : fut) f.get();
    }
    return out;
}

RunSummary analysis_pipeline(const RunConfig& cfg, const Manifest& mf,
                             const AnalyzeOptions& opts, const std::string& out_dir,
                             const LogFn& log) {
    RunSummary summary;
    summary.out_dir = out_dir;
    summary.manifest_path = (fs::path(mf.dir) / "manifest.txt").string();
    summary.complete = mf.status == "complete";
    summary.cycles = mf.cycles;

    const bool exclude_cycle0 = opts.override_exclude_cycle0 ? opts.exclude_cycle0
                                                             : cfg.diagnostics.exclude_cycle0;
    const int threads = env_threads();
    fs::create_directories(fs::path(out_dir) / "tables");

    std::vector<double> rgrid = separation_grid(cfg);
    CycleLedger ledger;
    std::vector<std::vector<DiagnosticsSample>> samples_per_cycle;
    std::vector<std::vector<StructureFunctionTable>> tables_per_cycle;
    summary.max_velocity_low = 0.0;
    summary.max_velocity_high = 0.0;

    for (std::size_t i = 0; i < mf.checkpoints.size(); ++i) {
        fs::path cp = fs::path(mf.dir) / mf.checkpoints[i].first;
        std::error_code ec;
        auto sz = fs::file_size(cp, ec);
        if (ec || sz != mf.checkpoints[i].second)
            fail(ErrorCode::MissingCheckpoint,
                 "checkpoint '" + cp.string() + "' is missing or was modified");
        LoadedCheckpoint lc = load_checkpoint(cp.string());
        CycleAnalysis ca = analyze_cycle(cfg, lc, rgrid, threads);

        ledger.push([&] {
            LedgerEntry e = ca.entry;
            e.accumulated_original = 0.0; // recomputed by the ledger
            return e;
        }());
        samples_per_cycle.push_back(std::move(ca.samples));
        for (auto& t : ca.tables) {
            write_table_csv((fs::path(out_dir) / table_name(t.cycle, t.order, t.flavor)).string(),
                            t);
        }
        tables_per_cycle.push_back(std::move(ca.tables));
        if (i == 0) {
            summary.max_velocity_low = summary.max_velocity_high = ca.max_velocity;
        } else {
            summary.max_velocity_low = std::min(summary.max_velocity_low, ca.max_velocity);
            summary.max_velocity_high = std::max(summary.max_velocity_high, ca.max_velocity);
        }
    }

    summary.total_time = ledger.total_original_time();
    summary.estimated_singularity_time = ledger.estimated_singularity_time();
    summary.ledger = ledger.entries();
    if (ledger.entries().size() > 1) {
        double w0 = ledger.entries().front().max_vort_original;
        double w1 = ledger.entries().back().max_vort_original;
        summary.vorticity_growth = w0 > 0 ? w1 / w0 : 0.0;
    }

    // averaged tables + fits
    if (!tables_per_cycle.empty()) {
        const std::size_t ntab = tables_per_cycle.front().size();
        for (std::size_t q = 0; q < ntab; ++q) {
            std::vector<StructureFunctionTable> group;
            for (const auto& per_cycle : tables_per_cycle) group.push_back(per_cycle[q]);
            StructureFunctionTable avg = average_over_cycles(group, exclude_cycle0);
            write_table_csv((fs::path(out_dir) / table_name(-1, avg.order, avg.flavor)).string(),
                            avg);

            double rmin, rmax;
            if (opts.override_fit_range) {
                rmin = opts.fit_r_min;
                rmax = opts.fit_r_max;
            } else if (!cfg.diagnostics.fit_range_auto) {
                rmin = cfg.diagnostics.fit_r_min;
                rmax = cfg.diagnostics.fit_r_max;
            } else {
                std::tie(rmin, rmax) = detect_core_range(avg);
            }
            std::string key = "S" + std::to_string(avg.order) + "_" + sf_flavor_name(avg.flavor);
            try {
                summary.fits[key] = fit_power_law(avg, rmin, rmax);
            } catch (const Error& e) {
                if (log) log("warning: fit for " + key + " failed: " + e.what());
            }
        }
    }

    // blow-up diagnostics from the original-frame series
    std::vector<double> ts, ws;
    original_frame_series(ledger, samples_per_cycle, cfg.rescale.params, ts, ws);
    if (!ts.empty()) {
        summary.bkm = bkm_integral(ts, ws);
        // samples at or beyond T_est (possible when the increment tail cannot
        // be extrapolated) are excluded from the fit
        double t_est = ledger.estimated_singularity_time();
        std::vector<double> fts, fws;
        for (std::size_t i = 0; i < ts.size(); ++i)
            if (ts[i] < t_est) {
                fts.push_back(ts[i]);
                fws.push_back(ws[i]);
            }
        int tail = std::min<int>(cfg.diagnostics.blowup_tail, static_cast<int>(fts.size()));
        try {
            summary.blowup = fit_blowup_exponent(fts, fws, t_est, tail);
        } catch (const Error& e) {
            if (log) log(std::string("warning: blow-up fit failed: ") + e.what());
        }
    }

    // JSON summary
    json j;
    j["format"] = 1;
    j["code_version"] = mf.code_version;
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(mf.config_hash));
    j["config_hash"] = hash;
    j["model"] = cfg.model == ModelKind::Burgers ? "burgers" : "euler";
    j["grid_n"] = cfg.grid_n;
    j["epsilon"] = cfg.rescale.epsilon;
    j["tableau"] = mf.tableau;
    j["advection_form"] = mf.advection_form;
    j["status"] = mf.status;
    j["cycles"] = summary.cycles;
    j["exclude_cycle0"] = exclude_cycle0;
    j["total_time_original"] = summary.total_time;
    j["estimated_singularity_time"] = summary.estimated_singularity_time;
    j["bkm_integral"] = summary.bkm;
    j["blowup_fit"] = {{"T_est", summary.blowup.T_est},
                       {"zeta", summary.blowup.zeta},
                       {"zeta_stderr", summary.blowup.zeta_stderr},
                       {"intercept", summary.blowup.intercept},
                       {"points_used", summary.blowup.points_used}};
    j["max_velocity"] = {{"low", summary.max_velocity_low},
                         {"high", summary.max_velocity_high}};
    j["vorticity_growth_original_frame"] = summary.vorticity_growth;
    json fits = json::object();
    for (const auto& [key, fr] : summary.fits)
        fits[key] = {{"slope", fr.slope},       {"intercept", fr.intercept},
                     {"slope_stderr", fr.slope_stderr}, {"r_min", fr.r_min},
                     {"r_max", fr.r_max},       {"points", fr.points},
                     {"sign", fr.sign}};
    j["structure_function_fits"] = fits;
    json jledger = json::array();
    for (const LedgerEntry& e : summary.ledger) {
        json je;
        je["cycle"] = e.cycle;
        je["t_local"] = e.t_local;
        je["increment_original"] = e.increment_original;
        je["accumulated_original"] = e.accumulated_original;
        je["max_vort_local"] = e.max_vort_local;
        je["max_vort_original"] = e.max_vort_original;
        je["viscosity"] = e.viscosity;
        je["zoom"] = e.zoom;
        je["center_local"] = e.center_local;
        je["center_original"] = e.center_original;
        je["accepted_steps"] = e.accepted_steps;
        je["rejected_steps"] = e.rejected_steps;
        je["taylor_warnings"] = e.taylor_warnings;
        je["stop"] = e.stop_reason;
        jledger.push_back(je);
    }
    j["ledger"] = jledger;

    std::ofstream os(fs::path(out_dir) / "summary.json");
    if (!os) fail(ErrorCode::IoError, "cannot write summary.json");
    os << j.dump(2) << "\n";
    return summary;
}

} // namespace

// ============================================================================
// run / analyze entry points
// ============================================================================

RunSummary run(const RunConfig& cfg_in, const std::string& out_dir, const LogFn& log) {
    RunConfig cfg = cfg_in;
    cfg.output_directory = out_dir;
    cfg.validate();

    fs::create_directories(fs::path(out_dir) / "checkpoints");
    fs::create_directories(fs::path(out_dir) / "tables");

    const auto t0 = std::chrono::steady_clock::now();
    Grid grid(cfg.model == ModelKind::Burgers ? 1 : 3, cfg.grid_n);
    std::unique_ptr<CascadeModel> model = cfg.model == ModelKind::Burgers
                                              ? make_burgers_model(grid)
                                              : make_euler_model(grid);
    SpectralField init = initial_state(cfg);

    Manifest mf;
    mf.code_version = code_version;
    mf.tableau = integrator_tableau_name();
    mf.advection_form = cfg.model == ModelKind::Euler ? kAdvectionForm : "n/a (1d)";
    mf.fft_planner = "estimate";
    mf.threads = env_threads();
    mf.config_hash = cfg.hash();
    mf.config_text = cfg.to_text();

    // checkpoints are written as cycles complete, so a failed run still
    // leaves partial outputs behind
    SnapshotSink sink = [&](CycleSnapshot&& snap, const LedgerEntry& entry) {
        std::string rel = cycle_checkpoint_name(snap.cycle);
        std::string path = (fs::path(out_dir) / rel).string();
        save_checkpoint(path, snap, entry);
        mf.checkpoints.emplace_back(rel, fs::file_size(path));
    };

    CascadeResult cres = run_cascade(*model, std::move(init), cfg.viscosity, cfg.rescale,
                                     cfg.integrator, sink, log);

    mf.status = cres.completed ? "complete" : "incomplete";
    mf.cycles = static_cast<int>(cres.ledger.entries().size());
    mf.total_time = cres.ledger.total_original_time();
    mf.estimated_singularity_time = cres.ledger.estimated_singularity_time();
    mf.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::string manifest_path = (fs::path(out_dir) / "manifest.txt").string();
    save_manifest(manifest_path, mf);

    if (!cres.completed) {
        RunSummary s;
        s.manifest_path = manifest_path;
        s.out_dir = out_dir;
        s.complete = false;
        s.failure = cres.failure;
        s.cycles = mf.cycles;
        s.total_time = mf.total_time;
        return s;
    }

    Manifest loaded = load_manifest(manifest_path);
    RunSummary s = analysis_pipeline(cfg, loaded, AnalyzeOptions{}, out_dir, log);
    s.manifest_path = manifest_path;
    return s;
}

RunSummary analyze(const std::string& manifest_path, const AnalyzeOptions& opts,
                   const LogFn& log) {
    Manifest mf = load_manifest(manifest_path);
    if (mf.status != "complete")
        fail(ErrorCode::MissingCheckpoint, "manifest '" + manifest_path + "' marks an incomplete run");
    RunConfig cfg = RunConfig::parse_text(mf.config_text);
    std::string out_dir = opts.out_dir.empty() ? mf.dir : opts.out_dir;
    RunSummary s = analysis_pipeline(cfg, mf, opts, out_dir, log);
    s.manifest_path = manifest_path;
    return s;
}

} // namespace specwin
