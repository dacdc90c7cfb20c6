#include "cascade.hpp"

#include "burgers.hpp"
#include "fft.hpp"
#include "shells.hpp"

#include <algorithm>
#include <cmath>

namespace specwin {

// ============================================================================
// Config / ledger
// ============================================================================

void RescaleConfig::validate() const {
    if (!(epsilon > 0)) fail(ErrorCode::ConfigError, "epsilon must be positive");
    if (max_cycles < 0) fail(ErrorCode::ConfigError, "max_cycles must be >= 0");
    if (!(cycle_time_cap > 0)) fail(ErrorCode::ConfigError, "cycle_time_cap must be positive");
    if (forcing_strength < 0) fail(ErrorCode::ConfigError, "forcing_strength must be >= 0");
    params.validate();
    fringe_ramp(0.5, fringe_profile); // rejects unknown profiles
}

void CycleLedger::push(LedgerEntry e) {
    total_ += e.increment_original;
    e.accumulated_original = total_;
    entries_.push_back(std::move(e));
}

double CycleLedger::estimated_singularity_time() const {
    if (entries_.size() < 3) return total_;
    double d1 = entries_[entries_.size() - 2].increment_original;
    double d2 = entries_.back().increment_original;
    if (d1 <= 0 || d2 <= 0 || d2 >= d1) return total_;
    double rho = d2 / d1;
    return total_ + d2 * rho / (1.0 - rho);
}

// ============================================================================
// Models
// ============================================================================

namespace {

class BurgersCascadeModel : public CascadeModel {
public:
    explicit BurgersCascadeModel(Grid g) : grid_(g) {}
    Grid grid() const override { return grid_; }
    int ncomp() const override { return 1; }

    RhsFn make_rhs(double viscosity, const FringeForcing* forcing) override {
        auto rhs = std::make_shared<BurgersRhs>(grid_, viscosity, forcing);
        return [rhs](const SpectralField& u, double t, SpectralField& out) { (*rhs)(u, t, out); };
    }

    std::array<int, 3> locate_peak(const SpectralField& s, VorticityMode) const override {
        BurgersState st{s, 0.0};
        return {max_gradient_location(st), 0, 0};
    }

    std::pair<double, double> vorticity_maxima(const SpectralField& s) const override {
        PhysicalField g = inverse_transform_unchecked(spectral_derivative(s, 1));
        double m = g.max_abs();
        return {m, m};
    }

    double taylor(const SpectralField& s) const override {
        const int n = grid_.n;
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            double k = wavenumber(i, n);
            double e = std::norm(s.at(0, i));
            num += e;
            den += k * k * e;
        }
        if (den < 1e-30) fail(ErrorCode::ZeroGradient, "gradient energy vanishes");
        return std::sqrt(5.0 * num / den);
    }

    void project(SpectralField&) const override {}

private:
    Grid grid_;
};

class EulerCascadeModel : public CascadeModel {
public:
    explicit EulerCascadeModel(Grid g) : grid_(g) {}
    Grid grid() const override { return grid_; }
    int ncomp() const override { return 3; }

    RhsFn make_rhs(double viscosity, const FringeForcing* forcing) override {
        auto rhs = std::make_shared<EulerRhs>(grid_, viscosity, forcing);
        return [rhs](const SpectralField& u, double t, SpectralField& out) { (*rhs)(u, t, out); };
    }

    std::array<int, 3> locate_peak(const SpectralField& s, VorticityMode mode) const override {
        VorticityField w = vorticity({s, 0.0, 0.0});
        return max_vorticity_location(w, mode).index;
    }

    std::pair<double, double> vorticity_maxima(const SpectralField& s) const override {
        VorticityField w = vorticity({s, 0.0, 0.0});
        double comp = max_vorticity_location(w, VorticityMode::Component).value;
        double mod = max_vorticity_location(w, VorticityMode::Modulus).value;
        return {comp, mod};
    }

    double taylor(const SpectralField& s) const override { return taylor_scale({s, 0.0, 0.0}); }

    void project(SpectralField& s) const override { leray_project_inplace(s); }

private:
    Grid grid_;
};

} // namespace

std::unique_ptr<CascadeModel> make_burgers_model(Grid grid) {
    return std::make_unique<BurgersCascadeModel>(grid);
}
std::unique_ptr<CascadeModel> make_euler_model(Grid grid) {
    return std::make_unique<EulerCascadeModel>(grid);
}

// ============================================================================
// Driver
// ============================================================================

CascadeResult run_cascade(CascadeModel& model, SpectralField state, double viscosity,
                          const RescaleConfig& cfg, const IntegratorConfig& icfg,
                          const SnapshotSink& sink, const LogFn& log) {
    cfg.validate();
    icfg.validate();
    const Grid grid = model.grid();
    if (grid.n < 8 || grid.n % 8 != 0)
        fail(ErrorCode::ConfigError, "cascade grids need n divisible by 8");

    CascadeResult result;
    const double h = grid.spacing();
    const double smallest_scale = h;
    const int box_m = cfg.params.box_samples(grid.n);
    const int fringe_f = cfg.params.fringe_samples(grid.n);

    // original-frame affine map per axis: x_orig = offset + zoom_inv * x_local
    std::array<double, 3> offset{0, 0, 0};
    double zoom_inv = 1.0; // (1/alpha)^cycle

    std::unique_ptr<FringeForcing> forcing;
    double beta_pow = 1.0;      // beta^cycle
    double amp_pow = 1.0;       // (alpha/gamma)^cycle, vorticity translation

    for (int cycle = 0;; ++cycle) {
        RhsFn rhs = model.make_rhs(viscosity, forcing.get());

        std::vector<DiagnosticsSample> samples;
        int taylor_warnings = 0;
        double last_ratio = 0.0;

        AcceptFn on_accept = [&](const SpectralField& s, double t, const StepRecord& rec) {
            DiagnosticsSample d;
            d.t_local = t;
            d.dt = rec.dt_taken;
            auto [comp, mod] = model.vorticity_maxima(s);
            d.max_vort_component = comp;
            d.max_vort_modulus = mod;
            try {
                d.taylor = model.taylor(s);
            } catch (const Error&) {
                d.taylor = 0.0;
            }
            try {
                d.energy_ratio = energy_ratio(s);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::EmptyInnerShell) throw;
                d.energy_ratio = 0.0; // degenerate spectrum: do not restart
            }
            last_ratio = d.energy_ratio;
            if (d.taylor > 0.0 && d.taylor < 2.0 * smallest_scale) {
                if (taylor_warnings == 0 && log)
                    log("warning: Taylor scale " + std::to_string(d.taylor) +
                        " below twice the smallest resolvable scale in cycle " +
                        std::to_string(cycle));
                ++taylor_warnings;
            }
            samples.push_back(d);
        };
        StopFn stop = [&](const SpectralField&, double) { return last_ratio >= cfg.epsilon; };

        IntegrationResult ir =
            integrate_until(state, 0.0, rhs, icfg, stop, cfg.cycle_time_cap, on_accept, true);

        if (ir.reason == StopReason::NonFiniteState) {
            result.completed = false;
            result.failure = "non-finite state in cycle " + std::to_string(cycle);
            if (log) log("error: " + result.failure);
            return result;
        }

        long accepted = 0, rejected = 0;
        for (const StepRecord& r : ir.steps) (r.accepted ? accepted : rejected)++;

        auto [vort_comp, vort_mod] = model.vorticity_maxima(state);
        std::array<int, 3> peak = model.locate_peak(state, cfg.vorticity_mode);

        LedgerEntry entry;
        entry.cycle = cycle;
        entry.t_local = ir.t_final;
        entry.increment_original = ir.t_final / beta_pow;
        entry.max_vort_local = vort_comp;
        entry.max_vort_original = amp_pow * vort_comp;
        entry.viscosity = viscosity;
        entry.zoom = 1.0 / zoom_inv;
        entry.accepted_steps = accepted;
        entry.rejected_steps = rejected;
        entry.taylor_warnings = taylor_warnings;
        entry.stop_reason = stop_reason_name(ir.reason);
        for (int a = 0; a < grid.dim; ++a) {
            entry.center_local[a] = peak[a] * h;
            double orig = offset[a] + zoom_inv * peak[a] * h;
            entry.center_original[a] = std::fmod(std::fmod(orig, two_pi) + two_pi, two_pi);
        }
        result.ledger.push(entry);

        CycleSnapshot snap;
        snap.cycle = cycle;
        snap.t_local = ir.t_final;
        snap.pre_restart = state;
        snap.center_index = peak;
        snap.samples = std::move(samples);

        const bool threshold_fired = ir.reason == StopReason::Predicate;
        const bool forced_restart = ir.reason == StopReason::StepUnderflow;
        if (forced_restart && log)
            log("warning: step underflow in cycle " + std::to_string(cycle) +
                ", forcing a restart");

        if (cycle >= cfg.max_cycles || !(threshold_fired || forced_restart)) {
            if (sink) sink(std::move(snap), result.ledger.entries().back());
            result.completed = true;
            return result;
        }

        // --- rescale: extract, periodize, stretch, re-project ---
        PhysicalField phys = inverse_transform_unchecked(state);
        PhysicalField box = extract_box(phys, peak, cfg.params);
        if (box.max_abs() < 1e-14)
            fail(ErrorCode::CycleDegenerate, "extracted box carries no energy");
        apply_fringe(box, fringe_f, cfg.fringe_profile);
        SpectralField respawned = stretch_respawn(box, cfg.params, grid);
        model.project(respawned);

        snap.post_respawn = respawned;
        if (sink) sink(std::move(snap), result.ledger.entries().back());

        for (int a = 0; a < grid.dim; ++a)
            offset[a] += zoom_inv * (peak[a] - box_m / 2) * h;
        zoom_inv /= cfg.params.alpha;
        beta_pow *= cfg.params.beta;
        amp_pow *= cfg.params.alpha / cfg.params.gamma;
        viscosity = rescale_viscosity(viscosity, cfg.params);

        if (cfg.fringe_runtime_forcing && cfg.forcing_strength > 0.0) {
            forcing = std::make_unique<FringeForcing>();
            forcing->strength = cfg.forcing_strength;
            forcing->weight = fringe_weight_mask(grid, cfg.params, cfg.fringe_profile);
            forcing->target = inverse_transform_unchecked(respawned);
        }

        state = std::move(respawned);
    }
}

} // namespace specwin
