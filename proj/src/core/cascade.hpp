#pragma once

#include "euler.hpp"
#include "integrator.hpp"
#include "rescale.hpp"

#include <functional>
#include <memory>

namespace specwin {

struct RescaleConfig {
    double epsilon = 1e-4;      // restart threshold on the shell-energy ratio
    int max_cycles = 45;        // number of rescalings; the ledger gets max_cycles+1 entries
    VorticityMode vorticity_mode = VorticityMode::Component;
    std::string fringe_profile = "raised-cosine";
    bool fringe_runtime_forcing = false;
    double forcing_strength = 0.0;
    double cycle_time_cap = 100.0; // local-time guard when the threshold never fires
    RescaleParams params;

    void validate() const;
};

/// Per-accepted-step record used by the blow-up diagnostics.
struct DiagnosticsSample {
    double t_local = 0.0;
    double dt = 0.0;
    double max_vort_component = 0.0;
    double max_vort_modulus = 0.0;
    double taylor = 0.0;
    double energy_ratio = 0.0;
};

struct LedgerEntry {
    int cycle = 0;
    double t_local = 0.0;             // local time elapsed inside the cycle
    double increment_original = 0.0;  // t_local / beta^cycle
    double accumulated_original = 0.0;
    double max_vort_local = 0.0;      // component maximum at cycle end
    double max_vort_original = 0.0;   // (alpha/gamma)^cycle * local
    double viscosity = 0.0;
    double zoom = 1.0;                // alpha^cycle
    std::array<double, 3> center_local{0, 0, 0};
    std::array<double, 3> center_original{0, 0, 0};
    long accepted_steps = 0;
    long rejected_steps = 0;
    int taylor_warnings = 0;
    std::string stop_reason;
};

/// Per-cycle bookkeeping converting local times and amplitudes back to the
/// original frame via powers of beta (= 4/3 by default).
class CycleLedger {
public:
    void push(LedgerEntry e);
    const std::vector<LedgerEntry>& entries() const { return entries_; }
    double total_original_time() const { return total_; }

    /// Limit estimate of the singularity time: the accumulated sum plus a
    /// geometric extrapolation of the increment tail.
    double estimated_singularity_time() const;

private:
    std::vector<LedgerEntry> entries_;
    double total_ = 0.0;
};

struct CycleSnapshot {
    int cycle = 0;
    double t_local = 0.0;
    SpectralField pre_restart;              // state when the threshold fired
    std::array<int, 3> center_index{0, 0, 0};
    SpectralField post_respawn;             // next cycle's initial state (empty on the last cycle)
    std::vector<DiagnosticsSample> samples;
};

/// Model-specific pieces the cascade driver needs.
class CascadeModel {
public:
    virtual ~CascadeModel() = default;
    virtual Grid grid() const = 0;
    virtual int ncomp() const = 0;
    virtual RhsFn make_rhs(double viscosity, const FringeForcing* forcing) = 0;
    virtual std::array<int, 3> locate_peak(const SpectralField& s, VorticityMode mode) const = 0;
    /// (component max, modulus max) of the vorticity surrogate
    virtual std::pair<double, double> vorticity_maxima(const SpectralField& s) const = 0;
    virtual double taylor(const SpectralField& s) const = 0;
    virtual void project(SpectralField& s) const = 0; // post-respawn constraint
};

std::unique_ptr<CascadeModel> make_burgers_model(Grid grid);
std::unique_ptr<CascadeModel> make_euler_model(Grid grid);

struct CascadeResult {
    CycleLedger ledger;
    bool completed = false;     // false when integration hit NonFiniteState
    std::string failure;
};

using SnapshotSink = std::function<void(CycleSnapshot&&, const LedgerEntry&)>;
using LogFn = std::function<void(const std::string&)>;

/// The cycle loop: integrate until the energy ratio crosses epsilon, locate
/// the vorticity peak, extract the sub-box, periodize it with the fringe,
/// stretch back to the full grid, re-project, bump the viscosity, repeat.
/// Cycle 0 is the initial equilibration leg; a StepUnderflow forces an
/// immediate restart instead of aborting.
CascadeResult run_cascade(CascadeModel& model, SpectralField initial, double viscosity,
                          const RescaleConfig& cfg, const IntegratorConfig& icfg,
                          const SnapshotSink& sink = {}, const LogFn& log = {});

} // namespace specwin
