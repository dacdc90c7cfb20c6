#pragma once

#include "field.hpp"

#include <functional>

namespace specwin {

struct IntegratorConfig {
    double tol_per_unit_step = 1e-10;
    double dt_init = 1e-3;
    double dt_min = 1e-14;
    double dt_max = 1e-1;
    double safety_factor = 0.9;

    void validate() const;
};

struct StepRecord {
    double t_local = 0.0;       // time at the end of the attempt
    double dt_taken = 0.0;
    double error_estimate = 0.0;
    bool accepted = false;
};

enum class StopReason {
    Predicate,      // stop(state, t) fired after an accepted step
    TimeLimit,      // reached t_max
    StepUnderflow,  // dt fell below dt_min (stiffness / blow-up beyond resolution)
    NonFiniteState, // NaN/Inf coefficients at the current state
};

const char* stop_reason_name(StopReason r);

using RhsFn = std::function<void(const SpectralField&, double, SpectralField&)>;
using StopFn = std::function<bool(const SpectralField&, double)>;
using AcceptFn = std::function<void(const SpectralField&, double, const StepRecord&)>;

struct IntegrationResult {
    StopReason reason = StopReason::TimeLimit;
    double t_final = 0.0;
    std::vector<StepRecord> steps;
};

/// Adaptive Runge-Kutta-Fehlberg 4(5) with error-per-unit-step control:
/// a step is accepted when the embedded error estimate (max norm over all
/// coefficients) satisfies err <= tol * dt. The higher-order solution is
/// advanced. Step size updates use safety*(tol*dt/err)^(1/5) clamped to
/// [0.1, 5]. The stop predicate is evaluated after each accepted step.
IntegrationResult integrate_until(SpectralField& state, double t_start, const RhsFn& rhs,
                                  const IntegratorConfig& cfg, const StopFn& stop, double t_max,
                                  const AcceptFn& on_accept = {}, bool record_steps = true);

/// Tableau identifier written into run metadata.
const char* integrator_tableau_name();

} // namespace specwin
