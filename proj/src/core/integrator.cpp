#include "integrator.hpp"

#include <algorithm>
#include <cmath>

namespace specwin {

namespace {

// Classic Fehlberg 4(5) coefficients.
constexpr double c2 = 1.0 / 4, c3 = 3.0 / 8, c4 = 12.0 / 13, c5 = 1.0, c6 = 1.0 / 2;
constexpr double a21 = 1.0 / 4;
constexpr double a31 = 3.0 / 32, a32 = 9.0 / 32;
constexpr double a41 = 1932.0 / 2197, a42 = -7200.0 / 2197, a43 = 7296.0 / 2197;
constexpr double a51 = 439.0 / 216, a52 = -8.0, a53 = 3680.0 / 513, a54 = -845.0 / 4104;
constexpr double a61 = -8.0 / 27, a62 = 2.0, a63 = -3544.0 / 2565, a64 = 1859.0 / 4104,
                 a65 = -11.0 / 40;
// 4th order weights
constexpr double b1 = 25.0 / 216, b3 = 1408.0 / 2565, b4 = 2197.0 / 4104, b5 = -1.0 / 5;
// 5th order weights
constexpr double d1 = 16.0 / 135, d3 = 6656.0 / 12825, d4 = 28561.0 / 56430, d5 = -9.0 / 50,
                 d6 = 2.0 / 55;

bool buffer_finite(std::span<const cplx> v) {
    for (const cplx& c : v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

} // namespace

void IntegratorConfig::validate() const {
    if (!(tol_per_unit_step > 0)) fail(ErrorCode::ConfigError, "tol_per_unit_step must be > 0");
    if (!(dt_min > 0 && dt_min <= dt_init && dt_init <= dt_max))
        fail(ErrorCode::ConfigError, "require 0 < dt_min <= dt_init <= dt_max");
    if (!(safety_factor > 0 && safety_factor < 1))
        fail(ErrorCode::ConfigError, "safety_factor must lie in (0,1)");
}

const char* stop_reason_name(StopReason r) {
    switch (r) {
    case StopReason::Predicate: return "predicate";
    case StopReason::TimeLimit: return "time_limit";
    case StopReason::StepUnderflow: return "step_underflow";
    case StopReason::NonFiniteState: return "non_finite_state";
    }
    return "unknown";
}

const char* integrator_tableau_name() { return "fehlberg-4(5), 5th-order advance"; }

IntegrationResult integrate_until(SpectralField& state, double t_start, const RhsFn& rhs,
                                  const IntegratorConfig& cfg, const StopFn& stop, double t_max,
                                  const AcceptFn& on_accept, bool record_steps) {
    cfg.validate();

    IntegrationResult result;
    const std::size_t m = state.size();
    SpectralField k1(state.grid(), state.ncomp()), k2 = k1, k3 = k1, k4 = k1, k5 = k1, k6 = k1;
    SpectralField ytmp = k1, y5 = k1;

    double t = t_start;
    double dt = std::min(cfg.dt_init, cfg.dt_max);

    auto stage = [&](SpectralField& dst, std::initializer_list<std::pair<double, const SpectralField*>> terms,
                     double h) {
        auto d = dst.data();
        auto y = state.data();
        for (std::size_t i = 0; i < m; ++i) d[i] = y[i];
        for (auto [w, f] : terms) {
            auto fv = f->data();
            const double wh = w * h;
            for (std::size_t i = 0; i < m; ++i) d[i] += wh * fv[i];
        }
    };

    while (t < t_max) {
        double h = std::min(dt, t_max - t);
        if (h < cfg.dt_min && t_max - t < cfg.dt_min) break; // t_max reached up to dt_min

        rhs(state, t, k1);
        if (!buffer_finite(k1.data())) {
            result.reason = StopReason::NonFiniteState;
            result.t_final = t;
            return result;
        }

        stage(ytmp, {{a21, &k1}}, h);
        rhs(ytmp, t + c2 * h, k2);
        stage(ytmp, {{a31, &k1}, {a32, &k2}}, h);
        rhs(ytmp, t + c3 * h, k3);
        stage(ytmp, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h);
        rhs(ytmp, t + c4 * h, k4);
        stage(ytmp, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h);
        rhs(ytmp, t + c5 * h, k5);
        stage(ytmp, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h);
        rhs(ytmp, t + c6 * h, k6);

        // error = || y5 - y4 ||_inf, y5 assembled in place
        double err = 0.0;
        {
            auto y = state.data();
            auto v1 = k1.data(), v3 = k3.data(), v4 = k4.data(), v5 = k5.data(), v6 = k6.data();
            auto out = y5.data();
            for (std::size_t i = 0; i < m; ++i) {
                cplx hi5 = h * (d1 * v1[i] + d3 * v3[i] + d4 * v4[i] + d5 * v5[i] + d6 * v6[i]);
                cplx hi4 = h * (b1 * v1[i] + b3 * v3[i] + b4 * v4[i] + b5 * v5[i]);
                out[i] = y[i] + hi5;
                cplx diff = hi5 - hi4;
                err = std::max({err, std::abs(diff.real()), std::abs(diff.imag())});
            }
        }

        const double tol_step = cfg.tol_per_unit_step * h;
        const bool finite = std::isfinite(err) && buffer_finite(y5.data());
        const bool accepted = finite && err <= tol_step;

        double factor;
        if (!finite) {
            factor = 0.1;
        } else if (err == 0.0) {
            factor = 5.0;
        } else {
            factor = std::clamp(cfg.safety_factor * std::pow(tol_step / err, 0.2), 0.1, 5.0);
        }

        if (accepted) {
            t += h;
            std::swap(state, y5);
            StepRecord rec{t, h, err, true};
            if (record_steps) result.steps.push_back(rec);
            if (on_accept) on_accept(state, t, rec);
            dt = std::min(cfg.dt_max, h * factor);
            if (stop && stop(state, t)) {
                result.reason = StopReason::Predicate;
                result.t_final = t;
                return result;
            }
        } else {
            if (record_steps) result.steps.push_back({t, h, err, false});
            dt = h * factor;
            if (dt < cfg.dt_min) {
                result.reason = StopReason::StepUnderflow;
                result.t_final = t;
                return result;
            }
        }
    }

    result.reason = StopReason::TimeLimit;
    result.t_final = t;
    return result;
}

} // namespace specwin
