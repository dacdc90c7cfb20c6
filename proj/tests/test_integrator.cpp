#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "burgers.hpp"
#include "integrator.hpp"
#include "test_util.hpp"

#include <cstring>

using namespace specwin;
using namespace specwin::testutil;

namespace {

// scalar ODE embedded in the mean mode of a tiny grid
SpectralField scalar_state(double v) {
    SpectralField s(Grid(1, 8), 1);
    s.at(0, 0) = v;
    return s;
}

} // namespace

TEST_CASE("linear decay reaches exp(-1)") {
    SpectralField y = scalar_state(1.0);
    RhsFn rhs = [](const SpectralField& s, double, SpectralField& out) {
        auto in = s.data();
        auto o = out.data();
        for (std::size_t i = 0; i < in.size(); ++i) o[i] = -in[i];
    };
    IntegratorConfig cfg;
    IntegrationResult r = integrate_until(y, 0.0, rhs, cfg, {}, 1.0);
    CHECK(r.reason == StopReason::TimeLimit);
    CHECK(r.t_final == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(y.at(0, 0).real() - std::exp(-1.0)) < 1e-8);
}

TEST_CASE("zero right-hand side takes one step to t_max") {
    SpectralField y = scalar_state(2.5);
    RhsFn rhs = [](const SpectralField&, double, SpectralField& out) {
        for (cplx& v : out.data()) v = 0.0;
    };
    IntegratorConfig cfg;
    cfg.dt_init = cfg.dt_max = 1.0;
    IntegrationResult r = integrate_until(y, 0.0, rhs, cfg, {}, 1.0);
    CHECK(r.steps.size() == 1);
    CHECK(r.steps[0].accepted);
    CHECK(y.at(0, 0).real() == 2.5);
}

TEST_CASE("halving the tolerance reduces the achieved error (5th order pair)") {
    auto run_tol = [](double tol) {
        SpectralField y = scalar_state(1.0);
        RhsFn rhs = [](const SpectralField& s, double, SpectralField& out) {
            auto in = s.data();
            auto o = out.data();
            for (std::size_t i = 0; i < in.size(); ++i) o[i] = -in[i];
        };
        IntegratorConfig cfg;
        cfg.tol_per_unit_step = tol;
        cfg.dt_max = 0.5;
        integrate_until(y, 0.0, rhs, cfg, {}, 1.0);
        return std::abs(y.at(0, 0).real() - std::exp(-1.0));
    };
    double e1 = run_tol(1e-6);
    double e2 = run_tol(1e-8);
    double e3 = run_tol(1e-10);
    CHECK(e2 < e1 / 6.0);
    CHECK(e3 < e2 / 6.0);
}

TEST_CASE("identical inputs give bitwise-identical step sequences") {
    auto run_once = [] {
        SpectralField y = scalar_state(1.0);
        RhsFn rhs = [](const SpectralField& s, double t, SpectralField& out) {
            auto in = s.data();
            auto o = out.data();
            for (std::size_t i = 0; i < in.size(); ++i)
                o[i] = -in[i] * (1.0 + 0.3 * std::sin(t));
        };
        IntegratorConfig cfg;
        IntegrationResult r = integrate_until(y, 0.0, rhs, cfg, {}, 2.0);
        return std::make_pair(y.at(0, 0), r.steps);
    };
    auto [y1, s1] = run_once();
    auto [y2, s2] = run_once();
    CHECK(std::memcmp(&y1, &y2, sizeof(cplx)) == 0);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(s1[i].t_local == s2[i].t_local);
        CHECK(s1[i].dt_taken == s2[i].dt_taken);
        CHECK(s1[i].error_estimate == s2[i].error_estimate);
    }
}

TEST_CASE("step underflow on stiff dynamics") {
    SpectralField y = scalar_state(1.0);
    RhsFn rhs = [](const SpectralField& s, double, SpectralField& out) {
        auto in = s.data();
        auto o = out.data();
        for (std::size_t i = 0; i < in.size(); ++i) o[i] = -1e8 * in[i];
    };
    IntegratorConfig cfg;
    cfg.dt_init = 1e-2;
    cfg.dt_min = 1e-3; // cannot resolve the stiff scale
    cfg.tol_per_unit_step = 1e-12;
    IntegrationResult r = integrate_until(y, 0.0, rhs, cfg, {}, 1.0);
    CHECK(r.reason == StopReason::StepUnderflow);
}

TEST_CASE("non-finite right-hand side is reported") {
    SpectralField y = scalar_state(1.0);
    RhsFn rhs = [](const SpectralField&, double, SpectralField& out) {
        for (cplx& v : out.data()) v = cplx(std::nan(""), 0.0);
    };
    IntegratorConfig cfg;
    IntegrationResult r = integrate_until(y, 0.0, rhs, cfg, {}, 1.0);
    CHECK(r.reason == StopReason::NonFiniteState);
}

TEST_CASE("stop predicate fires after an accepted step") {
    SpectralField y = scalar_state(1.0);
    RhsFn rhs = [](const SpectralField& s, double, SpectralField& out) {
        auto in = s.data();
        auto o = out.data();
        for (std::size_t i = 0; i < in.size(); ++i) o[i] = -in[i];
    };
    IntegratorConfig cfg;
    StopFn stop = [](const SpectralField& s, double) { return s.at(0, 0).real() <= 0.5; };
    IntegrationResult r = integrate_until(y, 0.0, rhs, cfg, stop, 10.0);
    CHECK(r.reason == StopReason::Predicate);
    CHECK(y.at(0, 0).real() <= 0.5);
    CHECK(r.t_final == doctest::Approx(std::log(2.0)).epsilon(0.05));
}

TEST_CASE("config validation") {
    IntegratorConfig cfg;
    cfg.dt_min = 1.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    IntegratorConfig cfg2;
    cfg2.tol_per_unit_step = -1;
    CHECK_THROWS_AS(cfg2.validate(), Error);
}

TEST_CASE("inviscid Burgers conserves energy to integrator accuracy before the shock") {
    const int n = 64;
    Grid grid(1, n);
    SpectralField u = single_mode_1d(n, 1, cplx(0.5)); // cos x
    double e0 = u.energy();
    BurgersRhs brhs(grid);
    RhsFn rhs = [&](const SpectralField& s, double t, SpectralField& out) { brhs(s, t, out); };
    IntegratorConfig cfg;
    IntegrationResult r = integrate_until(u, 0.0, rhs, cfg, {}, 0.3);
    CHECK(r.reason == StopReason::TimeLimit);
    double drift = std::abs(u.energy() - e0);
    CHECK(drift <= 10.0 * cfg.tol_per_unit_step * 0.3);
}
