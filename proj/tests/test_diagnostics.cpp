#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diagnostics.hpp"
#include "test_util.hpp"

#include <random>

using namespace specwin;
using namespace specwin::testutil;

namespace {

std::vector<double> grid_separations(int n, int count) {
    std::vector<double> r(count + 1);
    for (int j = 0; j <= count; ++j) r[j] = j * two_pi / n;
    return r;
}

// naive reference: direct double loop with modulo indexing
double naive_sf_1d(const PhysicalField& f, int order, int cells) {
    const int n = f.grid().n;
    double acc = 0;
    for (int j = 0; j < n; ++j) {
        double d = f.at(0, (j + cells) % n) - f.at(0, j);
        double p = 1;
        for (int q = 0; q < order; ++q) p *= d;
        acc += p;
    }
    return acc / n;
}

} // namespace

TEST_CASE("structure functions 1d: constant field and cosine") {
    PhysicalField c(Grid(1, 64), 1);
    for (double& v : c.data()) v = 3.0;
    for (int order : {2, 3, 4, 5}) {
        StructureFunctionTable t = structure_function_1d(c, order, grid_separations(64, 32));
        for (double v : t.values) CHECK(std::abs(v) < 1e-14);
    }

    PhysicalField f = sample_1d(64, [](double x) { return std::cos(x); });
    StructureFunctionTable s2 = structure_function_1d(f, 2, grid_separations(64, 32));
    StructureFunctionTable s3 = structure_function_1d(f, 3, grid_separations(64, 32));
    for (std::size_t i = 0; i < s2.r.size(); ++i) {
        CHECK(s2.values[i] == doctest::Approx(1.0 - std::cos(s2.r[i])).epsilon(1e-12));
        CHECK(std::abs(s3.values[i]) < 1e-13);
    }
}

TEST_CASE("structure functions 1d equal the naive double loop") {
    PhysicalField f = random_physical_1d(64, 3);
    for (int order : {2, 3, 4, 5}) {
        StructureFunctionTable t = structure_function_1d(f, order, grid_separations(64, 32));
        for (int j = 0; j <= 32; ++j)
            CHECK(t.values[j] == doctest::Approx(naive_sf_1d(f, order, j)).epsilon(1e-12));
    }
}

TEST_CASE("structure functions: separations must sit on the grid") {
    PhysicalField f = random_physical_1d(32, 4);
    CHECK_THROWS_AS(structure_function_1d(f, 2, {0.5 * two_pi / 32}), Error);
}

TEST_CASE("structure functions 3d: analytic single-mode field") {
    const int n = 16;
    PhysicalField u = sample_3d(n, 3, [](int c, double x1, double, double) {
        return c == 1 ? std::sin(x1) : 0.0;
    });
    std::vector<double> r = grid_separations(n, n / 2);

    StructureFunctionTable lon1 = structure_function_3d_axis(u, 2, r, SfFlavor::Longitudinal, 1);
    StructureFunctionTable tra1 = structure_function_3d_axis(u, 2, r, SfFlavor::Transverse, 1);
    StructureFunctionTable sca1 = structure_function_3d_axis(u, 2, r, SfFlavor::ScalarAxis, 1);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(std::abs(lon1.values[i]) < 1e-14);
        CHECK(tra1.values[i] == doctest::Approx((1 - std::cos(r[i])) / 2).epsilon(1e-12));
        CHECK(sca1.values[i] == doctest::Approx((1 - std::cos(r[i])) / 3).epsilon(1e-12));
    }

    StructureFunctionTable lon = structure_function_3d(u, 2, r, SfFlavor::Longitudinal);
    StructureFunctionTable tra = structure_function_3d(u, 2, r, SfFlavor::Transverse);
    StructureFunctionTable sca = structure_function_3d(u, 2, r, SfFlavor::ScalarAxis);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(std::abs(lon.values[i]) < 1e-14);
        CHECK(tra.values[i] == doctest::Approx((1 - std::cos(r[i])) / 6).epsilon(1e-12));
        CHECK(sca.values[i] == doctest::Approx((1 - std::cos(r[i])) / 9).epsilon(1e-12));
    }
}

TEST_CASE("structure functions 3d equal the naive loops at 8^3") {
    const int n = 8;
    PhysicalField u = random_physical_3d(n, 3, 11);
    std::vector<double> r = grid_separations(n, n / 2);
    for (SfFlavor flavor : {SfFlavor::ScalarAxis, SfFlavor::Longitudinal, SfFlavor::Transverse}) {
        StructureFunctionTable t = structure_function_3d(u, 2, r, flavor);
        for (int cells = 0; cells <= n / 2; ++cells) {
            double acc = 0;
            int terms = 0;
            for (int axis = 0; axis < 3; ++axis) {
                std::vector<int> comps;
                if (flavor == SfFlavor::ScalarAxis) comps = {0, 1, 2};
                if (flavor == SfFlavor::Longitudinal) comps = {axis};
                if (flavor == SfFlavor::Transverse)
                    for (int c = 0; c < 3; ++c)
                        if (c != axis) comps.push_back(c);
                for (int c : comps)
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            for (int k = 0; k < n; ++k) {
                                int is = i, js = j, ks = k;
                                if (axis == 0) is = (i + cells) % n;
                                if (axis == 1) js = (j + cells) % n;
                                if (axis == 2) ks = (k + cells) % n;
                                double d = u.at(c, is, js, ks) - u.at(c, i, j, k);
                                acc += d * d;
                                ++terms;
                            }
            }
            CHECK(t.values[cells] == doctest::Approx(acc / terms).epsilon(1e-12));
        }
    }
}

TEST_CASE("table invariants hold on random data") {
    PhysicalField f = random_physical_1d(128, 8);
    std::vector<double> r = grid_separations(128, 64);
    StructureFunctionTable s2 = structure_function_1d(f, 2, r);
    StructureFunctionTable s3 = structure_function_1d(f, 3, r);
    StructureFunctionTable s4 = structure_function_1d(f, 4, r);
    CHECK(s2.values[0] == 0.0);
    CHECK(s3.values[0] == 0.0);
    CHECK(s4.values[0] == 0.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(s2.values[i] >= 0.0);
        CHECK(s4.values[i] >= 0.0);
        CHECK(s3.values[i] * s3.values[i] <=
              s2.values[i] * s4.values[i] * (1 + 1e-12) + 1e-300);
    }
}

TEST_CASE("translate to original scale") {
    StructureFunctionTable t;
    t.order = 2;
    t.cycle = 0;
    t.r = {0.5, 1.0};
    t.values = {2.0, 3.0};
    t.variance = {0.0, 0.0};

    StructureFunctionTable t0 = translate_to_original_scale(t, 0);
    CHECK(t0.r == t.r);
    CHECK(t0.original_frame);

    StructureFunctionTable t2 = translate_to_original_scale(t, 2);
    CHECK(t2.r[1] == doctest::Approx(9.0 / 16.0).epsilon(1e-15));
    CHECK(t2.values == t.values);
}

TEST_CASE("average over cycles") {
    StructureFunctionTable a;
    a.order = 2;
    a.cycle = 1;
    a.r = {0.1, 0.2};
    a.values = {1.0, 2.0};
    a.variance = {0, 0};
    StructureFunctionTable b = a;
    b.cycle = 2;

    StructureFunctionTable same = average_over_cycles({a, b}, false);
    CHECK(same.values == a.values);
    CHECK(same.variance[0] == 0.0);

    StructureFunctionTable tripled = a;
    tripled.cycle = 2;
    for (double& v : tripled.values) v *= 3.0;
    StructureFunctionTable avg = average_over_cycles({a, tripled}, false);
    CHECK(avg.values[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(avg.values[1] == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(avg.variance[0] == doctest::Approx(2.0).epsilon(1e-12)); // two-point sample variance
    CHECK(avg.variance[1] == doctest::Approx(8.0).epsilon(1e-12));

    StructureFunctionTable zero = a;
    zero.cycle = 0;
    for (double& v : zero.values) v = 1e9;
    StructureFunctionTable excl = average_over_cycles({zero, a, tripled}, true);
    CHECK(excl.values[0] == doctest::Approx(2.0).epsilon(1e-15));

    StructureFunctionTable wrong = a;
    wrong.r = {0.1, 0.3};
    CHECK_THROWS_AS(average_over_cycles({a, wrong}, false), Error);
}

TEST_CASE("power-law fit: exact law, leading-order cosine, errors") {
    StructureFunctionTable t;
    t.order = 2;
    for (int i = 1; i <= 20; ++i) {
        double r = 0.01 * i;
        t.r.push_back(r);
        t.values.push_back(2.0 * std::pow(r, 1.5));
        t.variance.push_back(0.0);
    }
    FitResult fr = fit_power_law(t, 0.0, 1.0);
    CHECK(fr.slope == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(fr.intercept == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(fr.slope_stderr < 1e-10);
    CHECK(fr.sign == 1);

    StructureFunctionTable c;
    c.order = 2;
    for (int i = 1; i <= 40; ++i) {
        double r = 0.0025 * i; // up to 0.1
        c.r.push_back(r);
        c.values.push_back(1.0 - std::cos(r));
        c.variance.push_back(0.0);
    }
    FitResult fc = fit_power_law(c, 0.01, 0.1);
    CHECK(fc.slope == doctest::Approx(2.0).epsilon(5e-3));

    StructureFunctionTable bad = t;
    bad.values[3] = 0.0;
    CHECK_THROWS_AS(fit_power_law(bad, 0.0, 1.0), Error);

    CHECK_THROWS_AS(fit_power_law(t, 0.15, 0.18), Error); // fewer than 5 points
}

TEST_CASE("negative odd-order tables carry their sign through the fit") {
    StructureFunctionTable t;
    t.order = 3;
    for (int i = 1; i <= 10; ++i) {
        double r = 0.05 * i;
        t.r.push_back(r);
        t.values.push_back(-0.7 * r);
        t.variance.push_back(0.0);
    }
    FitResult fr = fit_power_law(t, 0.0, 1.0);
    CHECK(fr.slope == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fr.sign == -1);
}

TEST_CASE("planted exponents are recovered within 3 standard errors") {
    std::mt19937 rng(12345);
    std::normal_distribution<double> noise(0.0, std::log(1.01));
    std::uniform_real_distribution<double> pdist(0.4, 2.2);
    int hits = 0;
    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
        double p = pdist(rng);
        StructureFunctionTable t;
        t.order = 2;
        for (int i = 1; i <= 30; ++i) {
            double r = 0.02 * i;
            t.r.push_back(r);
            t.values.push_back(1.7 * std::pow(r, p) * std::exp(noise(rng)));
            t.variance.push_back(0.0);
        }
        FitResult fr = fit_power_law(t, 0.0, 1.0);
        if (std::abs(fr.slope - p) <= 3.0 * fr.slope_stderr) ++hits;
    }
    CHECK(hits >= 95);
}

TEST_CASE("core range detector finds the power-law window") {
    // r^2 below 0.1, r^1 from 0.1 to 3 (wider in log extent)
    StructureFunctionTable t;
    t.order = 2;
    for (double r = 0.01; r < 3.0; r *= 1.15) {
        t.r.push_back(r);
        t.values.push_back(r < 0.1 ? 10.0 * r * r : r);
        t.variance.push_back(0.0);
    }
    auto [lo, hi] = detect_core_range(t);
    CHECK(lo >= 0.08);
    CHECK(hi > 1.0);
    FitResult fr = fit_power_law(t, lo, hi);
    CHECK(fr.slope == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("bkm integral: trapezoid identities") {
    std::vector<double> t{0.0, 0.5, 1.0, 2.0};
    std::vector<double> w{3.0, 3.0, 3.0, 3.0};
    CHECK(bkm_integral(t, w) == doctest::Approx(6.0).epsilon(1e-15));

    std::vector<double> t2{0.25, 0.75};
    std::vector<double> w2{1.0, 5.0};
    CHECK(bkm_integral(t2, w2) == doctest::Approx(0.5 * (1 + 5) / 2).epsilon(1e-15));

    // refinement of piecewise-linear data leaves the value unchanged
    std::vector<double> tr{0.0, 1.0, 3.0};
    std::vector<double> wr{2.0, 4.0, 0.5};
    double base = bkm_integral(tr, wr);
    std::vector<double> tf{0.0, 0.5, 1.0, 2.0, 3.0};
    std::vector<double> wf{2.0, 3.0, 4.0, 2.25, 0.5};
    CHECK(bkm_integral(tf, wf) == doctest::Approx(base).epsilon(1e-14));

    CHECK_THROWS_AS(bkm_integral({}, {}), Error);
}

TEST_CASE("blow-up exponent fit on synthetic power laws") {
    const double T = 2.0;
    std::vector<double> t, w1, w2;
    for (int i = 0; i < 200; ++i) {
        double tt = 1.9 * i / 199.0;
        t.push_back(tt);
        w1.push_back(1.0 / (T - tt));
        w2.push_back(5.0 * std::pow(T - tt, -1.5));
    }
    BlowupFit f1 = fit_blowup_exponent(t, w1, T, 200);
    CHECK(f1.zeta == doctest::Approx(1.0).epsilon(1e-12));
    BlowupFit f2 = fit_blowup_exponent(t, w2, T, 200);
    CHECK(f2.zeta == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(f2.intercept == doctest::Approx(std::log(5.0)).epsilon(1e-10));

    CHECK_THROWS_AS(fit_blowup_exponent(t, w1, T, 1), Error);
    CHECK_THROWS_AS(fit_blowup_exponent(t, w1, 1.0, 200), Error); // times beyond T_est

    // only the tail is used
    std::vector<double> wm = w1;
    for (int i = 0; i < 100; ++i) wm[i] = std::pow(T - t[i], -0.2);
    BlowupFit ft = fit_blowup_exponent(t, wm, T, 100);
    CHECK(ft.zeta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ft.points_used == 100);
}

TEST_CASE("original-frame series translation") {
    CycleLedger ledger;
    LedgerEntry e0;
    e0.cycle = 0;
    e0.t_local = 1.0;
    e0.increment_original = 1.0;
    ledger.push(e0);
    LedgerEntry e1;
    e1.cycle = 1;
    e1.t_local = 0.4;
    e1.increment_original = 0.3;
    ledger.push(e1);

    std::vector<std::vector<DiagnosticsSample>> samples(2);
    samples[0].push_back({0.5, 0, 2.0, 0, 0, 0});
    samples[0].push_back({1.0, 0, 3.0, 0, 0, 0});
    samples[1].push_back({0.4, 0, 3.5, 0, 0, 0});

    std::vector<double> ts, ws;
    original_frame_series(ledger, samples, RescaleParams{}, ts, ws);
    REQUIRE(ts.size() == 3);
    CHECK(ts[0] == doctest::Approx(0.5));
    CHECK(ts[1] == doctest::Approx(1.0));
    CHECK(ts[2] == doctest::Approx(1.0 + 0.4 / (4.0 / 3.0)).epsilon(1e-15));
    CHECK(ws[0] == doctest::Approx(2.0));
    CHECK(ws[2] == doctest::Approx(3.5 * 4.0 / 3.0).epsilon(1e-15));
}
