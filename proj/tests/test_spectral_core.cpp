#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shells.hpp"
#include "test_util.hpp"

#include "euler.hpp"

using namespace specwin;
using namespace specwin::testutil;

TEST_CASE("forward transform: single cosine mode") {
    PhysicalField f = sample_1d(16, [](double x) { return std::cos(x); });
    SpectralField s = forward_transform(f);
    CHECK(std::abs(s.at(0, mode_index(1, 16)) - cplx(0.5)) < 1e-12);
    CHECK(std::abs(s.at(0, mode_index(-1, 16)) - cplx(0.5)) < 1e-12);
    double rest = 0;
    for (int i = 0; i < 16; ++i)
        if (i != 1 && i != 15) rest = std::max(rest, std::abs(s.at(0, i)));
    CHECK(rest < 1e-12);
}

TEST_CASE("forward transform: zero field") {
    PhysicalField f(Grid(1, 16), 1);
    SpectralField s = forward_transform(f);
    CHECK(max_abs(s.data()) == 0.0);
}

TEST_CASE("forward transform: cos^2 against the direct-summation oracle") {
    PhysicalField f = sample_1d(16, [](double x) { return std::cos(x) * std::cos(x); });
    SpectralField s = forward_transform(f);
    CHECK(std::abs(s.at(0, 0) - cplx(0.5)) < 1e-12);
    CHECK(std::abs(s.at(0, mode_index(2, 16)) - cplx(0.25)) < 1e-12);
    CHECK(std::abs(s.at(0, mode_index(-2, 16)) - cplx(0.25)) < 1e-12);
    for (int k = -7; k <= 8; ++k)
        CHECK(std::abs(s.at(0, mode_index(k, 16)) - dft_oracle_1d(f, k)) < 1e-12);
}

TEST_CASE("inverse transform: examples and round trip") {
    SpectralField s = single_mode_1d(16, 1, cplx(0.5));
    PhysicalField f = inverse_transform(s);
    for (int i = 0; i < 16; ++i)
        CHECK(std::abs(f.at(0, i) - std::cos(two_pi * i / 16)) < 1e-12);

    SpectralField zero(Grid(1, 16), 1);
    CHECK(inverse_transform(zero).max_abs() == 0.0);

    SpectralField r = random_hermitian_1d(16, 7);
    SpectralField back = forward_transform(inverse_transform(r));
    for (int i = 0; i < 16; ++i) CHECK(std::abs(back.at(0, i) - r.at(0, i)) < 1e-12);
}

TEST_CASE("inverse transform rejects non-Hermitian input") {
    SpectralField s(Grid(1, 16), 1);
    s.at(0, mode_index(3, 16)) = cplx(1.0, 1.0); // no conjugate partner
    CHECK_THROWS_AS(inverse_transform(s), Error);
    try {
        inverse_transform(s);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonHermitianInput);
    }
}

TEST_CASE("round trip identity across grid sizes") {
    for (int n : {8, 16, 32, 64, 1024}) {
        PhysicalField f = random_physical_1d(n, 100 + n);
        PhysicalField g = inverse_transform(forward_transform(f));
        double scale = f.max_abs();
        for (std::int64_t i = 0; i < n; ++i)
            CHECK(std::abs(f.at(0, static_cast<int>(i)) - g.at(0, static_cast<int>(i))) <
                  1e-12 * scale);
    }
    PhysicalField f3 = random_physical_3d(16, 3, 5);
    PhysicalField g3 = inverse_transform(forward_transform(f3));
    double scale = f3.max_abs();
    auto a = f3.data();
    auto b = g3.data();
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12 * scale);
}

TEST_CASE("Parseval holds for random fields") {
    for (int n : {8, 16, 32, 64, 1024}) {
        PhysicalField f = random_physical_1d(n, 200 + n);
        SpectralField s = forward_transform(f);
        double phys = 0;
        for (double v : f.data()) phys += v * v;
        phys /= n;
        CHECK(std::abs(phys - s.energy()) < 1e-10 * phys);
    }
    PhysicalField f3 = random_physical_3d(16, 3, 6);
    SpectralField s3 = forward_transform(f3);
    double phys = 0;
    for (double v : f3.data()) phys += v * v;
    phys /= f3.grid().points();
    CHECK(std::abs(phys - s3.energy()) < 1e-10 * phys);
}

TEST_CASE("spectral derivative: analytic cases") {
    PhysicalField f = sample_1d(32, [](double x) { return std::cos(x); });
    SpectralField du = spectral_derivative(forward_transform(f), 1);
    PhysicalField d = inverse_transform(du);
    for (int i = 0; i < 32; ++i)
        CHECK(std::abs(d.at(0, i) + std::sin(two_pi * i / 32)) < 1e-12);

    PhysicalField c = sample_1d(32, [](double) { return 3.7; });
    CHECK(inverse_transform(spectral_derivative(forward_transform(c), 1)).max_abs() < 1e-12);

    PhysicalField s3 = sample_1d(32, [](double x) { return std::sin(3 * x); });
    PhysicalField d3 = inverse_transform(spectral_derivative(forward_transform(s3), 1));
    for (int i = 0; i < 32; ++i)
        CHECK(std::abs(d3.at(0, i) - 3 * std::cos(3 * two_pi * i / 32)) < 1e-12);
}

TEST_CASE("spectral derivative: invalid axis and Nyquist zeroing") {
    SpectralField s = random_hermitian_1d(16, 3);
    CHECK_THROWS_AS(spectral_derivative(s, 2), Error);
    SpectralField d = spectral_derivative(s, 1);
    CHECK(std::abs(d.at(0, 8)) == 0.0);
}

TEST_CASE("spectral derivative matches the finite-difference limit at order >= 4") {
    // analytic periodic function, spectrally resolved at n = 128
    auto fn = [](double x) { return std::exp(std::sin(x)) * std::cos(2 * x); };
    const int n = 128;
    PhysicalField f = sample_1d(n, fn);
    PhysicalField d = inverse_transform(spectral_derivative(forward_transform(f), 1));

    auto fd4 = [&](double x, double h) {
        return (-fn(x + 2 * h) + 8 * fn(x + h) - 8 * fn(x - h) + fn(x - 2 * h)) / (12 * h);
    };
    std::vector<double> errs;
    for (double h : {0.02, 0.01, 0.005}) {
        double e = 0;
        for (int i = 0; i < n; ++i)
            e = std::max(e, std::abs(fd4(two_pi * i / n, h) - d.at(0, i)));
        errs.push_back(e);
    }
    double order1 = std::log2(errs[0] / errs[1]);
    double order2 = std::log2(errs[1] / errs[2]);
    CHECK(order1 > 3.5);
    CHECK(order2 > 3.5);
}

TEST_CASE("dealiased product: cosine squared") {
    SpectralField a = single_mode_1d(8, 1, cplx(0.5)); // cos x
    SpectralField p = dealiased_product(a, a);
    CHECK(std::abs(p.at(0, 0) - cplx(0.5)) < 1e-12);
    CHECK(std::abs(p.at(0, mode_index(2, 8)) - cplx(0.25)) < 1e-12);
    CHECK(std::abs(p.at(0, mode_index(-2, 8)) - cplx(0.25)) < 1e-12);
    for (int i = 0; i < 8; ++i)
        if (i != 0 && i != 2 && i != 6) CHECK(std::abs(p.at(0, i)) < 1e-12);
}

TEST_CASE("dealiased product: zero operand") {
    SpectralField a = random_hermitian_1d(16, 11);
    SpectralField z(Grid(1, 16), 1);
    CHECK(max_abs(dealiased_product(a, z).data()) < 1e-15);
}

TEST_CASE("dealiased product: grid mismatch") {
    SpectralField a(Grid(1, 16), 1), b(Grid(1, 32), 1);
    CHECK_THROWS_AS(dealiased_product(a, b), Error);
}

TEST_CASE("dealiased product: aliasing-prone mode pair equals truncated convolution") {
    // k=3 times k=3 on n=8: the true product lives at k = 0, +-6, all beyond
    // the retained band except 0 after truncation folds nothing back in
    SpectralField a = single_mode_1d(8, 3, cplx(0.5));
    SpectralField p = dealiased_product(a, a);
    SpectralField oracle = convolution_oracle_1d(a, a);
    for (int i = 0; i < 8; ++i) CHECK(std::abs(p.at(0, i) - oracle.at(0, i)) < 1e-12);
}

TEST_CASE("dealiased product equals brute-force convolution: exhaustive mode pairs") {
    for (int n : {8, 16, 32}) {
        for (int kp = 0; kp <= n / 2; ++kp)
            for (int kq = 0; kq <= n / 2; ++kq) {
                SpectralField a = single_mode_1d(n, kp, cplx(0.4, 0.3));
                SpectralField b = single_mode_1d(n, kq, cplx(-0.2, 0.7));
                SpectralField p = dealiased_product(a, b);
                SpectralField o = convolution_oracle_1d(a, b);
                for (int i = 0; i < n; ++i)
                    CHECK(std::abs(p.at(0, i) - o.at(0, i)) < 1e-12);
            }
    }
}

TEST_CASE("dealiased product equals brute-force convolution: random spectra") {
    for (int n : {8, 12, 16, 20, 24, 28, 32}) {
        for (unsigned seed : {1u, 2u, 3u}) {
            SpectralField a = random_hermitian_1d(n, seed);
            SpectralField b = random_hermitian_1d(n, seed + 50);
            SpectralField p = dealiased_product(a, b);
            SpectralField o = convolution_oracle_1d(a, b);
            for (int i = 0; i < n; ++i) CHECK(std::abs(p.at(0, i) - o.at(0, i)) < 1e-12);
        }
    }
}

TEST_CASE("shell energies: single mode, zero field, Taylor-Green") {
    SpectralField c = single_mode_1d(16, 1, cplx(0.5));
    ShellSpectrum sp = shell_energies(c);
    CHECK(std::abs(sp.energy[1] - 0.5) < 1e-14);
    CHECK(std::abs(sp.total() - 0.5) < 1e-14);

    ShellSpectrum zero = shell_energies(SpectralField(Grid(1, 16), 1));
    CHECK(zero.total() == 0.0);

    EulerState tg = taylor_green(Grid(3, 16));
    ShellSpectrum tg_sp = shell_energies(tg.field);
    CHECK(std::abs(tg_sp.energy[2] - 0.25) < 1e-12); // round(sqrt(3)) = 2
    CHECK(std::abs(tg_sp.total() - 0.25) < 1e-12);
    // direct |u(k)|^2 summation oracle
    double direct = 0;
    for (const cplx& v : tg.field.data()) direct += std::norm(v);
    CHECK(std::abs(tg_sp.total() - direct) < 1e-14);
    // Parseval against shells for a random field
    PhysicalField rf = random_physical_3d(16, 3, 17);
    SpectralField rs = forward_transform(rf);
    CHECK(std::abs(shell_energies(rs).total() - rs.energy()) < 1e-10 * rs.energy());
}

TEST_CASE("energy ratio: 1d criterion") {
    SpectralField c = single_mode_1d(16, 1, cplx(0.5));
    CHECK(energy_ratio(c) == 0.0);

    SpectralField both = single_mode_1d(16, 1, cplx(0.3, 0.1));
    both.at(0, 8) = std::abs(cplx(0.3, 0.1)); // |u(n/2)| = |u(1)|
    CHECK(std::abs(energy_ratio(both) - 1.0) < 1e-12);

    SpectralField zero(Grid(1, 16), 1);
    CHECK_THROWS_AS(energy_ratio(zero), Error);
}

TEST_CASE("energy ratio: 3d per-mode densities with inner-shell fallback") {
    const int n = 16;
    EulerState tg = taylor_green(Grid(3, n));
    CHECK(energy_ratio(tg.field) == 0.0); // outer shell empty, inner = shell 2

    SpectralField f = tg.field;
    // put some energy in the outermost shell: |(7,3,2)| rounds to 8 = n/2
    f.at(0, mode_index(7, n), mode_index(3, n), mode_index(2, n)) = cplx(0.0, 1e-3);
    f.at(0, mode_index(-7, n), mode_index(-3, n), mode_index(-2, n)) = cplx(0.0, -1e-3);

    // independent mode counts over the live cube |k_i| <= n/2 - 1
    auto count_shell = [&](int shell) {
        int cnt = 0;
        for (int a = -n / 2 + 1; a < n / 2; ++a)
            for (int b = -n / 2 + 1; b < n / 2; ++b)
                for (int c = -n / 2 + 1; c < n / 2; ++c)
                    if (std::lround(std::sqrt(double(a * a + b * b + c * c))) == shell) ++cnt;
        return cnt;
    };
    double want = (2e-6 / count_shell(8)) / (0.25 / count_shell(2));
    CHECK(energy_ratio(f) == doctest::Approx(want).epsilon(1e-9));
}
