#include "shells.hpp"

#include <cmath>

namespace specwin {

double ShellSpectrum::total() const {
    double t = 0.0;
    for (double e : energy) t += e;
    return t;
}

ShellSpectrum shell_energies(const SpectralField& s) {
    const Grid& g = s.grid();
    const int n = g.n;
    const int max_shell =
        static_cast<int>(std::lround(std::sqrt(static_cast<double>(g.dim)) * (n / 2)));
    ShellSpectrum out;
    out.energy.assign(max_shell + 1, 0.0);

    if (g.dim == 1) {
        for (int c = 0; c < s.ncomp(); ++c)
            for (int i = 0; i < n; ++i) {
                int shell = std::abs(wavenumber(i, n));
                out.energy[shell] += std::norm(s.at(c, i));
            }
    } else {
        for (int c = 0; c < s.ncomp(); ++c)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        double k1 = wavenumber(i, n), k2 = wavenumber(j, n), k3 = wavenumber(k, n);
                        int shell =
                            static_cast<int>(std::lround(std::sqrt(k1 * k1 + k2 * k2 + k3 * k3)));
                        out.energy[shell] += std::norm(s.at(c, i, j, k));
                    }
    }
    return out;
}

double energy_ratio(const SpectralField& s) {
    constexpr double floor = 1e-30;
    const int n = s.grid().n;

    if (s.grid().dim == 1) {
        // The outermost band spans the top two bins: the pure-Nyquist bin of
        // an even real DFT grid holds only a cosine amplitude, which is
        // identically zero for solutions symmetric about a collocation point
        // (the Burgers shock). The bin below carries the aliasing-onset
        // signal in that case.
        double inner = 0.0, outer = 0.0;
        for (int c = 0; c < s.ncomp(); ++c) {
            inner += std::norm(s.at(c, mode_index(1, n)));
            outer += std::norm(s.at(c, n / 2)) + std::norm(s.at(c, n / 2 - 1));
        }
        if (inner < floor) fail(ErrorCode::EmptyInnerShell, "mode 1 carries no energy");
        return outer / inner;
    }

    // 3D: shells are compared by their per-mode energy density, which is
    // what makes one epsilon serve both models (for 1D shells the mode
    // counts cancel and the density ratio reduces to the (|u_{n/2}|/|u_1|)^2
    // formula). Counts run over the live mode cube |k_i| <= n/2 - 1; the
    // Nyquist planes are structurally empty in 3D.
    ShellSpectrum shells = shell_energies(s);
    std::vector<double> count(shells.energy.size(), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == n / 2 || j == n / 2 || k == n / 2) continue;
                double k1 = wavenumber(i, n), k2 = wavenumber(j, n), k3 = wavenumber(k, n);
                int sh = static_cast<int>(std::lround(std::sqrt(k1 * k1 + k2 * k2 + k3 * k3)));
                count[sh] += 1.0;
            }

    double max_energy = 0.0;
    for (int sh = 1; sh < static_cast<int>(shells.energy.size()); ++sh)
        max_energy = std::max(max_energy, shells.energy[sh]);
    // a shell counts as populated only when it holds a non-vanishing share
    // of the spectrum; roundoff-seeded symmetry-breaking modes stay out
    const double populated = std::max(floor, 1e-12 * max_energy);

    int inner = -1;
    for (int sh = 1; sh <= n / 2; ++sh) {
        if (count[sh] > 0 && shells.energy[sh] >= populated) {
            inner = sh;
            break;
        }
    }
    if (inner < 0) fail(ErrorCode::EmptyInnerShell, "no populated inner shell");
    const int outer = n / 2;
    if (count[outer] == 0) return 0.0;
    double outer_density = shells.energy[outer] / count[outer];
    double inner_density = shells.energy[inner] / count[inner];
    return outer_density / inner_density;
}

} // namespace specwin
