#pragma once

#include "field.hpp"

namespace specwin {

/// Energy per integer shell; shell s collects sum_c |u_c(k)|^2 over modes
/// with round(|k|) = s. Shells cover every mode (up to round(sqrt(d)*n/2)),
/// so the shell sum satisfies Parseval.
struct ShellSpectrum {
    std::vector<double> energy; // indexed by shell
    double total() const;
};

ShellSpectrum shell_energies(const SpectralField& s);

/// Restart criterion ratio comparing the outermost shell (index n/2) with
/// the innermost populated shell.
/// 1D: (|u(n/2)|^2 + |u(n/2-1)|^2) / |u(1)|^2 — the outermost band includes
/// the bin below Nyquist because the Nyquist bin of an even real grid
/// carries no sine component and is symmetry-dead for shock solutions
/// centered on a collocation point.
/// 3D: ratio of per-mode shell energy densities (shell sum / live-mode
/// count), which reduces to the 1D formula when counts cancel and lets one
/// epsilon serve both models. The inner shell is the innermost s >= 1
/// holding a non-vanishing share of the spectrum (Taylor-Green symmetry
/// keeps shell 1 empty, so the scan lands on shell 2 there).
/// Throws EmptyInnerShell when no shell >= 1 is populated.
double energy_ratio(const SpectralField& s);

} // namespace specwin
