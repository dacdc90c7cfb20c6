#pragma once

#include "field.hpp"
#include "forcing.hpp"

#include <array>
#include <string>

namespace specwin {

/// Change-of-variables factors x' = alpha x, t' = beta t, u' = gamma u,
/// p' = delta p, plus the box split driving them. With the defaults the
/// extended sub-box (reduced pi plus fringe pi/2 per axis) has side 3*pi/2,
/// so stretching it back to 2*pi gives alpha = 4/3 exactly.
struct RescaleParams {
    double alpha = 4.0 / 3.0;
    double beta = 4.0 / 3.0;
    double gamma = 1.0;
    double delta = 1.0;
    double reduced_fraction = 0.5;  // reduced box side / full box side
    double fringe_fraction = 0.25;  // total fringe extent / full box side

    void validate() const;

    /// Samples per axis of the extended sub-box on an n-point grid.
    int box_samples(int n) const;
    /// Fringe samples per side of the extended sub-box.
    int fringe_samples(int n) const;
};

/// C1 monotone ramp with w(0)=0, w(1)=1, w'(0)=w'(1)=0.
double fringe_ramp(double xi, const std::string& profile);

/// Samples of f on the sub-box of side (reduced+fringe)*2*pi centered at the
/// given collocation index, original spacing, periodic wrap-around. The peak
/// lands at sample index M/2 per axis.
PhysicalField extract_box(const PhysicalField& f, const std::array<int, 3>& center,
                          const RescaleParams& params);

/// Blend the outer fringe band of the extended sub-box so the field becomes
/// periodic and C1 across the seam. Per axis, fringe samples are cross-faded
/// against a cubic bridge joining value and slope of the trusted data on
/// both sides of the seam; interior samples are untouched.
void apply_fringe(PhysicalField& box, int fringe_per_side, const std::string& profile);

/// Reinterpret the M-per-axis sub-box samples as one 2*pi period (this is
/// the stretch x' = alpha x), transform on M modes, and embed into the
/// n-mode array with zeros in the new high modes. Zero-padding is exact
/// trigonometric interpolation: the respawned field reproduces the box
/// samples at the M-point subsampling.
SpectralField stretch_respawn(const PhysicalField& box, const RescaleParams& params, Grid target);

/// Viscosity update under the change of variables: nu' = nu * alpha^2/beta
/// (4/3 with defaults). Advection and pressure coefficients stay 1 because
/// beta = alpha and gamma = delta = 1.
double rescale_viscosity(double nu, const RescaleParams& params);

/// Fringe damping weight on the respawned n-grid: 1 deep inside the fringe
/// image, 0 in the interior, ramped with the named profile.
PhysicalField fringe_weight_mask(Grid grid, const RescaleParams& params,
                                 const std::string& profile);

/// Embed an ns-per-axis spectrum into an nd-per-axis spectrum (nd >= ns),
/// splitting each source Nyquist bin across the +-ns/2 pair.
void spectral_embed(int dim, std::span<const cplx> src, int ns, std::span<cplx> dst, int nd);

} // namespace specwin
