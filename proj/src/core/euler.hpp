#pragma once

#include "dealias.hpp"
#include "forcing.hpp"

#include <array>

namespace specwin {

struct EulerState {
    SpectralField field;                // 3 components, 3D
    double time_local = 0.0;
    double viscosity_effective = 0.0;   // 0 for Euler runs
};

/// 3-component vorticity samples in physical space.
struct VorticityField {
    PhysicalField values;
};

enum class VorticityMode { Component, Modulus };

struct PeakLocation {
    std::array<int, 3> index{0, 0, 0};
    double value = 0.0;
};

/// Project onto divergence-free fields: u(k) <- (I - k k^T/|k|^2) u(k),
/// mean mode untouched.
SpectralField leray_project(const SpectralField& s);
void leray_project_inplace(SpectralField& s);

/// Euler/Navier-Stokes right-hand side with the pressure eliminated by the
/// Leray projector. The advection term is evaluated in divergence form
/// d/dx_j (u_i u_j) on the padded grid, which agrees with the convective
/// form (u.grad)u to rounding for spectrally divergence-free states (the
/// two differ by the dealiased product of u with div u). Nyquist planes of
/// the nonlinear term are zeroed so conjugate symmetry is preserved.
class EulerRhs {
public:
    explicit EulerRhs(Grid grid, double viscosity = 0.0,
                      const FringeForcing* forcing = nullptr);

    void operator()(const SpectralField& u, double t, SpectralField& out);
    void set_viscosity(double nu) { viscosity_ = nu; }

private:
    DealiasWorkspace ws_;
    double viscosity_;
    const FringeForcing* forcing_;
    std::array<aligned_vector<cplx>, 3> pu_;   // padded physical velocity
    aligned_vector<cplx> prod_;                // padded physical product scratch
    std::array<SpectralField, 6> tij_;         // folded products, symmetric tensor
};

/// Literal convective-form evaluation (u.grad)u then projection; reference
/// path for equivalence tests, allocates per call.
SpectralField euler_rhs_convective(const EulerState& s);

/// One-shot divergence-form evaluation.
SpectralField euler_rhs(const EulerState& s);

VorticityField vorticity(const EulerState& s);

/// Taylor microscale sqrt(5 * int |u|^2 / int |grad u|^2), both integrals
/// evaluated spectrally.
double taylor_scale(const EulerState& s);

PeakLocation max_vorticity_location(const VorticityField& w, VorticityMode mode);

/// Taylor-Green vortex initial condition, divergence-free by construction.
EulerState taylor_green(Grid grid);

} // namespace specwin
