#pragma once

#include "dealias.hpp"
#include "forcing.hpp"

namespace specwin {

struct BurgersState {
    SpectralField field;      // 1 component, 1D
    double time_local = 0.0;
};

/// Right-hand side of u_t + u u_x = 0 in spectral space:
/// -dealiased_product(u, u_x). Owns its padded-transform workspace, so a
/// single instance must not be shared across concurrent integrations.
class BurgersRhs {
public:
    explicit BurgersRhs(Grid grid, double viscosity = 0.0,
                        const FringeForcing* forcing = nullptr);

    void operator()(const SpectralField& u, double t, SpectralField& out);

private:
    DealiasWorkspace ws_;
    double viscosity_;
    const FringeForcing* forcing_;
    SpectralField ux_;
    aligned_vector<cplx> pu_, pux_;
    aligned_vector<cplx> grid_phys_; // N-grid scratch for the forcing term
};

/// Convenience single-shot evaluation (tests, small grids).
SpectralField burgers_rhs(const BurgersState& s);

/// Collocation index maximizing |u_x|; ties broken by smallest index.
/// The gradient maximum stands in for the vorticity peak in 1D.
int max_gradient_location(const BurgersState& s);

} // namespace specwin
