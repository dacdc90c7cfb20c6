#include "burgers.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>

namespace specwin {

BurgersRhs::BurgersRhs(Grid grid, double viscosity, const FringeForcing* forcing)
    : ws_(grid), viscosity_(viscosity), forcing_(forcing), ux_(grid, 1),
      pu_(ws_.pad_points()), pux_(ws_.pad_points()) {
    if (grid.dim != 1) fail(ErrorCode::GridMismatch, "BurgersRhs needs a 1D grid");
    if (forcing_) grid_phys_.resize(static_cast<std::size_t>(grid.points()));
}

void BurgersRhs::operator()(const SpectralField& u, double /*t*/, SpectralField& out) {
    const Grid& g = u.grid();
    const int n = g.n;

    // u_x in spectral space (Nyquist zeroed)
    for (int i = 0; i < n; ++i) {
        int k = wavenumber(i, n);
        ux_.at(0, i) = (i == n / 2) ? cplx(0.0) : cplx(0.0, k) * u.at(0, i);
    }

    ws_.pad_inverse(u.component(0), pu_);
    ws_.pad_inverse(ux_.component(0), pux_);
    for (std::size_t i = 0; i < pu_.size(); ++i)
        pu_[i] = cplx(-pu_[i].real() * pux_[i].real(), 0.0);
    ws_.forward_fold(pu_, out.component(0));

    if (viscosity_ != 0.0) {
        for (int i = 0; i < n; ++i) {
            double k = wavenumber(i, n);
            out.at(0, i) -= viscosity_ * k * k * u.at(0, i);
        }
    }

    if (forcing_ && forcing_->strength > 0.0) {
        // damping toward the cycle's initial state inside the fringe
        PhysicalField uphys = inverse_transform_unchecked(u);
        PhysicalField term(g, 1);
        auto w = forcing_->weight.component(0);
        auto tgt = forcing_->target.component(0);
        auto up = uphys.component(0);
        auto tp = term.component(0);
        for (std::size_t i = 0; i < tp.size(); ++i)
            tp[i] = -forcing_->strength * w[i] * (up[i] - tgt[i]);
        SpectralField term_hat = forward_transform(term);
        auto o = out.component(0);
        auto th = term_hat.component(0);
        for (std::size_t i = 0; i < o.size(); ++i) o[i] += th[i];
    }
}

SpectralField burgers_rhs(const BurgersState& s) {
    BurgersRhs rhs(s.field.grid());
    SpectralField out(s.field.grid(), 1);
    rhs(s.field, s.time_local, out);
    return out;
}

int max_gradient_location(const BurgersState& s) {
    SpectralField ux = spectral_derivative(s.field, 1);
    PhysicalField g = inverse_transform_unchecked(ux);
    auto v = g.component(0);
    int best = 0;
    double best_val = -1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double a = std::abs(v[i]);
        if (a > best_val) {
            best_val = a;
            best = static_cast<int>(i);
        }
    }
    return best;
}

} // namespace specwin
