#include "euler.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>

namespace specwin {

// ============================================================================
// Projection
// ============================================================================

void leray_project_inplace(SpectralField& s) {
    if (s.grid().dim != 3 || s.ncomp() != 3)
        fail(ErrorCode::GridMismatch, "leray_project needs a 3D 3-component field");
    const int n = s.grid().n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == 0 && j == 0 && k == 0) continue;
                double k1 = wavenumber(i, n), k2 = wavenumber(j, n), k3 = wavenumber(k, n);
                double k2sum = k1 * k1 + k2 * k2 + k3 * k3;
                cplx dot = k1 * s.at(0, i, j, k) + k2 * s.at(1, i, j, k) + k3 * s.at(2, i, j, k);
                cplx f = dot / k2sum;
                s.at(0, i, j, k) -= k1 * f;
                s.at(1, i, j, k) -= k2 * f;
                s.at(2, i, j, k) -= k3 * f;
            }
}

SpectralField leray_project(const SpectralField& s) {
    SpectralField out = s;
    leray_project_inplace(out);
    return out;
}

// ============================================================================
// Right-hand side
// ============================================================================

EulerRhs::EulerRhs(Grid grid, double viscosity, const FringeForcing* forcing)
    : ws_(grid), viscosity_(viscosity), forcing_(forcing) {
    if (grid.dim != 3) fail(ErrorCode::GridMismatch, "EulerRhs needs a 3D grid");
    for (auto& b : pu_) b.resize(ws_.pad_points());
    prod_.resize(ws_.pad_points());
    for (auto& t : tij_) t = SpectralField(grid, 1);
}

void EulerRhs::operator()(const SpectralField& u, double /*t*/, SpectralField& out) {
    const Grid& g = u.grid();
    const int n = g.n;

    for (int c = 0; c < 3; ++c) ws_.pad_inverse(u.component(c), pu_[c]);

    // symmetric tensor u_i u_j: order 11, 22, 33, 12, 13, 23
    static constexpr int ti[6] = {0, 1, 2, 0, 0, 1};
    static constexpr int tj[6] = {0, 1, 2, 1, 2, 2};
    for (int q = 0; q < 6; ++q) {
        const auto& a = pu_[ti[q]];
        const auto& b = pu_[tj[q]];
        for (std::size_t i = 0; i < prod_.size(); ++i)
            prod_[i] = cplx(a[i].real() * b[i].real(), 0.0);
        ws_.forward_fold(prod_, tij_[q].component(0));
    }

    auto tensor = [&](int i, int j) -> const SpectralField& {
        if (i == j) return tij_[i];
        int a = std::min(i, j), b = std::max(i, j);
        if (a == 0 && b == 1) return tij_[3];
        if (a == 0 && b == 2) return tij_[4];
        return tij_[5];
    };

    // out_i = -i k_j T_ij, Nyquist planes zeroed, then projected
    for (int c = 0; c < 3; ++c) {
        const SpectralField& t1 = tensor(c, 0);
        const SpectralField& t2 = tensor(c, 1);
        const SpectralField& t3 = tensor(c, 2);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    if (i == n / 2 || j == n / 2 || k == n / 2) {
                        out.at(c, i, j, k) = 0.0;
                        continue;
                    }
                    double k1 = wavenumber(i, n), k2 = wavenumber(j, n), k3 = wavenumber(k, n);
                    cplx div = k1 * t1.at(0, i, j, k) + k2 * t2.at(0, i, j, k) +
                               k3 * t3.at(0, i, j, k);
                    out.at(c, i, j, k) = cplx(0.0, -1.0) * div;
                }
    }

    leray_project_inplace(out);

    if (viscosity_ != 0.0) {
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        double k1 = wavenumber(i, n), k2 = wavenumber(j, n),
                               k3 = wavenumber(k, n);
                        out.at(c, i, j, k) -=
                            viscosity_ * (k1 * k1 + k2 * k2 + k3 * k3) * u.at(c, i, j, k);
                    }
    }

    if (forcing_ && forcing_->strength > 0.0) {
        PhysicalField uphys = inverse_transform_unchecked(u);
        PhysicalField term(g, 3);
        auto w = forcing_->weight.component(0);
        for (int c = 0; c < 3; ++c) {
            auto up = uphys.component(c);
            auto tgt = forcing_->target.component(c);
            auto tp = term.component(c);
            for (std::size_t i = 0; i < tp.size(); ++i)
                tp[i] = -forcing_->strength * w[i] * (up[i] - tgt[i]);
        }
        SpectralField term_hat = forward_transform(term);
        leray_project_inplace(term_hat); // keep the forced system divergence-free
        auto o = out.data();
        auto th = term_hat.data();
        for (std::size_t i = 0; i < o.size(); ++i) o[i] += th[i];
    }
}

SpectralField euler_rhs(const EulerState& s) {
    EulerRhs rhs(s.field.grid(), s.viscosity_effective);
    SpectralField out(s.field.grid(), 3);
    rhs(s.field, s.time_local, out);
    return out;
}

SpectralField euler_rhs_convective(const EulerState& s) {
    const Grid& g = s.field.grid();
    const int n = g.n;
    DealiasWorkspace ws(g);

    std::array<aligned_vector<cplx>, 3> pu;
    for (int c = 0; c < 3; ++c) {
        pu[c].resize(ws.pad_points());
        ws.pad_inverse(s.field.component(c), pu[c]);
    }

    SpectralField out(g, 3);
    aligned_vector<cplx> pd(ws.pad_points()), acc(ws.pad_points());
    for (int c = 0; c < 3; ++c) {
        std::fill(acc.begin(), acc.end(), cplx(0.0));
        for (int ax = 1; ax <= 3; ++ax) {
            SpectralField dc = spectral_derivative(s.field, ax);
            // single component view of du_c/dx_ax
            aligned_vector<cplx> comp(dc.component(c).begin(), dc.component(c).end());
            ws.pad_inverse(comp, pd);
            const auto& uj = pu[ax - 1];
            for (std::size_t i = 0; i < acc.size(); ++i)
                acc[i] += cplx(uj[i].real() * pd[i].real(), 0.0);
        }
        for (cplx& v : acc) v = -v;
        ws.forward_fold(acc, out.component(c));
    }

    for (int c = 0; c < 3; ++c)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (i == n / 2 || j == n / 2 || k == n / 2) out.at(c, i, j, k) = 0.0;

    leray_project_inplace(out);

    if (s.viscosity_effective != 0.0) {
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        double k1 = wavenumber(i, n), k2 = wavenumber(j, n),
                               k3 = wavenumber(k, n);
                        out.at(c, i, j, k) -= s.viscosity_effective *
                                              (k1 * k1 + k2 * k2 + k3 * k3) * s.field.at(c, i, j, k);
                    }
    }
    return out;
}

// ============================================================================
// Diagnostics
// ============================================================================

VorticityField vorticity(const EulerState& s) {
    const Grid& g = s.field.grid();
    const int n = g.n;
    SpectralField w(g, 3);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double k1 = (i == n / 2) ? 0.0 : wavenumber(i, n);
                double k2 = (j == n / 2) ? 0.0 : wavenumber(j, n);
                double k3 = (k == n / 2) ? 0.0 : wavenumber(k, n);
                cplx u1 = s.field.at(0, i, j, k), u2 = s.field.at(1, i, j, k),
                     u3 = s.field.at(2, i, j, k);
                w.at(0, i, j, k) = cplx(0.0, 1.0) * (k2 * u3 - k3 * u2);
                w.at(1, i, j, k) = cplx(0.0, 1.0) * (k3 * u1 - k1 * u3);
                w.at(2, i, j, k) = cplx(0.0, 1.0) * (k1 * u2 - k2 * u1);
            }
    return {inverse_transform_unchecked(w)};
}

double taylor_scale(const EulerState& s) {
    const Grid& g = s.field.grid();
    const int n = g.n;
    double num = 0.0, den = 0.0;
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double k1 = wavenumber(i, n), k2 = wavenumber(j, n), k3 = wavenumber(k, n);
                    double e = std::norm(s.field.at(c, i, j, k));
                    num += e;
                    den += (k1 * k1 + k2 * k2 + k3 * k3) * e;
                }
    if (den < 1e-30) fail(ErrorCode::ZeroGradient, "gradient energy vanishes");
    return std::sqrt(5.0 * num / den);
}

PeakLocation max_vorticity_location(const VorticityField& w, VorticityMode mode) {
    const Grid& g = w.values.grid();
    const int n = g.n;
    PeakLocation best;
    best.value = -1.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double v;
                if (mode == VorticityMode::Component) {
                    v = std::max({std::abs(w.values.at(0, i, j, k)),
                                  std::abs(w.values.at(1, i, j, k)),
                                  std::abs(w.values.at(2, i, j, k))});
                } else {
                    double a = w.values.at(0, i, j, k), b = w.values.at(1, i, j, k),
                           c = w.values.at(2, i, j, k);
                    v = std::sqrt(a * a + b * b + c * c);
                }
                if (v > best.value) {
                    best.value = v;
                    best.index = {i, j, k};
                }
            }
    return best;
}

EulerState taylor_green(Grid grid) {
    if (grid.dim != 3) fail(ErrorCode::GridMismatch, "taylor_green needs a 3D grid");
    EulerState s{SpectralField(grid, 3), 0.0, 0.0};
    const int n = grid.n;
    for (int s1 : {1, -1})
        for (int s2 : {1, -1})
            for (int s3 : {1, -1}) {
                int i = mode_index(s1, n), j = mode_index(s2, n), k = mode_index(s3, n);
                s.field.at(0, i, j, k) = cplx(0.0, -s1 / 8.0);
                s.field.at(1, i, j, k) = cplx(0.0, s2 / 8.0);
            }
    return s;
}

} // namespace specwin
