#include "rescale.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>

namespace specwin {

// ============================================================================
// Parameters
// ============================================================================

void RescaleParams::validate() const {
    if (!(reduced_fraction > 0 && fringe_fraction >= 0 &&
          reduced_fraction + fringe_fraction < 1.0))
        fail(ErrorCode::ConfigError, "box fractions must satisfy 0 < reduced+fringe < 1");
    double expected_alpha = 1.0 / (reduced_fraction + fringe_fraction);
    if (std::abs(alpha - expected_alpha) > 1e-12)
        fail(ErrorCode::ConfigError, "alpha must equal 1/(reduced_fraction+fringe_fraction)");
    if (!(beta > 0 && gamma > 0 && delta > 0))
        fail(ErrorCode::ConfigError, "scale factors must be positive");
}

int RescaleParams::box_samples(int n) const {
    double m = n * (reduced_fraction + fringe_fraction);
    int mi = static_cast<int>(std::lround(m));
    if (std::abs(m - mi) > 1e-9 || mi % 2 != 0 || mi < 4)
        fail(ErrorCode::ExtentTooLarge, "sub-box sample count must be a positive even integer");
    if (mi > n) fail(ErrorCode::ExtentTooLarge, "sub-box exceeds the domain");
    return mi;
}

int RescaleParams::fringe_samples(int n) const {
    double f = n * fringe_fraction / 2.0;
    int fi = static_cast<int>(std::lround(f));
    if (std::abs(f - fi) > 1e-9 || fi < 1)
        fail(ErrorCode::ExtentTooLarge, "fringe width must be a whole number of samples per side");
    return fi;
}

double fringe_ramp(double xi, const std::string& profile) {
    xi = std::clamp(xi, 0.0, 1.0);
    if (profile == "raised-cosine") return 0.5 * (1.0 - std::cos(pi * xi));
    if (profile == "smoothstep") return xi * xi * (3.0 - 2.0 * xi);
    fail(ErrorCode::ConfigError, "unknown fringe profile '" + profile + "'");
}

// ============================================================================
// Box extraction
// ============================================================================

PhysicalField extract_box(const PhysicalField& f, const std::array<int, 3>& center,
                          const RescaleParams& params) {
    const Grid& g = f.grid();
    const int n = g.n;
    const int m = params.box_samples(n);
    Grid box_grid(g.dim, m);
    PhysicalField out(box_grid, f.ncomp());

    if (g.dim == 1) {
        const int start = center[0] - m / 2;
        for (int c = 0; c < f.ncomp(); ++c)
            for (int i = 0; i < m; ++i) out.at(c, i) = f.at(c, wrap_index(start + i, n));
    } else {
        const int s1 = center[0] - m / 2, s2 = center[1] - m / 2, s3 = center[2] - m / 2;
        for (int c = 0; c < f.ncomp(); ++c)
            for (int i = 0; i < m; ++i) {
                int wi = wrap_index(s1 + i, n);
                for (int j = 0; j < m; ++j) {
                    int wj = wrap_index(s2 + j, n);
                    for (int k = 0; k < m; ++k)
                        out.at(c, i, j, k) = f.at(c, wi, wj, wrap_index(s3 + k, n));
                }
            }
    }
    return out;
}

// ============================================================================
// Fringe blending
// ============================================================================

namespace {

// Blend one periodic pencil of length m with f fringe samples per side.
// The bridge is a cubic Hermite through the seam anchored at the outermost
// trusted samples (value + one-sided 2nd-order slope). Slopes are clamped
// against the anchor secant (Fritsch-Carlson) so the bridge never leaves
// the range spanned by the anchors; unclamped slopes let the cubic swing
// far outside the data on rough pencils, which pumps energy into the
// fringe at every respawn.
void blend_pencil(double* g, int m, int f, const std::string& profile) {
    const int ar = m - f - 1; // last trusted sample right of the seam path
    const int al = f;         // first trusted sample left of it
    const double va = g[ar], vb = g[al];
    double sa = (3.0 * g[ar] - 4.0 * g[ar - 1] + g[ar - 2]) / 2.0;
    double sb = (-3.0 * g[al] + 4.0 * g[al + 1] - g[al + 2]) / 2.0;
    const double xa = ar;
    const double span = 2.0 * f + 1.0; // xa .. al + m
    const double seam = m - 0.5;
    const double half_band = f + 0.5;

    const double secant = (vb - va) / span;
    if (secant == 0.0) {
        sa = sb = 0.0;
    } else {
        sa = std::clamp(sa / secant, 0.0, 3.0) * secant;
        sb = std::clamp(sb / secant, 0.0, 3.0) * secant;
    }

    auto blend_at = [&](int j, double x) {
        double t = (x - xa) / span;
        double h00 = (2 * t - 3) * t * t + 1;
        double h10 = ((t - 2) * t + 1) * t;
        double h01 = (3 - 2 * t) * t * t;
        double h11 = (t - 1) * t * t;
        double bridge = h00 * va + h10 * span * sa + h01 * vb + h11 * span * sb;
        double w = fringe_ramp(std::abs(x - seam) / half_band, profile);
        g[j] = w * g[j] + (1.0 - w) * bridge;
    };

    for (int j = m - f; j < m; ++j) blend_at(j, j);
    for (int j = 0; j < f; ++j) blend_at(j, j + m);
}

} // namespace

void apply_fringe(PhysicalField& box, int fringe_per_side, const std::string& profile) {
    const Grid& g = box.grid();
    const int m = g.n;
    const int f = fringe_per_side;
    if (f < 1 || 2 * f + 3 > m) fail(ErrorCode::ExtentTooLarge, "fringe too wide for the box");

    if (g.dim == 1) {
        for (int c = 0; c < box.ncomp(); ++c)
            blend_pencil(box.component(c).data(), m, f, profile);
        return;
    }

    std::vector<double> pencil(m);
    for (int c = 0; c < box.ncomp(); ++c) {
        // axis 1
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                for (int i = 0; i < m; ++i) pencil[i] = box.at(c, i, j, k);
                blend_pencil(pencil.data(), m, f, profile);
                for (int i = 0; i < m; ++i) box.at(c, i, j, k) = pencil[i];
            }
        // axis 2
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k) {
                for (int j = 0; j < m; ++j) pencil[j] = box.at(c, i, j, k);
                blend_pencil(pencil.data(), m, f, profile);
                for (int j = 0; j < m; ++j) box.at(c, i, j, k) = pencil[j];
            }
        // axis 3
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double* row = &box.at(c, i, j, 0);
                blend_pencil(row, m, f, profile);
            }
    }
}

// ============================================================================
// Stretch + respawn
// ============================================================================

void spectral_embed(int dim, std::span<const cplx> src, int ns, std::span<cplx> dst, int nd) {
    if (nd < ns) fail(ErrorCode::SizeMismatch, "target spectrum smaller than source");
    struct Target {
        int idx;
        double weight;
    };
    std::vector<std::vector<Target>> map(ns);
    for (int i = 0; i < ns; ++i) {
        if (i == ns / 2 && ns < nd) {
            map[i] = {{mode_index(ns / 2, nd), 0.5}, {mode_index(-ns / 2, nd), 0.5}};
        } else {
            map[i] = {{mode_index(wavenumber(i, ns), nd), 1.0}};
        }
    }

    std::fill(dst.begin(), dst.end(), cplx(0.0));
    if (dim == 1) {
        for (int i = 0; i < ns; ++i)
            for (const Target& t : map[i]) dst[t.idx] += t.weight * src[i];
    } else {
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < ns; ++j)
                for (int k = 0; k < ns; ++k) {
                    cplx v = src[static_cast<std::size_t>((std::int64_t(i) * ns + j) * ns + k)];
                    if (v == cplx(0.0)) continue;
                    for (const Target& ti : map[i])
                        for (const Target& tj : map[j])
                            for (const Target& tk : map[k])
                                dst[static_cast<std::size_t>((std::int64_t(ti.idx) * nd + tj.idx) *
                                                                 nd +
                                                             tk.idx)] +=
                                    ti.weight * tj.weight * tk.weight * v;
                }
    }
}

SpectralField stretch_respawn(const PhysicalField& box, const RescaleParams& params, Grid target) {
    const Grid& bg = box.grid();
    const int m = bg.n;
    if (bg.dim != target.dim) fail(ErrorCode::SizeMismatch, "box and target dimensions disagree");
    if (m > target.n) fail(ErrorCode::SizeMismatch, "box has more samples than the target grid");
    if (m != params.box_samples(target.n))
        fail(ErrorCode::SizeMismatch, "box sample count inconsistent with rescale parameters");

    // Forward transform on the box grid: the samples are reinterpreted as one
    // 2*pi period, which realizes the spatial stretch. gamma = 1 leaves the
    // amplitudes untouched (general gamma would scale them here).
    const std::size_t pts = static_cast<std::size_t>(bg.points());
    aligned_vector<cplx> in(pts), modes(pts);
    SpectralField out(target, box.ncomp());
    const double scale = params.gamma / static_cast<double>(pts);
    for (int c = 0; c < box.ncomp(); ++c) {
        auto bv = box.component(c);
        for (std::size_t i = 0; i < pts; ++i) in[i] = cplx(bv[i], 0.0);
        fft_exec(bg.dim, m, in.data(), modes.data(), true);
        for (cplx& v : modes) v *= scale;
        spectral_embed(bg.dim, modes, m, out.component(c), target.n);
    }
    return out;
}

double rescale_viscosity(double nu, const RescaleParams& params) {
    return nu * params.alpha * params.alpha / params.beta;
}

PhysicalField fringe_weight_mask(Grid grid, const RescaleParams& params,
                                 const std::string& profile) {
    const int n = grid.n;
    const double fringe_half = params.fringe_fraction / (2.0 * (params.reduced_fraction +
                                                                params.fringe_fraction));
    // per-axis interior weight: 1 in the trusted core, ramping to 0 at the seam
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        double x = static_cast<double>(i) / n; // normalized [0,1)
        double d = std::min(x, 1.0 - x);       // distance to the seam
        v[i] = d >= fringe_half ? 1.0 : fringe_ramp(d / fringe_half, profile);
    }

    PhysicalField mask(grid, 1);
    if (grid.dim == 1) {
        for (int i = 0; i < n; ++i) mask.at(0, i) = 1.0 - v[i];
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) mask.at(0, i, j, k) = 1.0 - v[i] * v[j] * v[k];
    }
    return mask;
}

} // namespace specwin
