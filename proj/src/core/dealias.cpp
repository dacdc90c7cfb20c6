#include "dealias.hpp"

#include "fft.hpp"

#include <algorithm>

namespace specwin {

namespace {

bool smooth_enough(int m) {
    for (int p : {2, 3, 5, 7, 11, 13})
        while (m % p == 0) m /= p;
    return m == 1;
}

} // namespace

int dealias_pad_size(int n) {
    int m = 3 * (n / 2) + 1;
    if (m % 2 != 0) ++m;
    while (!smooth_enough(m)) m += 2;
    return m;
}

DealiasWorkspace::DealiasWorkspace(Grid grid) : grid_(grid), pad_n_(dealias_pad_size(grid.n)) {
    pad_points_ = 1;
    for (int d = 0; d < grid_.dim; ++d) pad_points_ *= static_cast<std::size_t>(pad_n_);
    spec_.resize(pad_points_);

    const int n = grid_.n;
    pad_map_.resize(n);
    for (int i = 0; i < n; ++i) {
        int k = wavenumber(i, n);
        if (i == n / 2) {
            pad_map_[i] = {{mode_index(n / 2, pad_n_), 0.5}, {mode_index(-n / 2, pad_n_), 0.5}};
        } else {
            pad_map_[i] = {{mode_index(k, pad_n_), 1.0}};
        }
    }
    fold_map_.resize(n);
    for (int j = 0; j < n; ++j) {
        int k = wavenumber(j, n);
        if (j == n / 2) {
            fold_map_[j] = {mode_index(n / 2, pad_n_), mode_index(-n / 2, pad_n_)};
        } else {
            fold_map_[j] = {mode_index(k, pad_n_)};
        }
    }
}

void DealiasWorkspace::pad_inverse(std::span<const cplx> modes, std::span<cplx> padded_physical) {
    const int n = grid_.n;
    const int m = pad_n_;
    std::fill(spec_.begin(), spec_.end(), cplx(0.0));

    if (grid_.dim == 1) {
        for (int i = 0; i < n; ++i)
            for (const Target& t : pad_map_[i]) spec_[t.idx] += t.weight * modes[i];
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    cplx v = modes[static_cast<std::size_t>((std::int64_t(i) * n + j) * n + k)];
                    if (v == cplx(0.0)) continue;
                    for (const Target& ti : pad_map_[i])
                        for (const Target& tj : pad_map_[j])
                            for (const Target& tk : pad_map_[k]) {
                                std::size_t dst = static_cast<std::size_t>(
                                    (std::int64_t(ti.idx) * m + tj.idx) * m + tk.idx);
                                spec_[dst] += (ti.weight * tj.weight * tk.weight) * v;
                            }
                }
    }
    fft_exec(grid_.dim, m, spec_.data(), padded_physical.data(), false);
    // keep the samples strictly real
    for (cplx& v : padded_physical) v = cplx(v.real(), 0.0);
}

void DealiasWorkspace::forward_fold(std::span<const cplx> padded_physical, std::span<cplx> modes) {
    const int n = grid_.n;
    const int m = pad_n_;
    fft_exec(grid_.dim, m, padded_physical.data(), spec_.data(), true);
    const double scale = 1.0 / static_cast<double>(pad_points_);

    if (grid_.dim == 1) {
        for (int j = 0; j < n; ++j) {
            cplx acc(0.0);
            for (int src : fold_map_[j]) acc += spec_[src];
            modes[j] = scale * acc;
        }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    cplx acc(0.0);
                    for (int si : fold_map_[i])
                        for (int sj : fold_map_[j])
                            for (int sk : fold_map_[k])
                                acc += spec_[static_cast<std::size_t>(
                                    (std::int64_t(si) * m + sj) * m + sk)];
                    modes[static_cast<std::size_t>((std::int64_t(i) * n + j) * n + k)] =
                        scale * acc;
                }
    }
}

SpectralField dealiased_product(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid() == b.grid()) || a.ncomp() != b.ncomp())
        fail(ErrorCode::GridMismatch, "dealiased_product operands disagree");

    DealiasWorkspace ws(a.grid());
    aligned_vector<cplx> pa(ws.pad_points()), pb(ws.pad_points());
    SpectralField out(a.grid(), a.ncomp());
    for (int c = 0; c < a.ncomp(); ++c) {
        ws.pad_inverse(a.component(c), pa);
        ws.pad_inverse(b.component(c), pb);
        for (std::size_t i = 0; i < pa.size(); ++i)
            pa[i] = cplx(pa[i].real() * pb[i].real(), 0.0);
        ws.forward_fold(pa, out.component(c));
    }
    return out;
}

} // namespace specwin
