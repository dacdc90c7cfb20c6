#pragma once

#include "common.hpp"

#include <cstdint>

namespace specwin {

/// Periodic cubic grid on [0, 2*pi)^dim with n collocation points per axis.
/// Mode indices run -n/2+1 ... n/2 per axis; the bin at index n/2 holds the
/// unpaired Nyquist cosine amplitude. Solver grids require n >= 8 (enforced
/// at the run-config boundary); extracted sub-boxes may be as small as 6.
struct Grid {
    int dim = 1;   // 1 or 3
    int n = 8;     // points per axis, even

    Grid() = default;
    Grid(int dim_, int n_) : dim(dim_), n(n_) {
        if (dim != 1 && dim != 3) fail(ErrorCode::ConfigError, "grid dim must be 1 or 3");
        if (n < 4 || n % 2 != 0) fail(ErrorCode::ConfigError, "grid n must be even and >= 4");
    }

    std::int64_t points() const {
        std::int64_t p = n;
        for (int d = 1; d < dim; ++d) p *= n;
        return p;
    }
    double spacing() const { return two_pi / n; }
    int nyquist() const { return n / 2; }

    bool operator==(const Grid&) const = default;
};

/// Storage index -> signed wavenumber (standard FFT ordering, Nyquist -> +n/2).
inline int wavenumber(int idx, int n) { return idx <= n / 2 ? idx : idx - n; }

/// Signed wavenumber -> storage index.
inline int mode_index(int k, int n) { return k >= 0 ? k : k + n; }

inline int wrap_index(std::int64_t i, int n) {
    std::int64_t m = i % n;
    return static_cast<int>(m < 0 ? m + n : m);
}

} // namespace specwin
