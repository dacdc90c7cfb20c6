#include "field.hpp"

#include <algorithm>
#include <cmath>

namespace specwin {

double SpectralField::energy() const {
    double e = 0.0;
    for (const cplx& c : coeffs_) e += std::norm(c);
    return e;
}

double SpectralField::hermitian_defect() const {
    const int n = grid_.n;
    double max_abs = 0.0;
    for (const cplx& c : coeffs_) max_abs = std::max(max_abs, std::abs(c));
    if (max_abs == 0.0) return 0.0;

    double defect = 0.0;
    if (grid_.dim == 1) {
        for (int c = 0; c < ncomp_; ++c)
            for (int i = 0; i < n; ++i) {
                int in = wrap_index(-std::int64_t(i), n);
                defect = std::max(defect, std::abs(at(c, i) - std::conj(at(c, in))));
            }
    } else {
        for (int c = 0; c < ncomp_; ++c)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        int in = wrap_index(-std::int64_t(i), n);
                        int jn = wrap_index(-std::int64_t(j), n);
                        int kn = wrap_index(-std::int64_t(k), n);
                        defect = std::max(defect,
                                          std::abs(at(c, i, j, k) - std::conj(at(c, in, jn, kn))));
                    }
    }
    return defect / max_abs;
}

double SpectralField::divergence_defect() const {
    if (grid_.dim != 3 || ncomp_ != 3) fail(ErrorCode::Internal, "divergence needs a 3D 3-component field");
    const int n = grid_.n;
    double max_abs = 0.0;
    for (const cplx& c : coeffs_) max_abs = std::max(max_abs, std::abs(c));
    if (max_abs == 0.0) return 0.0;

    double defect = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == 0 && j == 0 && k == 0) continue;
                double k1 = wavenumber(i, n), k2 = wavenumber(j, n), k3 = wavenumber(k, n);
                cplx div = k1 * at(0, i, j, k) + k2 * at(1, i, j, k) + k3 * at(2, i, j, k);
                defect = std::max(defect, std::abs(div));
            }
    return defect / max_abs;
}

bool SpectralField::finite() const {
    for (const cplx& c : coeffs_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

double PhysicalField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

} // namespace specwin
