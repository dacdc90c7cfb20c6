#pragma once

#include "grid.hpp"

#include <span>

namespace specwin {

/// Complex Fourier coefficients of a real field on a periodic box.
/// Components are stored contiguously: [comp][i1][i2][i3] row-major.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(Grid grid, int ncomp)
        : grid_(grid), ncomp_(ncomp), coeffs_(static_cast<std::size_t>(ncomp) * grid.points()) {}

    const Grid& grid() const { return grid_; }
    int ncomp() const { return ncomp_; }
    std::size_t size() const { return coeffs_.size(); }

    std::span<cplx> data() { return {coeffs_.data(), coeffs_.size()}; }
    std::span<const cplx> data() const { return {coeffs_.data(), coeffs_.size()}; }
    std::span<cplx> component(int c) {
        return {coeffs_.data() + static_cast<std::size_t>(c) * grid_.points(),
                static_cast<std::size_t>(grid_.points())};
    }
    std::span<const cplx> component(int c) const {
        return {coeffs_.data() + static_cast<std::size_t>(c) * grid_.points(),
                static_cast<std::size_t>(grid_.points())};
    }

    // 1D accessors
    cplx& at(int c, int i) { return coeffs_[static_cast<std::size_t>(c) * grid_.points() + i]; }
    const cplx& at(int c, int i) const {
        return coeffs_[static_cast<std::size_t>(c) * grid_.points() + i];
    }
    // 3D accessors
    cplx& at(int c, int i, int j, int k) {
        const std::int64_t n = grid_.n;
        return coeffs_[static_cast<std::size_t>(((c * n + i) * n + j) * n + k)];
    }
    const cplx& at(int c, int i, int j, int k) const {
        const std::int64_t n = grid_.n;
        return coeffs_[static_cast<std::size_t>(((c * n + i) * n + j) * n + k)];
    }

    /// Sum over components and modes of |coeff|^2 (equals mean-square of the
    /// physical field by Parseval under the 1/N^d forward normalization).
    double energy() const;

    /// Max |coeff(-k) - conj(coeff(k))| relative to max |coeff|.
    double hermitian_defect() const;

    /// Max_k |k . u(k)| / max_k |u(k)| over k != 0 (3-component fields only).
    double divergence_defect() const;

    bool finite() const;

private:
    Grid grid_{};
    int ncomp_ = 0;
    aligned_vector<cplx> coeffs_;
};

/// Real collocation samples on the uniform grid, same layout as SpectralField.
class PhysicalField {
public:
    PhysicalField() = default;
    PhysicalField(Grid grid, int ncomp)
        : grid_(grid), ncomp_(ncomp), values_(static_cast<std::size_t>(ncomp) * grid.points()) {}

    const Grid& grid() const { return grid_; }
    int ncomp() const { return ncomp_; }
    std::size_t size() const { return values_.size(); }

    std::span<double> data() { return {values_.data(), values_.size()}; }
    std::span<const double> data() const { return {values_.data(), values_.size()}; }
    std::span<double> component(int c) {
        return {values_.data() + static_cast<std::size_t>(c) * grid_.points(),
                static_cast<std::size_t>(grid_.points())};
    }
    std::span<const double> component(int c) const {
        return {values_.data() + static_cast<std::size_t>(c) * grid_.points(),
                static_cast<std::size_t>(grid_.points())};
    }

    double& at(int c, int i) { return values_[static_cast<std::size_t>(c) * grid_.points() + i]; }
    const double& at(int c, int i) const {
        return values_[static_cast<std::size_t>(c) * grid_.points() + i];
    }
    double& at(int c, int i, int j, int k) {
        const std::int64_t n = grid_.n;
        return values_[static_cast<std::size_t>(((c * n + i) * n + j) * n + k)];
    }
    const double& at(int c, int i, int j, int k) const {
        const std::int64_t n = grid_.n;
        return values_[static_cast<std::size_t>(((c * n + i) * n + j) * n + k)];
    }

    double max_abs() const;

private:
    Grid grid_{};
    int ncomp_ = 0;
    aligned_vector<double> values_;
};

} // namespace specwin
