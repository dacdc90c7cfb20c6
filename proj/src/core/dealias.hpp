#pragma once

#include "field.hpp"

namespace specwin {

/// Padded grid size for exact dealiasing of quadratic products: the smallest
/// even M >= 3*(n/2)+1 with prime factors <= 13. M >= 3*(n/2)+1 keeps every
/// retained bin, including the folded Nyquist, free of aliased content, so
/// the product equals the exact Galerkin truncation.
int dealias_pad_size(int n);

/// Reusable buffers for padded-grid products on one (grid, pad) pair.
class DealiasWorkspace {
public:
    explicit DealiasWorkspace(Grid grid);

    const Grid& grid() const { return grid_; }
    int pad_n() const { return pad_n_; }
    std::size_t pad_points() const { return pad_points_; }

    /// Zero-pad one component (Nyquist split across the +-n/2 pair) and
    /// inverse-transform onto the padded collocation grid. Imaginary parts
    /// of the result are discarded.
    void pad_inverse(std::span<const cplx> modes, std::span<cplx> padded_physical);

    /// Forward-transform padded physical samples and truncate back to the
    /// n-grid modes, folding the +-n/2 pair into the Nyquist bin.
    void forward_fold(std::span<const cplx> padded_physical, std::span<cplx> modes);

private:
    Grid grid_;
    int pad_n_ = 0;
    std::size_t pad_points_ = 0;
    aligned_vector<cplx> spec_;  // padded spectral scratch
    // per-axis mode maps
    struct Target {
        int idx;
        double weight;
    };
    std::vector<std::vector<Target>> pad_map_;   // src axis index -> padded targets
    std::vector<std::vector<int>> fold_map_;     // dst axis index -> padded sources
};

/// Component-wise product of two fields, dealiased by zero-padding. Equals
/// the exact Galerkin-truncated product of the trigonometric interpolants.
SpectralField dealiased_product(const SpectralField& a, const SpectralField& b);

} // namespace specwin
