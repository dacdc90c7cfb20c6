#pragma once

#include "field.hpp"

namespace specwin {

// ----------------------------------------------------------------------------
// Low-level c2c transforms on raw buffers (in != out, both 64-byte aligned,
// length n^dim). No normalization on either direction; callers scale.
// Plans are cached per (dim, n, direction) and shared; creation is locked,
// execution is concurrency-safe on distinct buffers.
// ----------------------------------------------------------------------------
void fft_exec(int dim, int n, const cplx* in, cplx* out, bool forward);

/// u(x_j) -> u(k) with the 1/N^d convention, so coefficients are mode
/// amplitudes (u(k) = a for a field a*exp(ik.x)).
SpectralField forward_transform(const PhysicalField& f);

/// Exact inverse of forward_transform. Throws NonHermitianInput when the
/// coefficients violate conjugate symmetry beyond 1e-10 relative.
PhysicalField inverse_transform(const SpectralField& s);

/// inverse_transform without the symmetry check (hot paths; inputs are
/// Hermitian by construction).
PhysicalField inverse_transform_unchecked(const SpectralField& s);

/// Multiply each mode by i*k_axis; the unpaired Nyquist bin is zeroed.
/// axis is 1-based (1..dim).
SpectralField spectral_derivative(const SpectralField& s, int axis);

} // namespace specwin
