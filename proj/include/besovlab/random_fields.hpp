#pragma once

#include <random>

#include "besovlab/spectral.hpp"

namespace besovlab {

/// Real field with independent Gaussian Fourier coefficients on
/// |k| <= max_wavenumber (k in grid units). max_wavenumber = N/2 includes the
/// Nyquist mode. Samples are O(1).
Field random_band_limited_field(const Grid& grid, std::mt19937_64& rng, Index max_wavenumber);

/// Hermitian coefficient array (storage order) with the same statistics.
SpectralField random_hermitian_spectrum(const Grid& grid, std::mt19937_64& rng, Index max_wavenumber);

}  // namespace besovlab
