#include "besovlab/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fft.hpp"

namespace besovlab {
namespace {

Eigen::ArrayXcd random_half(const Grid& grid, std::mt19937_64& rng, Index max_wavenumber) {
  const Index h = grid.size() / 2;
  if (max_wavenumber < 0 || max_wavenumber > h) throw std::invalid_argument("wavenumber bound outside [0, N/2]");
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(max_wavenumber) + 1.0);
  Eigen::ArrayXcd c = Eigen::ArrayXcd::Zero(h + 1);
  c[0] = scale * normal(rng);
  for (Index k = 1; k <= std::min(max_wavenumber, h - 1); ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    c[k] = scale * Complex(re, im);
  }
  if (max_wavenumber == h) c[h] = scale * normal(rng);
  return c;
}

}  // namespace

Field random_band_limited_field(const Grid& grid, std::mt19937_64& rng, Index max_wavenumber) {
  return Field(grid, detail::synthesize(random_half(grid, rng, max_wavenumber), grid.size()));
}

SpectralField random_hermitian_spectrum(const Grid& grid, std::mt19937_64& rng, Index max_wavenumber) {
  const Eigen::ArrayXcd c = random_half(grid, rng, max_wavenumber);
  const Index n = grid.size();
  Eigen::ArrayXcd full(n);
  full[0] = c[0];
  for (Index q = 1; q < n / 2; ++q) {
    full[q] = c[q];
    full[n - q] = std::conj(c[q]);
  }
  full[n / 2] = c[n / 2];
  return SpectralField(grid, std::move(full));
}

}  // namespace besovlab
