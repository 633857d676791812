#pragma once

// Periodic grid, sampled fields and Fourier-multiplier machinery.
//
// Transforms use the non-unitary angular-frequency convention
//
//   F f(xi) = int e^{-i x xi} f(x) dx,     f(x) = (1/2pi) int e^{i x xi} F f(xi) dxi,
//
// discretized on the torus [-L, L) with N points:
//
//   fhat_k = dx * sum_i e^{-i x_i xi_k} f_i,   xi_k = pi k / L,  k in [-N/2, N/2).
//
// Coefficient arrays are stored in FFT order: storage index q holds
// wavenumber k = q for q < N/2 and k = q - N otherwise (the Nyquist mode
// k = -N/2 sits at q = N/2).

#include <Eigen/Core>

#include <complex>
#include <functional>
#include <initializer_list>
#include <type_traits>

#include "besovlab/errors.hpp"

namespace besovlab {

using Index = Eigen::Index;
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Relative tolerance for Hermitian-symmetry checks.
inline constexpr double kHermitianTolerance = 1e-12;

class Grid {
 public:
  Grid(double half_length, Index num_points);

  double half_length() const noexcept { return half_length_; }
  Index size() const noexcept { return num_points_; }
  double dx() const noexcept { return 2.0 * half_length_ / static_cast<double>(num_points_); }
  /// Frequency spacing pi / L.
  double dxi() const noexcept { return kPi / half_length_; }
  /// Largest representable |xi|, attained only by the Nyquist mode.
  double xi_max() const noexcept { return dxi() * static_cast<double>(num_points_ / 2); }

  double x(Index i) const noexcept { return -half_length_ + static_cast<double>(i) * dx(); }
  Eigen::ArrayXd points() const;

  Index nyquist_index() const noexcept { return num_points_ / 2; }
  Index wavenumber(Index q) const noexcept { return q < num_points_ / 2 ? q : q - num_points_; }
  Index storage_index(Index k) const noexcept { return k >= 0 ? k : k + num_points_; }
  double frequency(Index q) const noexcept { return dxi() * static_cast<double>(wavenumber(q)); }
  /// All frequencies in storage order.
  Eigen::ArrayXd frequencies() const;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.half_length_ == b.half_length_ && a.num_points_ == b.num_points_;
  }

 private:
  double half_length_;
  Index num_points_;
};

/// Real function sampled on a Grid. Samples are always finite.
class Field {
 public:
  Field(const Grid& grid, Eigen::ArrayXd samples);

  static Field zeros(const Grid& grid) { return Field(grid, Eigen::ArrayXd::Zero(grid.size())); }
  static Field constant(const Grid& grid, double c) {
    return Field(grid, Eigen::ArrayXd::Constant(grid.size(), c));
  }
  template <class Fn>
  static Field from_function(const Grid& grid, Fn&& fn) {
    Eigen::ArrayXd s(grid.size());
    for (Index i = 0; i < grid.size(); ++i) s[i] = fn(grid.x(i));
    return Field(grid, std::move(s));
  }

  const Grid& grid() const noexcept { return grid_; }
  const Eigen::ArrayXd& samples() const noexcept { return samples_; }
  Index size() const noexcept { return samples_.size(); }
  double operator[](Index i) const { return samples_[i]; }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double a);

 private:
  Grid grid_;
  Eigen::ArrayXd samples_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator-(Field a);
Field operator*(double a, Field f);
Field operator*(Field f, double a);
/// Plain pointwise product on the grid (no dealiasing).
Field pointwise_product(const Field& a, const Field& b);

/// Discrete Fourier coefficients of a field, in storage order.
class SpectralField {
 public:
  SpectralField(const Grid& grid, Eigen::ArrayXcd coeffs);

  const Grid& grid() const noexcept { return grid_; }
  const Eigen::ArrayXcd& coeffs() const noexcept { return coeffs_; }
  Eigen::ArrayXcd& coeffs() noexcept { return coeffs_; }
  /// Coefficient at wavenumber k in [-N/2, N/2).
  Complex at(Index k) const { return coeffs_[grid_.storage_index(k)]; }

  /// max |F(-xi) - conj F(xi)| (and |Im F| at Nyquist), relative to max |F|.
  double hermitian_defect() const;

 private:
  Grid grid_;
  Eigen::ArrayXcd coeffs_;
};

SpectralField forward_transform(const Field& f);
/// Throws NonRealSpectrum when the coefficients are not Hermitian to kHermitianTolerance.
Field inverse_transform(const SpectralField& F);

/// Samples m at every grid frequency (storage order).
template <class Fn>
Eigen::ArrayXcd tabulate_multiplier(const Grid& grid, Fn&& m) {
  Eigen::ArrayXcd table(grid.size());
  for (Index q = 0; q < grid.size(); ++q) table[q] = Complex(m(grid.frequency(q)));
  return table;
}

/// Applies a tabulated multiplier. The Nyquist mode, which has no partner,
/// is scaled by Re m(xi_Nyq), so odd multipliers annihilate it.
/// Throws NonRealSpectrum if m(-xi) != conj m(xi).
Field apply_multiplier(const Field& f, const Eigen::ArrayXcd& table);

template <class Fn>
  requires(std::is_invocable_v<Fn, double> && !std::is_convertible_v<Fn, const Eigen::ArrayXcd&>)
Field apply_multiplier(const Field& f, Fn&& m) {
  return apply_multiplier(f, tabulate_multiplier(f.grid(), std::forward<Fn>(m)));
}

/// Spectral derivative of order 1, 2 or 3.
Field derivative(const Field& f, int order);

/// (1 - d_x^2)^{-1}, i.e. convolution with e^{-|x|}/2.
Field helmholtz_inverse(const Field& f);

/// Product f*g evaluated on a zero-padded grid and truncated back to the
/// original bandwidth. The padded size is the first even 5-smooth
/// M > (d+1)N/2, which is alias-free for products of total degree d.
Field dealias_product(const Field& f, const Field& g, int total_degree = 2);

/// Alias-free product of all factors (padding chosen from the factor count).
Field dealias_product(std::initializer_list<std::reference_wrapper<const Field>> factors);

/// dx * sum f_i^2.
double l2_squared(const Field& f);

/// max over |x| >= L/2 of |f(x)|.
double tail_amplitude(const Field& f);

}  // namespace besovlab
