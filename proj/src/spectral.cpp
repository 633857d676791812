#include "besovlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace besovlab {
namespace {

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

inline double parity_sign(Index q) { return (q & 1) ? -1.0 : 1.0; }

// Applies a half-spectrum multiplier (k = 0..N/2) to the series coefficients.
Field multiply_half(const Field& f, const Eigen::ArrayXcd& half_table) {
  Eigen::ArrayXcd c = detail::analyze(f.samples());
  c *= half_table;
  return Field(f.grid(), detail::synthesize(c, f.size()));
}

// Half table of (i xi)^order with the Nyquist rule applied.
Eigen::ArrayXcd derivative_table(const Grid& grid, int order) {
  const Index h = grid.size() / 2;
  Eigen::ArrayXcd t(h + 1);
  for (Index q = 0; q < h; ++q) t[q] = std::pow(Complex(0.0, grid.frequency(q)), order);
  t[h] = std::pow(Complex(0.0, -grid.xi_max()), order).real();
  return t;
}

}  // namespace

Grid::Grid(double half_length, Index num_points) : half_length_(half_length), num_points_(num_points) {
  if (!(half_length > 0.0) || !std::isfinite(half_length))
    throw std::invalid_argument("grid half-length must be positive and finite");
  if (num_points < 16 || num_points % 2 != 0)
    throw std::invalid_argument("grid size must be even and >= 16, got " + std::to_string(num_points));
}

Eigen::ArrayXd Grid::points() const {
  Eigen::ArrayXd x(num_points_);
  for (Index i = 0; i < num_points_; ++i) x[i] = this->x(i);
  return x;
}

Eigen::ArrayXd Grid::frequencies() const {
  Eigen::ArrayXd xi(num_points_);
  for (Index q = 0; q < num_points_; ++q) xi[q] = frequency(q);
  return xi;
}

Field::Field(const Grid& grid, Eigen::ArrayXd samples) : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size())
    throw std::invalid_argument("sample count does not match grid size");
  if (!samples_.allFinite()) throw InvalidField("field contains non-finite samples");
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(grid_, other.grid_);
  samples_ += other.samples_;
  if (!samples_.allFinite()) throw InvalidField("overflow in field sum");
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(grid_, other.grid_);
  samples_ -= other.samples_;
  if (!samples_.allFinite()) throw InvalidField("overflow in field difference");
  return *this;
}

Field& Field::operator*=(double a) {
  samples_ *= a;
  if (!samples_.allFinite()) throw InvalidField("overflow in field scaling");
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator-(Field a) { return a *= -1.0; }
Field operator*(double a, Field f) { return f *= a; }
Field operator*(Field f, double a) { return f *= a; }

Field pointwise_product(const Field& a, const Field& b) {
  require_same_grid(a.grid(), b.grid());
  return Field(a.grid(), a.samples() * b.samples());
}

SpectralField::SpectralField(const Grid& grid, Eigen::ArrayXcd coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size())
    throw std::invalid_argument("coefficient count does not match grid size");
}

double SpectralField::hermitian_defect() const {
  const double scale = coeffs_.abs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const Index n = coeffs_.size();
  double defect = std::max(std::abs(coeffs_[0].imag()), std::abs(coeffs_[n / 2].imag()));
  for (Index q = 1; q < n / 2; ++q)
    defect = std::max(defect, std::abs(coeffs_[q] - std::conj(coeffs_[n - q])));
  return defect / scale;
}

SpectralField forward_transform(const Field& f) {
  const Grid& grid = f.grid();
  const Index n = grid.size();
  const double dx = grid.dx();
  const Eigen::ArrayXcd half = detail::rfft(f.samples());
  Eigen::ArrayXcd full(n);
  for (Index q = 0; q <= n / 2; ++q) full[q] = dx * parity_sign(q) * half[q];
  for (Index q = n / 2 + 1; q < n; ++q) full[q] = dx * parity_sign(q) * std::conj(half[n - q]);
  return SpectralField(grid, std::move(full));
}

Field inverse_transform(const SpectralField& F) {
  const double defect = F.hermitian_defect();
  if (defect > kHermitianTolerance)
    throw NonRealSpectrum("coefficients are not Hermitian (relative defect " + std::to_string(defect) + ")");
  const Grid& grid = F.grid();
  const Index n = grid.size();
  const Eigen::ArrayXcd& c = F.coeffs();
  Eigen::ArrayXcd half(n / 2 + 1);
  half[0] = c[0].real();
  for (Index q = 1; q < n / 2; ++q) half[q] = parity_sign(q) * 0.5 * (c[q] + std::conj(c[n - q]));
  half[n / 2] = parity_sign(n / 2) * c[n / 2].real();
  Eigen::ArrayXd samples = detail::irfft(half, n) / (2.0 * grid.half_length());
  return Field(grid, std::move(samples));
}

Field apply_multiplier(const Field& f, const Eigen::ArrayXcd& table) {
  const Index n = f.size();
  if (table.size() != n) throw std::invalid_argument("multiplier table size does not match grid");
  double defect = std::abs(table[0].imag()) / std::max(1.0, std::abs(table[0]));
  for (Index q = 1; q < n / 2; ++q)
    defect = std::max(defect, std::abs(table[n - q] - std::conj(table[q])) / std::max(1.0, std::abs(table[q])));
  if (defect > kHermitianTolerance)
    throw NonRealSpectrum("multiplier is not Hermitian (defect " + std::to_string(defect) + ")");
  Eigen::ArrayXcd half = table.head(n / 2 + 1);
  half[n / 2] = table[n / 2].real();
  return multiply_half(f, half);
}

Field derivative(const Field& f, int order) {
  if (order < 1 || order > 3) throw std::invalid_argument("derivative order must be 1, 2 or 3");
  return multiply_half(f, derivative_table(f.grid(), order));
}

Field helmholtz_inverse(const Field& f) {
  const Grid& grid = f.grid();
  const Index h = grid.size() / 2;
  Eigen::ArrayXcd t(h + 1);
  for (Index q = 0; q < h; ++q) {
    const double xi = grid.frequency(q);
    t[q] = 1.0 / (1.0 + xi * xi);
  }
  t[h] = 1.0 / (1.0 + grid.xi_max() * grid.xi_max());
  return multiply_half(f, t);
}

Field dealias_product(const Field& f, const Field& g, int total_degree) {
  if (total_degree < 2) throw std::invalid_argument("total degree must be >= 2");
  require_same_grid(f.grid(), g.grid());
  const Index n = f.size();
  const Index m = detail::padded_size(n, total_degree);
  const Eigen::ArrayXd fine_f = detail::synthesize(detail::resize_half(detail::analyze(f.samples()), n, m), m);
  const Eigen::ArrayXd fine_g = detail::synthesize(detail::resize_half(detail::analyze(g.samples()), n, m), m);
  const Eigen::ArrayXcd c = detail::resize_half(detail::analyze(fine_f * fine_g), m, n);
  return Field(f.grid(), detail::synthesize(c, n));
}

Field dealias_product(std::initializer_list<std::reference_wrapper<const Field>> factors) {
  if (factors.size() == 0) throw std::invalid_argument("empty product");
  const Field& first = factors.begin()->get();
  if (factors.size() == 1) return first;
  const Index n = first.size();
  const Index m = detail::padded_size(n, static_cast<int>(factors.size()));
  Eigen::ArrayXd prod = Eigen::ArrayXd::Ones(m);
  for (const Field& factor : factors) {
    require_same_grid(first.grid(), factor.grid());
    prod *= detail::synthesize(detail::resize_half(detail::analyze(factor.samples()), n, m), m);
  }
  const Eigen::ArrayXcd c = detail::resize_half(detail::analyze(prod), m, n);
  return Field(first.grid(), detail::synthesize(c, n));
}

double l2_squared(const Field& f) { return f.grid().dx() * f.samples().square().sum(); }

double tail_amplitude(const Field& f) {
  const Grid& grid = f.grid();
  const double cut = 0.5 * grid.half_length();
  double tail = 0.0;
  for (Index i = 0; i < grid.size(); ++i)
    if (std::abs(grid.x(i)) >= cut) tail = std::max(tail, std::abs(f[i]));
  return tail;
}

}  // namespace besovlab
