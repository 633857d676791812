#include "besovlab/besov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fft.hpp"

namespace besovlab {
namespace {

// Weight of half-spectrum slot q in a full-spectrum sum.
inline double half_weight(Index q, Index n) { return (q == 0 || q == n / 2) ? 1.0 : 2.0; }

}  // namespace

double smooth_transition(double r) {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / r);
  const double b = std::exp(-1.0 / (1.0 - r));
  return a / (a + b);
}

void BesovIndex::validate() const {
  if (!(p >= 1.0) || !(r >= 1.0)) throw std::invalid_argument("Besov exponents p, r must lie in [1, inf]");
  if (!std::isfinite(s)) throw std::invalid_argument("Besov regularity must be finite");
}

CutoffPair::CutoffPair(const Grid& grid, double ring_gain) : grid_(grid), ring_gain_(ring_gain) {
  j_max_ = static_cast<int>(std::ceil(std::log2(grid.xi_max() * 4.0 / 3.0))) + 1;
  const Index h = grid.size() / 2;
  tables_.reserve(static_cast<size_t>(j_max_ + 2));
  for (int j = -1; j <= j_max_; ++j) {
    Eigen::ArrayXd t(h + 1);
    for (Index q = 0; q < h; ++q) t[q] = block_multiplier(j, grid.frequency(q));
    t[h] = block_multiplier(j, grid.xi_max());
    tables_.push_back(std::move(t));
  }
}

double CutoffPair::chi(double xi) { return smooth_transition((4.0 / 3.0 - std::abs(xi)) * 3.0); }

double CutoffPair::ring(double xi) const { return ring_gain_ * (chi(0.5 * xi) - chi(xi)); }

double CutoffPair::block_multiplier(int j, double xi) const {
  if (j < -1) return 0.0;
  if (j == -1) return chi(xi);
  return ring(std::ldexp(xi, -j));
}

const Eigen::ArrayXd& CutoffPair::half_table(int j) const {
  if (j < -1 || j > j_max_) throw std::out_of_range("block index outside tabulated range");
  return tables_[static_cast<size_t>(j + 1)];
}

std::vector<int> CutoffPair::blocks_touching(double lo, double hi) const {
  std::vector<int> out;
  const Index h = grid_.size() / 2;
  for (int j = -1; j <= j_max_; ++j) {
    const Eigen::ArrayXd& t = half_table(j);
    for (Index q = 0; q <= h; ++q) {
      const double xi = q == h ? grid_.xi_max() : grid_.frequency(q);
      if (xi >= lo && xi <= hi && t[q] != 0.0) {
        out.push_back(j);
        break;
      }
    }
  }
  return out;
}

Field dyadic_block(const Field& f, int j, const CutoffPair& cutoffs) {
  if (!(f.grid() == cutoffs.grid())) throw std::invalid_argument("cutoffs tabulated on a different grid");
  if (j < -1 || j > cutoffs.j_max()) return Field::zeros(f.grid());
  Eigen::ArrayXcd c = detail::analyze(f.samples());
  c *= cutoffs.half_table(j).cast<Complex>();
  return Field(f.grid(), detail::synthesize(c, f.size()));
}

double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("L^p exponent must be >= 1");
  if (std::isinf(p)) return f.samples().abs().maxCoeff();
  if (p == 2.0) return std::sqrt(l2_squared(f));
  return std::pow(f.grid().dx() * f.samples().abs().pow(p).sum(), 1.0 / p);
}

std::vector<double> block_norms(const Field& f, double p, const CutoffPair& cutoffs) {
  if (!(f.grid() == cutoffs.grid())) throw std::invalid_argument("cutoffs tabulated on a different grid");
  const Index n = f.size();
  const Eigen::ArrayXcd c = detail::analyze(f.samples());
  std::vector<double> norms;
  norms.reserve(static_cast<size_t>(cutoffs.j_max() + 2));
  if (p == 2.0) {
    // Discrete Parseval: dx sum |u_i|^2 = 2L sum_k |c_k|^2.
    Eigen::ArrayXd power = c.abs2();
    for (Index q = 0; q <= n / 2; ++q) power[q] *= half_weight(q, n);
    const double scale = 2.0 * f.grid().half_length();
    for (int j = -1; j <= cutoffs.j_max(); ++j)
      norms.push_back(std::sqrt(scale * (power * cutoffs.half_table(j).square()).sum()));
    return norms;
  }
  for (int j = -1; j <= cutoffs.j_max(); ++j) {
    const Eigen::ArrayXcd cj = c * cutoffs.half_table(j).cast<Complex>();
    norms.push_back(lp_norm(Field(f.grid(), detail::synthesize(cj, n)), p));
  }
  return norms;
}

double besov_norm(const Field& f, const BesovIndex& idx, const CutoffPair& cutoffs) {
  idx.validate();
  const std::vector<double> blocks = block_norms(f, idx.p, cutoffs);
  double acc = 0.0;
  for (size_t k = 0; k < blocks.size(); ++k) {
    const int j = static_cast<int>(k) - 1;
    const double term = std::pow(2.0, j * idx.s) * blocks[k];
    if (std::isinf(idx.r))
      acc = std::max(acc, term);
    else
      acc += std::pow(term, idx.r);
  }
  return std::isinf(idx.r) ? acc : std::pow(acc, 1.0 / idx.r);
}

double linf_norm(const Field& f) { return f.samples().abs().maxCoeff(); }

double lipschitz_norm(const Field& f) { return linf_norm(f) + linf_norm(derivative(f, 1)); }

double embedding_constant(const CutoffPair& cutoffs) {
  const Index n = cutoffs.grid().size();
  const double two_l = 2.0 * cutoffs.grid().half_length();
  double k_max = 0.0;
  for (int j = -1; j <= cutoffs.j_max(); ++j) {
    const Eigen::ArrayXd& t = cutoffs.half_table(j);
    double count = 0.0;
    for (Index q = 0; q <= n / 2; ++q)
      if (t[q] != 0.0) count += half_weight(q, n);
    k_max = std::max(k_max, std::sqrt(count / two_l) * std::pow(2.0, -0.5 * j));
  }
  return k_max;
}

}  // namespace besovlab
