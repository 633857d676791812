#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace besovlab::detail {
namespace {

enum class Kind { kForward, kBackward };

// FFTW planning is not thread-safe; execution through the new-array
// interface is. Plans are created once per size and never destroyed.
fftw_plan plan_for(Eigen::Index n, Kind kind) {
  static std::mutex mutex;
  static std::map<std::pair<Eigen::Index, Kind>, fftw_plan> cache;

  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_pair(n, kind);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  double* real = fftw_alloc_real(static_cast<size_t>(n));
  fftw_complex* cplx = fftw_alloc_complex(static_cast<size_t>(n / 2 + 1));
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan plan = kind == Kind::kForward
                       ? fftw_plan_dft_r2c_1d(static_cast<int>(n), real, cplx, flags)
                       : fftw_plan_dft_c2r_1d(static_cast<int>(n), cplx, real, flags);
  fftw_free(real);
  fftw_free(cplx);
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

Eigen::ArrayXcd rfft(const Eigen::ArrayXd& x) {
  const Eigen::Index n = x.size();
  Eigen::ArrayXcd out(n / 2 + 1);
  // r2c plans preserve their input.
  fftw_execute_dft_r2c(plan_for(n, Kind::kForward), const_cast<double*>(x.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

Eigen::ArrayXd irfft(const Eigen::ArrayXcd& half, Eigen::Index n) {
  Eigen::ArrayXcd scratch = half;  // c2r destroys its input
  Eigen::ArrayXd out(n);
  fftw_execute_dft_c2r(plan_for(n, Kind::kBackward),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
  return out;
}

Eigen::ArrayXcd resize_half(const Eigen::ArrayXcd& c, Eigen::Index n_from, Eigen::Index n_to) {
  if (n_to == n_from) return c;
  Eigen::ArrayXcd out = Eigen::ArrayXcd::Zero(n_to / 2 + 1);
  if (n_to > n_from) {
    const Eigen::Index h = n_from / 2;
    out.head(h) = c.head(h);
    out[h] = 0.5 * c[h];
  } else {
    const Eigen::Index h = n_to / 2;
    out.head(h) = c.head(h);
    out[h] = 2.0 * c[h].real();
  }
  return out;
}

namespace {

bool five_smooth(Eigen::Index m) {
  for (Eigen::Index p : {2, 3, 5})
    while (m % p == 0) m /= p;
  return m == 1;
}

}  // namespace

Eigen::Index padded_size(Eigen::Index n, int degree) {
  // Modes up to degree * n / 2 alias to |k| >= m - degree * n / 2, which
  // must stay above n / 2 so that the retained band, Nyquist included, is clean.
  Eigen::Index m = (degree + 1) * n / 2 + 1;
  while (m % 2 != 0 || !five_smooth(m)) ++m;
  return m;
}

}  // namespace besovlab::detail
