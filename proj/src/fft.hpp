#pragma once

// Internal real-to-complex FFT helpers (FFTW backend).
//
// "Series coefficients" c_k are normalized so that u_i = sum_k c_k e^{2 pi i k i / N};
// only k = 0..N/2 is stored (Hermitian half spectrum).

#include <Eigen/Core>

#include <complex>

namespace besovlab::detail {

/// Unnormalized r2c DFT, returns N/2+1 coefficients.
Eigen::ArrayXcd rfft(const Eigen::ArrayXd& x);
/// Unnormalized c2r DFT of a half spectrum to n real samples.
Eigen::ArrayXd irfft(const Eigen::ArrayXcd& half, Eigen::Index n);

/// Series coefficients of n samples.
inline Eigen::ArrayXcd analyze(const Eigen::ArrayXd& x) {
  return rfft(x) / static_cast<double>(x.size());
}
/// Samples from series coefficients.
inline Eigen::ArrayXd synthesize(const Eigen::ArrayXcd& c, Eigen::Index n) { return irfft(c, n); }

/// Zero-pads (n_to > n_from) or truncates (n_to < n_from) a half spectrum of
/// series coefficients. Padding splits the Nyquist coefficient evenly between
/// +-N/2; truncation folds +-n_to/2 onto the new Nyquist slot.
Eigen::ArrayXcd resize_half(const Eigen::ArrayXcd& c, Eigen::Index n_from, Eigen::Index n_to);

/// Smallest even 5-smooth integer > (degree + 1) * n / 2.
Eigen::Index padded_size(Eigen::Index n, int degree);

}  // namespace besovlab::detail
