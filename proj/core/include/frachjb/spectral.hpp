#pragma once

#include <complex>
#include <functional>
#include <memory>

#include "frachjb/grid.hpp"

namespace frachjb {

/// Integer wave vector of one Fourier coefficient; physical frequency is
/// k * 2 pi / L. `nyquist` marks coefficients on the n/2 line of any axis.
struct WaveVector {
  long k0 = 0;
  long k1 = 0;
  bool nyquist = false;
};

using Multiplier = std::function<std::complex<double>(const WaveVector&)>;

/// Real-to-complex FFT pair for one grid shape. Plans are created once per
/// shape (FFTW_ESTIMATE, so results do not depend on timing) and shared.
class SpectralTransform {
 public:
  static std::shared_ptr<const SpectralTransform> for_grid(const PeriodicGrid& grid);

  ~SpectralTransform();
  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  std::size_t spectrum_size() const { return spectrum_size_; }
  WaveVector wave_vector(std::size_t spectral_index) const;

  /// Unnormalized forward transform.
  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  /// Inverse transform including the 1/N normalization.
  void backward(std::span<const std::complex<double>> in, std::span<double> out) const;

 private:
  SpectralTransform(int dim, std::size_t n);

  int dim_;
  std::size_t n_;
  std::size_t real_size_;
  std::size_t spectrum_size_;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

/// Returns the inverse transform of m(k) * FFT(field).
GridField apply_multiplier(const GridField& field, const Multiplier& m);

/// Physical frequency magnitude |xi| = |k| 2 pi / L.
double frequency_magnitude(const WaveVector& k, double length);

}  // namespace frachjb
