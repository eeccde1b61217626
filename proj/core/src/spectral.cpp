#include "frachjb/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

namespace frachjb {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

template <class T>
struct FftwDeleter {
  void operator()(T* p) const { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter<T>>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t count) {
  return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * count)));
}

}  // namespace

SpectralTransform::SpectralTransform(int dim, std::size_t n)
    : dim_(dim),
      n_(n),
      real_size_(dim == 1 ? n : n * n),
      spectrum_size_(dim == 1 ? n / 2 + 1 : n * (n / 2 + 1)) {
  auto in = fftw_buffer<double>(real_size_);
  auto out = fftw_buffer<fftw_complex>(spectrum_size_);
  const int ni = static_cast<int>(n);
  std::lock_guard lock(planner_mutex());
  if (dim == 1) {
    forward_plan_ = fftw_plan_dft_r2c_1d(ni, in.get(), out.get(), FFTW_ESTIMATE);
    backward_plan_ = fftw_plan_dft_c2r_1d(ni, out.get(), in.get(), FFTW_ESTIMATE);
  } else {
    forward_plan_ = fftw_plan_dft_r2c_2d(ni, ni, in.get(), out.get(), FFTW_ESTIMATE);
    backward_plan_ = fftw_plan_dft_c2r_2d(ni, ni, out.get(), in.get(), FFTW_ESTIMATE);
  }
}

SpectralTransform::~SpectralTransform() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

std::shared_ptr<const SpectralTransform> SpectralTransform::for_grid(const PeriodicGrid& grid) {
  static std::mutex cache_mutex;
  static std::map<std::pair<int, std::size_t>, std::shared_ptr<const SpectralTransform>> cache;
  std::lock_guard lock(cache_mutex);
  auto key = std::make_pair(grid.dim(), grid.points_per_axis());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const SpectralTransform> t(new SpectralTransform(grid.dim(), grid.points_per_axis()));
  cache.emplace(key, t);
  return t;
}

WaveVector SpectralTransform::wave_vector(std::size_t index) const {
  const long n = static_cast<long>(n_);
  const long half = n / 2;
  WaveVector k;
  if (dim_ == 1) {
    k.k0 = static_cast<long>(index);
    k.nyquist = k.k0 == half;
    return k;
  }
  const std::size_t cols = n_ / 2 + 1;
  const long i0 = static_cast<long>(index / cols);
  k.k0 = i0 <= half ? i0 : i0 - n;
  k.k1 = static_cast<long>(index % cols);
  k.nyquist = (k.k0 == half) || (k.k1 == half);
  return k;
}

void SpectralTransform::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
  auto rin = fftw_buffer<double>(real_size_);
  auto cout = fftw_buffer<fftw_complex>(spectrum_size_);
  std::memcpy(rin.get(), in.data(), sizeof(double) * real_size_);
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), rin.get(), cout.get());
  for (std::size_t i = 0; i < spectrum_size_; ++i) out[i] = {cout[i][0], cout[i][1]};
}

void SpectralTransform::backward(std::span<const std::complex<double>> in, std::span<double> out) const {
  auto cin = fftw_buffer<fftw_complex>(spectrum_size_);
  auto rout = fftw_buffer<double>(real_size_);
  for (std::size_t i = 0; i < spectrum_size_; ++i) {
    cin[i][0] = in[i].real();
    cin[i][1] = in[i].imag();
  }
  fftw_execute_dft_c2r(static_cast<fftw_plan>(backward_plan_), cin.get(), rout.get());
  const double scale = 1.0 / static_cast<double>(real_size_);
  for (std::size_t i = 0; i < real_size_; ++i) out[i] = rout[i] * scale;
}

GridField apply_multiplier(const GridField& field, const Multiplier& m) {
  auto transform = SpectralTransform::for_grid(field.grid());
  std::vector<std::complex<double>> spectrum(transform->spectrum_size());
  transform->forward(field.values(), spectrum);
  for (std::size_t i = 0; i < spectrum.size(); ++i) spectrum[i] *= m(transform->wave_vector(i));
  GridField out(field.grid());
  transform->backward(spectrum, out.values());
  return out;
}

double frequency_magnitude(const WaveVector& k, double length) {
  const double scale = 2.0 * std::numbers::pi / length;
  return scale * std::hypot(static_cast<double>(k.k0), static_cast<double>(k.k1));
}

}  // namespace frachjb
