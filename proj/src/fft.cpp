#include "pipewave/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <stdexcept>

namespace pipewave {

struct RealFft::Impl {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit Impl(std::size_t n) {
    real = fftw_alloc_real(n);
    spec = fftw_alloc_complex(n / 2 + 1);
    if (!real || !spec) throw std::bad_alloc();
    const int len = static_cast<int>(n);
    fwd = fftw_plan_dft_r2c_1d(len, real, spec, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(len, spec, real, FFTW_ESTIMATE);
  }
  ~Impl() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(real);
    fftw_free(spec);
  }
};

RealFft::RealFft(std::size_t n) : n_(n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("RealFft: length must be even");
  impl_ = std::make_unique<Impl>(n);
}

RealFft::~RealFft() = default;
RealFft::RealFft(RealFft&&) noexcept = default;
RealFft& RealFft::operator=(RealFft&&) noexcept = default;

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
  if (in.size() != n_ || out.size() != spectrum_size()) {
    throw std::invalid_argument("RealFft::forward: size mismatch");
  }
  std::copy(in.begin(), in.end(), impl_->real);
  fftw_execute(impl_->fwd);
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = {impl_->spec[j][0], impl_->spec[j][1]};
  }
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
  if (in.size() != spectrum_size() || out.size() != n_) {
    throw std::invalid_argument("RealFft::inverse: size mismatch");
  }
  for (std::size_t j = 0; j < in.size(); ++j) {
    impl_->spec[j][0] = in[j].real();
    impl_->spec[j][1] = in[j].imag();
  }
  // Imaginary parts of the zero and Nyquist modes carry no information.
  impl_->spec[0][1] = 0.0;
  impl_->spec[in.size() - 1][1] = 0.0;
  fftw_execute(impl_->bwd);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = impl_->real[j] * scale;
}

std::vector<std::complex<double>> RealFft::forward(std::span<const double> in) const {
  std::vector<std::complex<double>> out(spectrum_size());
  forward(in, out);
  return out;
}

std::vector<double> RealFft::inverse(std::span<const std::complex<double>> in) const {
  std::vector<double> out(n_);
  inverse(in, out);
  return out;
}

}  // namespace pipewave
