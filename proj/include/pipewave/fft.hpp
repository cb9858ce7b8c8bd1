#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace pipewave {

/// Real-to-complex FFT of fixed length n (FFTW backed).
///
/// forward() produces the n/2+1 non-negative frequency coefficients without
/// normalization; inverse() divides by n so inverse(forward(x)) == x.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t spectrum_size() const { return n_ / 2 + 1; }

  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

  std::vector<std::complex<double>> forward(std::span<const double> in) const;
  std::vector<double> inverse(std::span<const std::complex<double>> in) const;

 private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pipewave
