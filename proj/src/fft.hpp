#pragma once

#include <fftw3.h>

#include <cstddef>
#include <span>

#include "vortexmix/field.hpp"

namespace vortexmix::detail {

/// In-place unnormalised n x n DFT on an FFTW-aligned buffer. Aligned storage
/// keeps FFTW's codelet choice, and hence every output bit, independent of
/// where the caller's data lives.
class Fft2d {
 public:
  explicit Fft2d(std::size_t n);
  ~Fft2d();
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

  [[nodiscard]] std::span<Complex> data() { return {buffer_, n_ * n_}; }
  [[nodiscard]] std::size_t n() const { return n_; }

  void forward() { fftw_execute(forward_); }
  void backward() { fftw_execute(backward_); }

 private:
  std::size_t n_;
  Complex* buffer_;
  fftw_plan forward_;
  fftw_plan backward_;
};

/// Signed frequency index of DFT bin k.
inline long signed_bin(std::size_t k, std::size_t n) {
  return k < (n + 1) / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

}  // namespace vortexmix::detail
