#include "fft.hpp"

#include <new>

namespace vortexmix::detail {

Fft2d::Fft2d(std::size_t n) : n_(n) {
  buffer_ = reinterpret_cast<Complex*>(fftw_malloc(sizeof(fftw_complex) * n * n));
  if (buffer_ == nullptr) throw std::bad_alloc();
  auto* raw = reinterpret_cast<fftw_complex*>(buffer_);
  const int dim = static_cast<int>(n);
  forward_ = fftw_plan_dft_2d(dim, dim, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
  backward_ = fftw_plan_dft_2d(dim, dim, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft2d::~Fft2d() {
  fftw_destroy_plan(forward_);
  fftw_destroy_plan(backward_);
  fftw_free(buffer_);
}

}  // namespace vortexmix::detail
