#include "vortexmix/hologram.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "vortexmix/error.hpp"

namespace vortexmix {
namespace {

struct WindowBins {
  long center = 0;      // carrier bin along x
  double radius = 0.0;  // in bins
};

WindowBins window_bins(const GridSpec& grid, double period, const OrderWindow& window) {
  if (!(period > 0.0)) throw Error(ErrorKind::Parameter, "grating period must be positive");
  const double half_width = window.half_width > 0.0 ? window.half_width : 0.4 / period;
  if (!(half_width < 1.0 / (2.0 * period))) {
    throw Error(ErrorKind::Extraction, "window half-width " + std::to_string(half_width) +
                                           " cycles/m overlaps neighbouring orders (limit 1/(2 period))");
  }
  const double bins_per_cycle = grid.extent();  // one bin is 1/(n pitch) cycles/m
  WindowBins wb{std::lround(window.order * bins_per_cycle / period), half_width * bins_per_cycle};
  if (static_cast<double>(std::abs(wb.center)) + wb.radius >= static_cast<double>(grid.n) / 2.0) {
    throw Error(ErrorKind::Extraction, "order " + std::to_string(window.order) + " lies beyond the grid's Nyquist limit");
  }
  return wb;
}

// Fills fft.data() with the spectrum of input * transmission.
void illuminate(detail::Fft2d& fft, const ComplexField& input, const ComplexField& transmission) {
  if (!(input.grid() == transmission.grid())) {
    throw Error(ErrorKind::Shape, "input and transmission grids differ");
  }
  auto buf = fft.data();
  auto in = input.values();
  auto t = transmission.values();
  for (std::size_t k = 0; k < buf.size(); ++k) buf[k] = in[k] * t[k];
  fft.forward();
}

template <typename Visit>
void for_each_window_bin(std::size_t n, const WindowBins& wb, Visit&& visit) {
  const double r2 = wb.radius * wb.radius;
  const long half = static_cast<long>(wb.radius) + 1;
  const long ln = static_cast<long>(n);
  for (long sy = -half; sy <= half; ++sy) {
    for (long sx = -half; sx <= half; ++sx) {
      if (static_cast<double>(sx * sx + sy * sy) > r2) continue;
      const auto dst_row = static_cast<std::size_t>((sy + ln) % ln);
      const auto dst_col = static_cast<std::size_t>((sx + ln) % ln);
      const auto src_col = static_cast<std::size_t>(((sx + wb.center) % ln + ln) % ln);
      visit(dst_row * n + dst_col, dst_row * n + src_col);
    }
  }
}

}  // namespace

void HologramSpec::validate(const GridSpec& grid) const {
  grid.validate();
  if (std::abs(charge) > kMaxCharge) {
    throw Error(ErrorKind::Parameter, "hologram charge " + std::to_string(charge) + " exceeds cap " +
                                          std::to_string(kMaxCharge));
  }
  if (!(period > 2.0 * grid.pitch)) {
    throw Error(ErrorKind::Sampling, "grating period " + std::to_string(period) + " m is not above two pixels (" +
                                         std::to_string(2.0 * grid.pitch) + " m)");
  }
  if (!(fill >= 0.0 && fill <= 1.0)) throw Error(ErrorKind::Parameter, "fill must lie in [0, 1]");
}

ComplexField fork_transmission(const HologramSpec& spec, const GridSpec& grid) {
  spec.validate(grid);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  ComplexField t(grid);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double y = grid.y(i);
    for (std::size_t j = 0; j < grid.n; ++j) {
      const double x = grid.x(j);
      const double psi = two_pi * x / spec.period - spec.charge * std::atan2(y - spec.offset_y, x - spec.offset_x);
      const double s = 0.5 * (1.0 + std::cos(psi));
      t.at(i, j) = spec.mode == MaskMode::Binary ? (s >= spec.fill ? 1.0 : 0.0) : s;
    }
  }
  return t;
}

ComplexField extract_order(const ComplexField& input, const ComplexField& transmission, double period,
                           const OrderWindow& window) {
  const GridSpec& grid = input.grid();
  const WindowBins wb = window_bins(grid, period, window);
  const std::size_t n = grid.n;

  detail::Fft2d fft(n);
  illuminate(fft, input, transmission);
  std::vector<Complex> spectrum(fft.data().begin(), fft.data().end());

  auto buf = fft.data();
  std::fill(buf.begin(), buf.end(), Complex{});
  for_each_window_bin(n, wb, [&](std::size_t dst, std::size_t src) { buf[dst] = spectrum[src]; });
  fft.backward();

  const double norm = 1.0 / static_cast<double>(n * n);
  std::vector<Complex> values(n * n);
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = buf[k] * norm;
  return ComplexField(grid, std::move(values));
}

ComplexField diffract_and_extract(const ComplexField& input, const HologramSpec& spec, const OrderWindow& window) {
  return extract_order(input, fork_transmission(spec, input.grid()), spec.period, window);
}

double order_efficiency(const ComplexField& input, const ComplexField& transmission, double period,
                        const OrderWindow& window) {
  const double input_power = input.power();
  if (!(input_power > 0.0)) throw Error(ErrorKind::DegenerateInput, "input field carries no power");
  const GridSpec& grid = input.grid();
  const WindowBins wb = window_bins(grid, period, window);

  detail::Fft2d fft(grid.n);
  illuminate(fft, input, transmission);
  auto buf = fft.data();
  double window_power = 0.0;
  for_each_window_bin(grid.n, wb, [&](std::size_t, std::size_t src) { window_power += std::norm(buf[src]); });
  return window_power / (static_cast<double>(grid.n * grid.n) * input_power);
}

double diffraction_efficiency(const HologramSpec& spec, const OrderWindow& window, const ComplexField& input) {
  return order_efficiency(input, fork_transmission(spec, input.grid()), spec.period, window);
}

}  // namespace vortexmix
