#pragma once

#include "vortexmix/field.hpp"

namespace vortexmix {

enum class MaskMode { Sinusoidal, Binary };

/// Fork-dislocation amplitude grating.
struct HologramSpec {
  int charge = 1;           // embedded dislocation l_h
  double period = 62.5e-6;  // grating period, meters
  double offset_x = 0.0;    // fork centre relative to the beam axis, meters
  double offset_y = 0.0;
  MaskMode mode = MaskMode::Binary;
  double fill = 0.5;  // binary threshold on the sinusoidal transmission

  static constexpr int kMaxCharge = 8;

  /// Throws ErrorKind::Sampling / Parameter.
  void validate(const GridSpec& grid) const;
};

struct OrderWindow {
  int order = 1;
  double half_width = 0.0;  // cycles/meter; <= 0 means the default 0.4/period

  /// Window with the default half-width for `period`.
  static OrderWindow for_period(int order, double period) { return {order, 0.4 / period}; }
};

/// t(x,y) = 1/2 (1 + cos(2 pi x / period - l_h atan2(y - y0, x - x0))), or its
/// thresholded {0,1} version in binary mode. Imaginary parts are zero.
ComplexField fork_transmission(const HologramSpec& spec, const GridSpec& grid);

/// Illuminate `transmission` with `input`, isolate the order-m lobe at spatial
/// frequency (m/period, 0) with a circular window, move it to baseband and
/// transform back. The carrier shift is rounded to a whole frequency bin.
ComplexField extract_order(const ComplexField& input, const ComplexField& transmission,
                           double period, const OrderWindow& window);

ComplexField diffract_and_extract(const ComplexField& input, const HologramSpec& spec,
                                  const OrderWindow& window);

/// Fraction of input power landing in the order window.
double order_efficiency(const ComplexField& input, const ComplexField& transmission,
                        double period, const OrderWindow& window);

double diffraction_efficiency(const HologramSpec& spec, const OrderWindow& window,
                              const ComplexField& input);

}  // namespace vortexmix
