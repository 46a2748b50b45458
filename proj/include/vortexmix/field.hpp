#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace vortexmix {

using Complex = std::complex<double>;

/// Square sampling grid. Sample (row i, column j) sits at
///   x = center_x + (j - (n-1)/2) * pitch
///   y = center_y - (i - (n-1)/2) * pitch
/// i.e. rows run top to bottom with y pointing up, and the grid centre falls
/// between samples.
struct GridSpec {
  std::size_t n = 512;
  double pitch = 1.0;  // meters per sample
  double center_x = 0.0;
  double center_y = 0.0;

  [[nodiscard]] double extent() const { return static_cast<double>(n) * pitch; }
  [[nodiscard]] double x(std::size_t col) const;
  [[nodiscard]] double y(std::size_t row) const;

  /// Throws ErrorKind::Parameter unless n >= 16 and pitch > 0.
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Grid of n samples whose extent is `extent_waists * waist`.
GridSpec grid_for_waist(double waist, std::size_t n = 512, double extent_waists = 8.0);

/// Sign of the azimuthal factor used for a charge-l mode.
enum class PhaseConvention {
  NegativeExp,  // e^{-il phi}
  PositiveExp,  // e^{+il phi}
};

[[nodiscard]] constexpr int azimuthal_sign(PhaseConvention c) {
  return c == PhaseConvention::NegativeExp ? -1 : +1;
}

class ComplexField {
 public:
  explicit ComplexField(const GridSpec& grid);
  ComplexField(const GridSpec& grid, std::vector<Complex> values);

  [[nodiscard]] const GridSpec& grid() const { return grid_; }
  [[nodiscard]] std::size_t n() const { return grid_.n; }

  [[nodiscard]] std::span<const Complex> values() const { return values_; }
  [[nodiscard]] std::span<Complex> values() { return values_; }

  [[nodiscard]] const Complex& at(std::size_t row, std::size_t col) const {
    return values_[row * grid_.n + col];
  }
  Complex& at(std::size_t row, std::size_t col) { return values_[row * grid_.n + col]; }

  [[nodiscard]] double power() const;
  [[nodiscard]] double max_abs() const;
  [[nodiscard]] bool all_finite() const;

  friend bool operator==(const ComplexField&, const ComplexField&) = default;

 private:
  GridSpec grid_;
  std::vector<Complex> values_;
};

struct LGSpec {
  int l = 0;
  int p = 0;
  double waist = 1e-3;  // half-beam width w, meters
  double amplitude = 1.0;
  PhaseConvention convention = PhaseConvention::NegativeExp;

  static constexpr int kMaxCharge = 32;
};

/// Analytic Laguerre-Gaussian mode
///   E0 (sqrt2 r/w)^|l| e^{∓il phi} e^{-r^2/w^2} L_p^|l|(2r^2/w^2)
/// centred on the physical origin.
ComplexField synthesize_lg(const LGSpec& spec, const GridSpec& grid);

enum class MirrorAxis {
  Horizontal,  // y -> -y, flips rows
  Vertical,    // x -> -x, flips columns
};

ComplexField reflect(const ComplexField& f, MirrorAxis axis);
ComplexField conjugate(const ComplexField& f);

/// Per-pixel product of `fields`, conjugating those whose mask bit is set.
/// All fields must share one GridSpec.
ComplexField pointwise_product(std::span<const ComplexField> fields,
                               const std::vector<bool>& conjugate_mask);

ComplexField scale(const ComplexField& f, Complex factor);

/// Integer-pixel translation with zero fill; positive dx moves content to +x.
ComplexField translate(const ComplexField& f, long dx_pixels, long dy_pixels);

}  // namespace vortexmix
