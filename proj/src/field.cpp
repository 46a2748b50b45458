#include "vortexmix/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "vortexmix/error.hpp"

namespace vortexmix {

double GridSpec::x(std::size_t col) const {
  return center_x + (static_cast<double>(col) - (static_cast<double>(n) - 1.0) / 2.0) * pitch;
}

double GridSpec::y(std::size_t row) const {
  return center_y - (static_cast<double>(row) - (static_cast<double>(n) - 1.0) / 2.0) * pitch;
}

void GridSpec::validate() const {
  if (n < 16) throw Error(ErrorKind::Parameter, "grid needs at least 16 samples per side, got " + std::to_string(n));
  if (!(pitch > 0.0) || !std::isfinite(pitch)) throw Error(ErrorKind::Parameter, "grid pitch must be positive");
}

GridSpec grid_for_waist(double waist, std::size_t n, double extent_waists) {
  if (!(waist > 0.0)) throw Error(ErrorKind::Parameter, "waist must be positive");
  if (!(extent_waists > 0.0)) throw Error(ErrorKind::Parameter, "grid extent must be positive");
  GridSpec g{n, extent_waists * waist / static_cast<double>(n), 0.0, 0.0};
  g.validate();
  return g;
}

ComplexField::ComplexField(const GridSpec& grid) : grid_(grid), values_(grid.n * grid.n) {}

ComplexField::ComplexField(const GridSpec& grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n * grid_.n) {
    throw Error(ErrorKind::Shape, "field has " + std::to_string(values_.size()) + " samples, grid needs " +
                                      std::to_string(grid_.n * grid_.n));
  }
}

double ComplexField::power() const {
  double sum = 0.0;
  for (const auto& v : values_) sum += std::norm(v);
  return sum;
}

double ComplexField::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool ComplexField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

ComplexField synthesize_lg(const LGSpec& spec, const GridSpec& grid) {
  grid.validate();
  if (spec.p < 0) throw Error(ErrorKind::Parameter, "radial index p must be >= 0");
  if (std::abs(spec.l) > LGSpec::kMaxCharge) {
    throw Error(ErrorKind::Parameter, "|l| = " + std::to_string(std::abs(spec.l)) + " exceeds cap " +
                                          std::to_string(LGSpec::kMaxCharge));
  }
  if (!(spec.waist > 0.0)) throw Error(ErrorKind::Parameter, "waist must be positive");
  if (grid.extent() < 4.0 * spec.waist) {
    throw Error(ErrorKind::Containment, "grid extent " + std::to_string(grid.extent()) + " m is below 4w = " +
                                            std::to_string(4.0 * spec.waist) + " m");
  }

  const unsigned abs_l = static_cast<unsigned>(std::abs(spec.l));
  const unsigned p = static_cast<unsigned>(spec.p);
  const double w = spec.waist;
  const double sign = azimuthal_sign(spec.convention);

  ComplexField out(grid);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double y = grid.y(i);
    for (std::size_t j = 0; j < grid.n; ++j) {
      const double x = grid.x(j);
      const double r2 = x * x + y * y;
      const double rho = std::sqrt(2.0 * r2) / w;
      const double u = 2.0 * r2 / (w * w);
      const double radial = spec.amplitude * std::pow(rho, static_cast<double>(abs_l)) * std::exp(-r2 / (w * w)) *
                            std::assoc_laguerre(p, abs_l, u);
      const double phi = std::atan2(y, x);
      out.at(i, j) = std::polar(radial, sign * (spec.l * phi));
    }
  }
  return out;
}

ComplexField reflect(const ComplexField& f, MirrorAxis axis) {
  const std::size_t n = f.n();
  ComplexField out(f.grid());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.at(i, j) = axis == MirrorAxis::Horizontal ? f.at(n - 1 - i, j) : f.at(i, n - 1 - j);
    }
  }
  return out;
}

ComplexField conjugate(const ComplexField& f) {
  ComplexField out(f.grid());
  auto src = f.values();
  auto dst = out.values();
  std::transform(src.begin(), src.end(), dst.begin(), [](const Complex& v) { return std::conj(v); });
  return out;
}

ComplexField pointwise_product(std::span<const ComplexField> fields, const std::vector<bool>& conjugate_mask) {
  if (fields.empty()) throw Error(ErrorKind::Parameter, "product of zero fields");
  if (conjugate_mask.size() != fields.size()) {
    throw Error(ErrorKind::Parameter, "conjugate mask length does not match field count");
  }
  const GridSpec& grid = fields.front().grid();
  for (const auto& f : fields) {
    if (!(f.grid() == grid)) throw Error(ErrorKind::Shape, "fields in a product must share one grid");
  }

  ComplexField out(grid, std::vector<Complex>(grid.n * grid.n, Complex{1.0, 0.0}));
  auto dst = out.values();
  for (std::size_t k = 0; k < fields.size(); ++k) {
    auto src = fields[k].values();
    const bool conj = conjugate_mask[k];
    for (std::size_t idx = 0; idx < dst.size(); ++idx) dst[idx] *= conj ? std::conj(src[idx]) : src[idx];
  }
  return out;
}

ComplexField scale(const ComplexField& f, Complex factor) {
  ComplexField out(f.grid());
  auto src = f.values();
  auto dst = out.values();
  for (std::size_t idx = 0; idx < dst.size(); ++idx) dst[idx] = factor * src[idx];
  return out;
}

ComplexField translate(const ComplexField& f, long dx_pixels, long dy_pixels) {
  const long n = static_cast<long>(f.n());
  ComplexField out(f.grid());
  for (long i = 0; i < n; ++i) {
    // +y is up, so moving content by +dy lowers the row index.
    const long si = i + dy_pixels;
    if (si < 0 || si >= n) continue;
    for (long j = 0; j < n; ++j) {
      const long sj = j - dx_pixels;
      if (sj < 0 || sj >= n) continue;
      out.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          f.at(static_cast<std::size_t>(si), static_cast<std::size_t>(sj));
    }
  }
  return out;
}

}  // namespace vortexmix
