#include "vortexmix/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vortexmix/error.hpp"

namespace vortexmix {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Nonzero-harmonic power below this fraction of the DC power counts as flat.
constexpr double kNoFringePowerRatio = 1e-4;
// Twist (rad) between the two sign rings below which the sign is unresolved.
constexpr double kMinTwist = 1e-3;

void check_ring_inside(const GridSpec& g, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::Parameter, "ring radius must be positive");
  const double reach = (static_cast<double>(g.n) - 1.0) / 2.0 * g.pitch;
  const double off = std::hypot(g.center_x, g.center_y);
  if (radius + off > reach) {
    throw Error(ErrorKind::Parameter, "ring of radius " + std::to_string(radius) + " m leaves the grid");
  }
}

template <typename Acc>
std::vector<RadialBin> radial_bins(const GridSpec& g, Acc&& value_at) {
  const std::size_t bins = static_cast<std::size_t>((static_cast<double>(g.n) - 1.0) / 2.0);
  std::vector<double> sum(bins, 0.0);
  std::vector<std::size_t> count(bins, 0);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double y = g.y(i);
    for (std::size_t j = 0; j < g.n; ++j) {
      const double x = g.x(j);
      const auto k = static_cast<std::size_t>(std::sqrt(x * x + y * y) / g.pitch);
      if (k >= bins) continue;
      sum[k] += value_at(i, j);
      ++count[k];
    }
  }
  std::vector<RadialBin> out;
  out.reserve(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    if (count[k] == 0) continue;
    out.push_back({(static_cast<double>(k) + 0.5) * g.pitch, sum[k] / static_cast<double>(count[k])});
  }
  return out;
}

}  // namespace

std::string_view to_string(ChargeMethod m) { return m == ChargeMethod::Winding ? "winding" : "fringe"; }

ChargeEstimate winding_number(const ComplexField& f, double radius, const WindingOptions& opt) {
  if (opt.samples < 256) throw Error(ErrorKind::Parameter, "winding needs at least 256 ring samples");
  check_ring_inside(f.grid(), radius);

  std::vector<Complex> ring(opt.samples);
  double ring_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < opt.samples; ++k) {
    const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(opt.samples);
    ring[k] = sample_bilinear(f, radius * std::cos(theta), radius * std::sin(theta));
    ring_min = std::min(ring_min, std::abs(ring[k]));
  }
  const double field_max = f.max_abs();
  if (!(ring_min > opt.min_relative_amplitude * field_max)) {
    throw Error(ErrorKind::UndefinedPhase,
                "amplitude on ring r=" + std::to_string(radius) + " m drops below threshold; try another radius");
  }

  double total = 0.0;
  for (std::size_t k = 0; k < opt.samples; ++k) {
    const Complex& a = ring[k];
    const Complex& b = ring[(k + 1) % opt.samples];
    total += std::arg(b * std::conj(a));
  }
  // A charge-l mode in the e^{-il phi} convention winds by -l.
  const double unrounded = azimuthal_sign(opt.convention) * total / kTwoPi;
  const double charge = std::round(unrounded);
  return {static_cast<int>(charge), ChargeMethod::Winding, std::abs(unrounded - charge), radius};
}

ChargeEstimate winding_number_any(const ComplexField& f, const std::vector<double>& radii, const WindingOptions& opt) {
  for (std::size_t k = 0; k < radii.size(); ++k) {
    try {
      return winding_number(f, radii[k], opt);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UndefinedPhase || k + 1 == radii.size()) throw;
    }
  }
  throw Error(ErrorKind::Parameter, "no radii given");
}

RingSpectrum ring_spectrum(const IntensityImage& img, double radius, std::size_t samples) {
  if (samples < 16) throw Error(ErrorKind::Parameter, "too few ring samples");
  check_ring_inside(img.grid, radius);
  RingSpectrum rs;
  rs.radius = radius;
  rs.samples.resize(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(samples);
    rs.samples[k] = sample_bilinear(img, radius * std::cos(theta), radius * std::sin(theta));
  }
  const std::size_t harmonics = samples / 2 + 1;
  rs.coeff.resize(harmonics);
  rs.power.resize(harmonics);
  for (std::size_t h = 0; h < harmonics; ++h) {
    Complex c{};
    for (std::size_t k = 0; k < samples; ++k) {
      // Reduce h*k first so the twiddle angle stays exact for large products.
      const auto idx = (h * k) % samples;
      c += rs.samples[k] * std::polar(1.0, -kTwoPi * static_cast<double>(idx) / static_cast<double>(samples));
    }
    rs.coeff[h] = c;
    rs.power[h] = std::norm(c);
  }
  return rs;
}

std::size_t count_local_maxima(const std::vector<double>& periodic) {
  std::vector<double> runs;
  for (double v : periodic) {
    if (runs.empty() || v != runs.back()) runs.push_back(v);
  }
  while (runs.size() > 1 && runs.front() == runs.back()) runs.pop_back();
  if (runs.size() < 3) return runs.size() == 2 ? 1 : 0;
  std::size_t count = 0;
  const std::size_t m = runs.size();
  for (std::size_t k = 0; k < m; ++k) {
    if (runs[k] > runs[(k + m - 1) % m] && runs[k] > runs[(k + 1) % m]) ++count;
  }
  return count;
}

std::size_t count_lobes(const std::vector<double>& periodic, double hysteresis) {
  if (periodic.empty()) return 0;
  const auto [lo_it, hi_it] = std::minmax_element(periodic.begin(), periodic.end());
  const double range = *hi_it - *lo_it;
  if (!(range > 0.0)) return 0;
  const double low = *lo_it + hysteresis * range;
  const double high = *hi_it - hysteresis * range;
  // Start from the global minimum so the cyclic scan opens in the low state.
  const std::size_t start = static_cast<std::size_t>(lo_it - periodic.begin());
  bool above = false;
  std::size_t lobes = 0;
  for (std::size_t k = 0; k < periodic.size(); ++k) {
    const double v = periodic[(start + k) % periodic.size()];
    if (!above && v >= high) {
      above = true;
      ++lobes;
    } else if (above && v <= low) {
      above = false;
    }
  }
  return lobes;
}

FringeResult fringe_analysis(const IntensityImage& img, const FringeOptions& opt) {
  double radius = 0.0;
  if (opt.ring_radius) {
    radius = *opt.ring_radius;
  } else {
    const auto profile = radial_profile(img);
    if (profile.empty()) throw Error(ErrorKind::NoFringe, "image has no rings");
    radius = std::max_element(profile.begin(), profile.end(), [](const RadialBin& a, const RadialBin& b) {
               return a.mean_intensity < b.mean_intensity;
             })->radius;
  }

  const RingSpectrum rs = ring_spectrum(img, radius, opt.samples);
  double nonzero = 0.0;
  std::size_t dominant = 0;
  for (std::size_t h = 1; h < rs.power.size(); ++h) {
    nonzero += rs.power[h];
    if (dominant == 0 || rs.power[h] > rs.power[dominant]) dominant = h;
  }
  if (!(rs.power[0] > 0.0) || nonzero < kNoFringePowerRatio * rs.power[0]) {
    throw Error(ErrorKind::NoFringe, "azimuthal spectrum on ring r=" + std::to_string(radius) + " is flat");
  }
  if (dominant % 2 != 0) {
    throw Error(ErrorKind::InconsistentInterferogram,
                "dominant azimuthal harmonic " + std::to_string(dominant) + " is odd");
  }
  double next = 0.0;
  for (std::size_t h = 1; h < rs.power.size(); ++h) {
    if (h != dominant) next = std::max(next, rs.power[h]);
  }

  FringeResult out;
  out.dominant_harmonic = static_cast<int>(dominant);
  out.dominance_ratio = next > 0.0 ? rs.power[dominant] / next : std::numeric_limits<double>::infinity();
  out.estimate.method = ChargeMethod::Fringe;
  out.estimate.ring_radius = radius;
  out.estimate.residual = 1.0 - rs.power[dominant] / nonzero;

  const int magnitude = static_cast<int>(dominant / 2);
  const RingSpectrum inner = ring_spectrum(img, 0.95 * radius, opt.samples);
  const RingSpectrum outer = ring_spectrum(img, 1.05 * radius, opt.samples);
  const double twist = std::arg(outer.coeff[dominant] * std::conj(inner.coeff[dominant]));
  if (std::abs(twist) < kMinTwist) {
    out.estimate.charge = magnitude;
    out.estimate.residual = 1.0;
    out.sign_resolved = false;
  } else {
    // With eta > 0 the fringe phase grows outward for positive charge in the
    // e^{-il phi} convention.
    const int sign = (twist > 0.0 ? 1 : -1) * -azimuthal_sign(opt.convention);
    out.estimate.charge = sign * magnitude;
    out.sign_resolved = true;
  }
  return out;
}

ChargeEstimate fringe_charge(const IntensityImage& img, std::optional<double> ring_radius) {
  FringeOptions opt;
  opt.ring_radius = ring_radius;
  return fringe_analysis(img, opt).estimate;
}

std::vector<RadialBin> radial_profile(const IntensityImage& img) {
  return radial_bins(img.grid, [&](std::size_t i, std::size_t j) { return img.at(i, j); });
}

std::vector<RadialBin> radial_profile(const ComplexField& f) {
  return radial_bins(f.grid(), [&](std::size_t i, std::size_t j) { return std::norm(f.at(i, j)); });
}

}  // namespace vortexmix
