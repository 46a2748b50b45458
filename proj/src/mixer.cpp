#include "vortexmix/mixer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "vortexmix/error.hpp"

namespace vortexmix {
namespace {

Vec3 scaled(const Vec3& v, double s) { return {v[0] * s, v[1] * s, v[2] * s}; }
Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

void check_direction(const Vec3& d, std::string_view what) {
  if (std::abs(norm(d) - 1.0) > 1e-12) {
    throw Error(ErrorKind::Parameter, std::string(what) + " direction is not a unit vector");
  }
}

}  // namespace

double norm(const Vec3& v) { return std::hypot(v[0], v[1], v[2]); }

Vec3 normalized(const Vec3& v) {
  const double len = norm(v);
  if (!(len > 0.0)) throw Error(ErrorKind::Parameter, "cannot normalise a zero vector");
  return scaled(v, 1.0 / len);
}

double angle_between(const Vec3& a, const Vec3& b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

std::string_view to_string(BeamRole role) {
  switch (role) {
    case BeamRole::ForwardPump: return "forward";
    case BeamRole::BackwardPump: return "backward";
    case BeamRole::Probe: return "probe";
  }
  return "beam";
}

void BeamLine::validate() const {
  if (!(wavelength > 0.0)) throw Error(ErrorKind::Parameter, std::string(to_string(role)) + " wavelength must be positive");
  check_direction(direction, to_string(role));
}

void MixingScenario::validate() const {
  forward.validate();
  backward.validate();
  probe.validate();
  const GridSpec& g = forward.field.grid();
  if (!(backward.field.grid() == g) || !(probe.field.grid() == g)) {
    throw Error(ErrorKind::Shape, "forward, backward and probe fields must share one grid");
  }
}

ComplexField mix(const MixingScenario& s) {
  s.validate();
  const std::vector<ComplexField> fields{s.forward.field, s.backward.field, s.probe.field};
  ComplexField product = pointwise_product(fields, {false, false, true});
  for (auto& v : product.values()) v *= s.chi3;
  return product;
}

int charge_ledger(std::span<const int> charges, std::span<const int> signs) {
  if (charges.size() != signs.size()) throw Error(ErrorKind::Parameter, "charge and sign lists differ in length");
  int total = 0;
  for (std::size_t k = 0; k < charges.size(); ++k) {
    if (signs[k] != 1 && signs[k] != -1) throw Error(ErrorKind::Parameter, "ledger signs must be +1 or -1");
    total += signs[k] * charges[k];
  }
  return total;
}

MatchReport phase_match(double lambda_forward, const Vec3& dir_forward, double lambda_backward,
                        const Vec3& dir_backward, double lambda_probe, const Vec3& dir_probe,
                        std::optional<Vec3> signal_direction_hint, std::optional<double> observed_signal_wavelength) {
  if (!(lambda_forward > 0.0 && lambda_backward > 0.0 && lambda_probe > 0.0)) {
    throw Error(ErrorKind::Parameter, "wavelengths must be positive");
  }
  check_direction(dir_forward, "forward");
  check_direction(dir_backward, "backward");
  check_direction(dir_probe, "probe");

  // Wavenumbers in cycles/m; the pump pair is summed first so that swapping
  // the pumps leaves every rounding step unchanged.
  const double nu_signal = (1.0 / lambda_forward + 1.0 / lambda_backward) - 1.0 / lambda_probe;
  if (!(nu_signal > 0.0)) {
    throw Error(ErrorKind::UnphysicalScenario, "energy conservation implies a non-positive signal frequency");
  }

  constexpr double two_pi = 2.0 * std::numbers::pi;
  const Vec3 k_forward = scaled(dir_forward, two_pi / lambda_forward);
  const Vec3 k_backward = scaled(dir_backward, two_pi / lambda_backward);
  const Vec3 k_probe = scaled(dir_probe, two_pi / lambda_probe);
  const Vec3 k_sum = sub(add(k_forward, k_backward), k_probe);

  MatchReport report;
  report.signal_wavelength = 1.0 / nu_signal;
  const double k_signal = two_pi * nu_signal;

  const double scale = std::max({norm(k_forward), norm(k_backward), norm(k_probe)});
  if (norm(k_sum) > 1e-12 * scale) {
    report.signal_direction = normalized(k_sum);
  } else if (signal_direction_hint) {
    check_direction(*signal_direction_hint, "signal hint");
    report.signal_direction = *signal_direction_hint;
  } else {
    throw Error(ErrorKind::Parameter, "k_F + k_B - k_P vanishes and no signal direction hint was given");
  }
  report.k_residual = norm(sub(k_sum, scaled(report.signal_direction, k_signal)));
  if (observed_signal_wavelength) {
    if (!(*observed_signal_wavelength > 0.0)) throw Error(ErrorKind::Parameter, "observed wavelength must be positive");
    report.omega_residual = std::abs(1.0 / *observed_signal_wavelength - nu_signal) / nu_signal;
  }
  return report;
}

MatchReport phase_match(const MixingScenario& s, std::optional<Vec3> signal_direction_hint) {
  s.forward.validate();
  s.backward.validate();
  s.probe.validate();
  return phase_match(s.forward.wavelength, s.forward.direction, s.backward.wavelength, s.backward.direction,
                     s.probe.wavelength, s.probe.direction, signal_direction_hint, s.observed_signal_wavelength);
}

}  // namespace vortexmix
