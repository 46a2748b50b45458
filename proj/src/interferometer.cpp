#include "vortexmix/interferometer.hpp"

#include <cmath>

#include "vortexmix/error.hpp"

namespace vortexmix {

void InterferometerConfig::validate() const {
  if (!(arm_balance >= 0.0)) throw Error(ErrorKind::Parameter, "arm balance must be non-negative");
  if (!std::isfinite(eta) || !std::isfinite(phase)) throw Error(ErrorKind::Parameter, "eta and phase must be finite");
}

IntensityImage analyze(const ComplexField& input, const InterferometerConfig& cfg) {
  cfg.validate();
  if (!input.all_finite()) throw Error(ErrorKind::Parameter, "interferometer input contains non-finite samples");

  const GridSpec& g = input.grid();
  if (cfg.blocked == BlockedArm::Reflected) return intensity(input);

  const ComplexField mirrored = reflect(input, cfg.mirror);
  if (cfg.blocked == BlockedArm::Direct) {
    IntensityImage img = intensity(mirrored);
    const double gain = cfg.arm_balance * cfg.arm_balance;
    for (auto& v : img.values) v *= gain;
    return img;
  }

  IntensityImage img(g);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double y = g.y(i);
    for (std::size_t j = 0; j < g.n; ++j) {
      const double x = g.x(j);
      const double r = std::sqrt(x * x + y * y);
      const double mismatch = cfg.profile == MismatchProfile::Linear ? cfg.eta * r : cfg.eta * r * r;
      const Complex arm = std::polar(cfg.arm_balance, cfg.phase + mismatch) * mirrored.at(i, j);
      img.at(i, j) = std::norm(input.at(i, j) + arm);
    }
  }
  return img;
}

double rotation_check(int l, double phase_a, double phase_b) {
  if (l == 0) throw Error(ErrorKind::UndefinedRotation, "a charge-0 interferogram has no azimuthal fringes to rotate");
  return (phase_a - phase_b) / (2.0 * l);
}

}  // namespace vortexmix
