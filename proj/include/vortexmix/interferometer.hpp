#pragma once

#include "vortexmix/field.hpp"
#include "vortexmix/image.hpp"

namespace vortexmix {

enum class BlockedArm { None, Reflected, Direct };

enum class MismatchProfile {
  Linear,     // eta * r
  Quadratic,  // eta * r^2 (eta then in rad/m^2)
};

/// Mach-Zehnder analyser whose arms differ by one reflection.
struct InterferometerConfig {
  double eta = 0.0;    // divergence mismatch, rad/m (Linear)
  double phase = 0.0;  // arm phase offset, rad
  double arm_balance = 1.0;
  BlockedArm blocked = BlockedArm::None;
  MismatchProfile profile = MismatchProfile::Linear;
  MirrorAxis mirror = MirrorAxis::Horizontal;

  void validate() const;
};

/// |direct + balance * e^{i phase} e^{i eta r} * reflect(input)|^2, or the
/// unblocked arm alone.
IntensityImage analyze(const ComplexField& input, const InterferometerConfig& cfg);

/// (phase_a - phase_b) / (2l): the pattern at phase_a equals the pattern at
/// phase_b turned clockwise by this angle, i.e. I_a(phi) = I_b(phi + angle).
double rotation_check(int l, double phase_a, double phase_b);

}  // namespace vortexmix
