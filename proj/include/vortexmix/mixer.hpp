#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "vortexmix/field.hpp"

namespace vortexmix {

using Vec3 = std::array<double, 3>;

double norm(const Vec3& v);
Vec3 normalized(const Vec3& v);
/// Angle between two non-zero vectors, accurate for tiny angles.
double angle_between(const Vec3& a, const Vec3& b);

enum class BeamRole { ForwardPump, BackwardPump, Probe };

std::string_view to_string(BeamRole role);

struct BeamLine {
  ComplexField field;
  double wavelength = 795e-9;  // meters
  Vec3 direction{0.0, 0.0, 1.0};
  BeamRole role = BeamRole::ForwardPump;

  void validate() const;
};

struct MixingScenario {
  BeamLine forward;
  BeamLine backward;
  BeamLine probe;
  Complex chi3{1.0, 0.0};
  /// Measured signal wavelength, if any; only feeds MatchReport::omega_residual.
  std::optional<double> observed_signal_wavelength;

  void validate() const;
};

struct MatchReport {
  double signal_wavelength = 0.0;
  double k_residual = 0.0;      // |k_F + k_B - k_P - k_S|, 1/m
  double omega_residual = 0.0;  // relative, against observed_signal_wavelength
  Vec3 signal_direction{0.0, 0.0, 1.0};
};

/// E_S = chi3 * E_F * E_B * conj(E_P), pointwise.
ComplexField mix(const MixingScenario& s);

/// l_F + l_B - l_P.
constexpr int charge_ledger(int l_forward, int l_backward, int l_probe) {
  return l_forward + l_backward - l_probe;
}

/// N-wave generalisation: charges[i] enters with +1, or -1 where conjugated[i].
int charge_ledger(std::span<const int> charges, std::span<const int> signs);

MatchReport phase_match(const MixingScenario& s,
                        std::optional<Vec3> signal_direction_hint = std::nullopt);

/// Same computation without needing fields.
MatchReport phase_match(double lambda_forward, const Vec3& dir_forward, double lambda_backward,
                        const Vec3& dir_backward, double lambda_probe, const Vec3& dir_probe,
                        std::optional<Vec3> signal_direction_hint = std::nullopt,
                        std::optional<double> observed_signal_wavelength = std::nullopt);

}  // namespace vortexmix
