#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "test_support.hpp"
#include "vortexmix/analysis.hpp"
#include "vortexmix/error.hpp"
#include "vortexmix/mixer.hpp"

using namespace vortexmix;
using testsupport::kPi;
using testsupport::kWaist;

namespace {

constexpr double kD1 = 795e-9;
constexpr double kD2 = 780e-9;
constexpr double kProbeAngle = 0.010;

const Vec3 kPlusZ{0.0, 0.0, 1.0};
const Vec3 kMinusZ{0.0, 0.0, -1.0};
const Vec3 kProbeDir{std::sin(kProbeAngle), 0.0, std::cos(kProbeAngle)};

// Hand-evaluated vector arithmetic, frozen: aligned pumps and a 1 mrad
// backward-pump tilt, both with the 10 mrad probe.
constexpr double kAlignedResidual = 7.455958057763517;
constexpr double kTiltedResidual = 86.48866838287766;
constexpr std::array<double, 3> kAlignedSignalDir{-0.009811166314629753, 0.0, -0.9999518693494936};

// Plain-arithmetic check of |k_F + k_B - k_P| - 2 pi (1/l_F + 1/l_B - 1/l_P).
double residual_oracle(const Vec3& df, const Vec3& db, const Vec3& dp) {
  double s[3];
  for (int i = 0; i < 3; ++i) s[i] = 2 * kPi * (df[i] / kD1 + db[i] / kD2 - dp[i] / kD1);
  return std::abs(std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]) - 2 * kPi / kD2);
}

MixingScenario scenario(int lf, int lb, int lp, std::size_t n = 256) {
  return MixingScenario{BeamLine{testsupport::lg(lf, 0, n), kD1, kPlusZ, BeamRole::ForwardPump},
                        BeamLine{testsupport::lg(lb, 0, n), kD2, kMinusZ, BeamRole::BackwardPump},
                        BeamLine{testsupport::lg(lp, 0, n), kD1, kProbeDir, BeamRole::Probe}};
}

int signal_charge(const ComplexField& f) {
  return winding_number_any(f, {0.7 * kWaist, 0.5 * kWaist, kWaist}).charge;
}

}  // namespace

TEST(ChargeLedger, WorkedExamples) {
  static_assert(charge_ledger(0, 1, 0) == 1);
  static_assert(charge_ledger(0, 1, -1) == 2);
  static_assert(charge_ledger(0, 0, 0) == 0);
  const std::vector<int> charges{1, 2, -1, 3};
  const std::vector<int> signs{1, 1, -1, 1};
  EXPECT_EQ(charge_ledger(charges, signs), 1 + 2 + 1 + 3);
}

TEST(Mix, WorkedExamples) {
  EXPECT_EQ(signal_charge(mix(scenario(0, 0, 0))), 0);
  EXPECT_EQ(signal_charge(mix(scenario(0, 1, 0))), 1);
  EXPECT_EQ(signal_charge(mix(scenario(0, 1, -1))), 2);
}

TEST(Mix, WindingMatchesLedgerOnFullCube) {
  std::vector<ComplexField> modes;
  for (int l = -2; l <= 2; ++l) modes.push_back(testsupport::lg(l, 0, 256));
  int checked = 0;
  for (int lf = -2; lf <= 2; ++lf) {
    for (int lb = -2; lb <= 2; ++lb) {
      for (int lp = -2; lp <= 2; ++lp) {
        const MixingScenario s{BeamLine{modes[lf + 2], kD1, kPlusZ, BeamRole::ForwardPump},
                               BeamLine{modes[lb + 2], kD2, kMinusZ, BeamRole::BackwardPump},
                               BeamLine{modes[lp + 2], kD1, kProbeDir, BeamRole::Probe}};
        EXPECT_EQ(signal_charge(mix(s)), charge_ledger(lf, lb, lp)) << lf << ' ' << lb << ' ' << lp;
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 125);
}

TEST(Mix, LinearInChi3) {
  MixingScenario s = scenario(1, 1, -1, 64);
  const ComplexField base = mix(s);
  const Complex c{-0.75, 2.5};
  s.chi3 = c;
  const ComplexField scaled = mix(s);
  for (std::size_t k = 0; k < base.values().size(); ++k) EXPECT_EQ(scaled.values()[k], c * base.values()[k]);
}

TEST(Mix, ConjugatedProbeFlipsLedgerSign) {
  for (int lp = -2; lp <= 2; ++lp) {
    MixingScenario s = scenario(1, 0, lp);
    s.probe.field = conjugate(s.probe.field);
    EXPECT_EQ(signal_charge(mix(s)), charge_ledger(1, 0, -lp));
  }
}

TEST(Mix, RejectsGridMismatch) {
  MixingScenario s = scenario(0, 1, 0, 64);
  s.probe.field = testsupport::lg(0, 0, 128);
  try {
    mix(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Shape);
  }
}

TEST(BeamLine, RejectsNonUnitDirection) {
  BeamLine b{testsupport::lg(0, 0, 64), kD1, {0.0, 0.0, 1.0 + 1e-9}, BeamRole::Probe};
  EXPECT_THROW(b.validate(), Error);
  b.direction = kPlusZ;
  EXPECT_NO_THROW(b.validate());
  b.wavelength = 0.0;
  EXPECT_THROW(b.validate(), Error);
}

TEST(PhaseMatch, RubidiumWavelengthsGiveExactSignalWavelength) {
  const MatchReport r = phase_match(scenario(0, 1, 0, 64), Vec3{-kProbeDir[0], 0.0, -kProbeDir[2]});
  EXPECT_EQ(r.signal_wavelength, kD2);
  EXPECT_NEAR(residual_oracle(kPlusZ, kMinusZ, kProbeDir), kAlignedResidual, 1e-6);
  EXPECT_NEAR(r.k_residual, kAlignedResidual, 1e-6);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(r.signal_direction[i], kAlignedSignalDir[i], 1e-12);
  // Counter-propagating the probe, up to the small pump/probe mismatch.
  EXPECT_NEAR(angle_between(r.signal_direction, Vec3{-kProbeDir[0], 0.0, -kProbeDir[2]}), 1.886762764e-4, 1e-12);
}

TEST(PhaseMatch, DegenerateCollinearIsExact) {
  const MatchReport r = phase_match(kD1, kPlusZ, kD1, kMinusZ, kD1, kPlusZ);
  EXPECT_EQ(r.signal_wavelength, kD1);
  // Zero up to rounding of a 7.9e6 /m wavenumber.
  EXPECT_NEAR(r.k_residual, 0.0, 1e-15 * 2 * kPi / kD1);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(r.signal_direction[i], kMinusZ[i], 1e-15);
}

TEST(PhaseMatch, MisalignedPumpsReportResidual) {
  const Vec3 tilted{std::sin(1e-3), 0.0, -std::cos(1e-3)};
  EXPECT_NEAR(residual_oracle(kPlusZ, tilted, kProbeDir), kTiltedResidual, 1e-6);
  const MatchReport r = phase_match(kD1, kPlusZ, kD2, tilted, kD1, kProbeDir);
  EXPECT_NEAR(r.k_residual, kTiltedResidual, 1e-6);
  EXPECT_GT(r.k_residual, kAlignedResidual);
}

TEST(PhaseMatch, PumpExchangeLeavesWavelengthUnchanged) {
  const MatchReport a = phase_match(kD1, kPlusZ, kD2, kMinusZ, kD1, kProbeDir);
  const MatchReport b = phase_match(kD2, kMinusZ, kD1, kPlusZ, kD1, kProbeDir);
  EXPECT_EQ(a.signal_wavelength, b.signal_wavelength);
  const MatchReport c = phase_match(700e-9, kPlusZ, 810e-9, kMinusZ, 790e-9, kProbeDir);
  const MatchReport d = phase_match(810e-9, kMinusZ, 700e-9, kPlusZ, 790e-9, kProbeDir);
  EXPECT_EQ(c.signal_wavelength, d.signal_wavelength);
}

TEST(PhaseMatch, ObservedWavelengthFeedsOmegaResidual) {
  const MatchReport r = phase_match(kD1, kPlusZ, kD2, kMinusZ, kD1, kProbeDir, std::nullopt, 780.78e-9);
  EXPECT_NEAR(r.omega_residual, 1.0 - 780.0 / 780.78, 1e-12);
}

TEST(PhaseMatch, NonPositiveSignalFrequencyIsUnphysical) {
  try {
    phase_match(1600e-9, kPlusZ, 1600e-9, kMinusZ, 700e-9, kProbeDir);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnphysicalScenario);
  }
  EXPECT_THROW(phase_match(-1.0, kPlusZ, kD2, kMinusZ, kD1, kProbeDir), Error);
}
