#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "vortexmix/field.hpp"
#include "vortexmix/image.hpp"

namespace vortexmix {

enum class ChargeMethod { Winding, Fringe };

std::string_view to_string(ChargeMethod m);

struct ChargeEstimate {
  int charge = 0;
  ChargeMethod method = ChargeMethod::Winding;
  double residual = 0.0;
  double ring_radius = 0.0;  // meters (pixels for images read from PGM)
};

struct WindingOptions {
  std::size_t samples = 512;
  double min_relative_amplitude = 1e-6;
  PhaseConvention convention = PhaseConvention::NegativeExp;
};

/// Phase winding around the circle of `radius` centred on the origin,
/// reported as a charge in the given convention.
ChargeEstimate winding_number(const ComplexField& f, double radius, const WindingOptions& opt = {});

/// Tries each radius in turn and returns the first that has a defined phase.
ChargeEstimate winding_number_any(const ComplexField& f, const std::vector<double>& radii,
                                  const WindingOptions& opt = {});

struct RingSpectrum {
  double radius = 0.0;
  std::vector<double> samples;
  std::vector<Complex> coeff;  // c_h = sum_k I(theta_k) e^{-i h theta_k}, h = 0 .. samples/2
  std::vector<double> power;   // |c_h|^2
};

RingSpectrum ring_spectrum(const IntensityImage& img, double radius, std::size_t samples = 512);

/// Number of strict local maxima of a periodic sequence.
std::size_t count_local_maxima(const std::vector<double>& periodic);

/// Number of bright lobes of a periodic sequence: excursions above
/// max - hysteresis*range separated by dips below min + hysteresis*range.
std::size_t count_lobes(const std::vector<double>& periodic, double hysteresis = 0.25);

struct FringeOptions {
  std::optional<double> ring_radius;
  std::size_t samples = 512;
  PhaseConvention convention = PhaseConvention::NegativeExp;
};

struct FringeResult {
  ChargeEstimate estimate;
  int dominant_harmonic = 0;
  double dominance_ratio = 0.0;  // dominant / next-largest nonzero harmonic power
  bool sign_resolved = false;
};

/// Charge from a two-arm interferogram: |l| = h/2 for the dominant azimuthal
/// harmonic h on the brightest ring; the sign comes from the spiral twist
/// between two rings 10% of the peak radius apart, assuming eta > 0.
FringeResult fringe_analysis(const IntensityImage& img, const FringeOptions& opt = {});

ChargeEstimate fringe_charge(const IntensityImage& img, std::optional<double> ring_radius = std::nullopt);

struct RadialBin {
  double radius = 0.0;
  double mean_intensity = 0.0;
};

/// Azimuthal average over 1-pixel-wide annuli about the origin.
std::vector<RadialBin> radial_profile(const IntensityImage& img);
std::vector<RadialBin> radial_profile(const ComplexField& f);

}  // namespace vortexmix
