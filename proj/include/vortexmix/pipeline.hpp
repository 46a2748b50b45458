#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vortexmix/analysis.hpp"
#include "vortexmix/config.hpp"
#include "vortexmix/field.hpp"
#include "vortexmix/hologram.hpp"
#include "vortexmix/interferometer.hpp"
#include "vortexmix/mixer.hpp"

namespace vortexmix {

enum class BeamSource { Hologram, Analytic };

struct BeamSetup {
  int charge = 0;  // fork dislocation, or l of the analytic mode
  int order = 1;   // diffraction order taken from the hologram
  double waist = 0.25e-3;
  double wavelength = 795e-9;
  Vec3 direction{0.0, 0.0, 1.0};
  double hologram_offset_x = 0.0;
  double hologram_offset_y = 0.0;
  bool mirror = false;  // one reflection before the cell
  double cell_offset_x = 0.0;  // transverse displacement inside the cell
  double cell_offset_y = 0.0;
};

struct ScenarioConfig {
  std::string name = "custom";
  std::size_t grid_n = 512;
  double grid_extent_waists = 8.0;
  double beam_waist = 0.25e-3;  // reference waist: sets the grid and the measuring rings
  BeamSource source = BeamSource::Hologram;

  BeamSetup forward;
  BeamSetup backward;
  BeamSetup probe;

  double hologram_period = 0.0;  // 0: 16 grid pixels
  MaskMode hologram_mode = MaskMode::Binary;
  double hologram_fill = 0.5;
  double window_half_width = 0.0;  // 0: 0.4 / period

  Complex chi3{1.0, 0.0};
  std::optional<double> observed_signal_wavelength;

  InterferometerConfig interferometer;
  PhaseConvention convention = PhaseConvention::NegativeExp;

  double noise = 0.0;  // additive uniform interferogram noise, fraction of peak
  std::uint64_t seed = 0;
  double signal_radius_waists = 0.7;

  [[nodiscard]] GridSpec grid() const;
  [[nodiscard]] double period() const;
};

ScenarioConfig scenario_from_config(const KeyValueConfig& kv);

/// Built-in preset text by name (fig2, fig3, gaussian), if any.
std::optional<std::string> preset_text(const std::string& name);
std::vector<std::string> preset_names();

/// Preset name or path to a `key = value` file; `overrides` are applied last.
ScenarioConfig load_scenario(const std::string& name_or_path, const KeyValueConfig& overrides = {});

struct EmitFlags {
  bool images = true;
  bool fields = true;
  bool csv = true;
  bool report = true;

  static EmitFlags parse(const std::string& comma_list);
};

struct RunConfig {
  ScenarioConfig scenario;
  std::filesystem::path out_dir;  // empty: write nothing
  EmitFlags emit;
};

struct StageCharge {
  std::string stage;
  int expected = 0;
  int measured = 0;
  double residual = 0.0;
  double ring_radius = 0.0;
  [[nodiscard]] bool pass() const { return expected == measured; }
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct RunReport {
  std::string scenario;
  GridSpec grid;
  std::vector<StageCharge> charges;  // forward, backward, probe, signal

  int expected_signal_charge = 0;
  int arm_count = 0;  // dominant azimuthal harmonic of the two-arm image (0: no fringes)
  std::size_t ring_maxima = 0;  // bright lobes on the peak ring
  double dominance_ratio = 0.0;
  int fringe_sign = 0;  // 0 when unresolved
  double fringe_residual = 0.0;
  double blocked_center_ratio = 0.0;
  double blocked_peak_radius = 0.0;

  MatchReport match;
  std::vector<StageTiming> timings;

  [[nodiscard]] bool charges_pass() const;
  [[nodiscard]] bool arm_count_pass() const { return arm_count == 2 * std::abs(expected_signal_charge); }
  [[nodiscard]] bool passed() const { return charges_pass() && arm_count_pass(); }
};

/// Products of the pipeline kept for inspection and tests.
struct PipelineFields {
  ComplexField forward;
  ComplexField backward;
  ComplexField probe;
  ComplexField signal;
  IntensityImage blocked;
  IntensityImage interferogram;
  ComplexField backward_mask;
  ComplexField probe_mask;
};

/// Input beams as they enter the cell.
BeamLine prepare_beam(const ScenarioConfig& sc, BeamRole role);
int expected_beam_charge(const ScenarioConfig& sc, BeamRole role);
MixingScenario build_mixing(const ScenarioConfig& sc);

RunReport run_scenario(const RunConfig& cfg, std::optional<PipelineFields>* keep = nullptr);

void write_report(std::ostream& os, const RunReport& r);

struct ChargeRange {
  int lo = 0;
  int hi = 0;
  static ChargeRange parse(const std::string& text);  // "a:b" or "a"
};

struct SweepRow {
  int l_forward = 0;
  int l_backward = 0;
  int l_probe = 0;
  int expected = 0;
  int measured = 0;
  double residual = 0.0;
  [[nodiscard]] bool pass() const { return expected == measured && residual < 1e-3; }
};

/// Full-factorial charge conservation check over the three ranges.
/// Charges are applied as hologram dislocations (or analytic l) on order +1.
std::vector<SweepRow> sweep(ChargeRange forward, ChargeRange backward, ChargeRange probe,
                            const ScenarioConfig& base);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace vortexmix
