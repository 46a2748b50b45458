// Command-line front end: lg, hologram, mix, interfere, analyze, run, sweep.
//
// Exit codes: 0 all checks pass, 1 physics mismatch or stage failure,
// 2 usage or configuration error.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <locale>
#include <numbers>
#include <sstream>
#include <string>

#include "vortexmix/analysis.hpp"
#include "vortexmix/error.hpp"
#include "vortexmix/field_io.hpp"
#include "vortexmix/hologram.hpp"
#include "vortexmix/image.hpp"
#include "vortexmix/interferometer.hpp"
#include "vortexmix/mixer.hpp"
#include "vortexmix/pipeline.hpp"

namespace fs = std::filesystem;
using namespace vortexmix;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
  std::string config;
  std::string out = ".";
  std::size_t grid = 0;
  std::optional<std::uint64_t> seed;
  std::string emit = "images,fields,csv,report";
};

KeyValueConfig overrides_from(const GlobalOptions& g) {
  KeyValueConfig kv;
  if (g.grid != 0) kv.set("grid_n", std::to_string(g.grid));
  if (g.seed) kv.set("seed", std::to_string(*g.seed));
  return kv;
}

ScenarioConfig scenario_from(const GlobalOptions& g, const std::string& positional, const std::string& fallback) {
  const std::string& name = !positional.empty() ? positional : (!g.config.empty() ? g.config : fallback);
  return load_scenario(name, overrides_from(g));
}

std::string format_estimate(const ChargeEstimate& e) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "charge=" << e.charge << " method=" << to_string(e.method) << " residual=" << e.residual;
  return os.str();
}

PhaseConvention parse_convention(const std::string& s) {
  if (s == "negative") return PhaseConvention::NegativeExp;
  if (s == "positive") return PhaseConvention::PositiveExp;
  throw Error(ErrorKind::Config, "convention must be negative or positive");
}

bool looks_like_pgm(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  char magic[2] = {};
  is.read(magic, 2);
  return is && magic[0] == 'P' && magic[1] == '5';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optical-vortex charge arithmetic through four-wave mixing"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--config", g.config, "Scenario preset name or key=value file")->capture_default_str();
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--grid", g.grid, "Grid samples per side (overrides the scenario)");
  app.add_option("--seed", g.seed, "Seed for noise injection");
  app.add_option("--emit", g.emit, "Comma list of images,fields,csv,report")->capture_default_str();

  // lg
  auto* lg_cmd = app.add_subcommand("lg", "Synthesise a Laguerre-Gaussian mode");
  int lg_l = 1, lg_p = 0;
  double lg_waist = 0.25e-3, lg_extent = 8.0, lg_amp = 1.0;
  std::string lg_conv = "negative";
  lg_cmd->add_option("-l,--charge", lg_l, "Topological charge")->capture_default_str();
  lg_cmd->add_option("-p,--radial", lg_p, "Radial index")->capture_default_str();
  lg_cmd->add_option("--waist", lg_waist, "Half-beam width w, m")->capture_default_str();
  lg_cmd->add_option("--extent-waists", lg_extent, "Grid extent in units of w")->capture_default_str();
  lg_cmd->add_option("--amplitude", lg_amp, "E0")->capture_default_str();
  lg_cmd->add_option("--convention", lg_conv, "negative (e^{-il phi}) or positive")->capture_default_str();

  // hologram
  auto* holo_cmd = app.add_subcommand("hologram", "Fork hologram mask and one extracted diffraction order");
  HologramSpec holo;
  double holo_waist = 0.25e-3, holo_extent = 8.0;
  int holo_order = 1;
  std::string holo_mode = "binary";
  double holo_half_width = 0.0;
  holo.period = 0.0;
  holo_cmd->add_option("--charge", holo.charge, "Embedded dislocation l_h")->capture_default_str();
  holo_cmd->add_option("--period", holo.period, "Grating period, m (default 16 pixels)");
  holo_cmd->add_option("--mode", holo_mode, "binary or sinusoidal")->capture_default_str();
  holo_cmd->add_option("--fill", holo.fill, "Binary threshold")->capture_default_str();
  holo_cmd->add_option("--offset-x", holo.offset_x, "Fork offset x, m");
  holo_cmd->add_option("--offset-y", holo.offset_y, "Fork offset y, m");
  holo_cmd->add_option("--order", holo_order, "Diffraction order to extract")->capture_default_str();
  holo_cmd->add_option("--half-width", holo_half_width, "Window half-width, cycles/m (default 0.4/period)");
  holo_cmd->add_option("--waist", holo_waist, "Illuminating Gaussian waist, m")->capture_default_str();
  holo_cmd->add_option("--extent-waists", holo_extent, "Grid extent in units of w")->capture_default_str();

  // mix
  auto* mix_cmd = app.add_subcommand("mix", "Build the three input beams and the FWM signal");
  std::string mix_scenario;
  mix_cmd->add_option("scenario", mix_scenario, "Preset name or config file (default: --config or fig3)");

  // interfere
  auto* int_cmd = app.add_subcommand("interfere", "Mach-Zehnder analyser interferogram of a field dump");
  std::string int_input;
  InterferometerConfig icfg;
  std::string int_block = "none", int_profile = "linear";
  int_cmd->add_option("input", int_input, "Field dump")->required();
  int_cmd->add_option("--eta", icfg.eta, "Divergence mismatch, rad/m")->capture_default_str();
  int_cmd->add_option("--phase", icfg.phase, "Arm phase offset, rad")->capture_default_str();
  int_cmd->add_option("--balance", icfg.arm_balance, "Arm amplitude ratio")->capture_default_str();
  int_cmd->add_option("--block", int_block, "none, reflected or direct")->capture_default_str();
  int_cmd->add_option("--profile", int_profile, "linear or quadratic")->capture_default_str();

  // analyze
  auto* an_cmd = app.add_subcommand("analyze", "Measure the charge of a field dump or PGM interferogram");
  std::string an_input, an_conv = "negative";
  std::optional<double> an_radius;
  an_cmd->add_option("input", an_input, "Field dump or P5 PGM")->required();
  an_cmd->add_option("--radius", an_radius, "Ring radius (m for fields, pixels for PGM)");
  an_cmd->add_option("--convention", an_conv, "negative or positive")->capture_default_str();

  // run
  auto* run_cmd = app.add_subcommand("run", "Run a full scenario and write its report");
  std::string run_scenario_name;
  run_cmd->add_option("scenario", run_scenario_name, "Preset name (fig2, fig3, gaussian) or config file");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Full-factorial charge conservation sweep");
  std::string lf = "-2:2", lb = "-2:2", lp = "-2:2", sweep_scenario;
  sweep_cmd->add_option("--lf", lf, "Forward pump charges a:b")->capture_default_str();
  sweep_cmd->add_option("--lb", lb, "Backward pump charges a:b")->capture_default_str();
  sweep_cmd->add_option("--lp", lp, "Probe charges a:b")->capture_default_str();
  sweep_cmd->add_option("scenario", sweep_scenario, "Base scenario (default: --config or fig3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    const EmitFlags emit = EmitFlags::parse(g.emit);
    const fs::path out(g.out);
    auto ensure_out = [&] { fs::create_directories(out); };

    if (*lg_cmd) {
      const GridSpec grid = grid_for_waist(lg_waist, g.grid != 0 ? g.grid : 512, lg_extent);
      const ComplexField f = synthesize_lg({lg_l, lg_p, lg_waist, lg_amp, parse_convention(lg_conv)}, grid);
      ensure_out();
      if (emit.fields) write_field(out / "lg.field", f);
      if (emit.images) write_pgm(out / "lg.pgm", intensity(f));
      WindingOptions wo;
      wo.convention = parse_convention(lg_conv);
      std::cout << format_estimate(winding_number_any(f, {lg_waist, 0.7 * lg_waist, 1.3 * lg_waist}, wo)) << '\n';
      return kExitPass;
    }

    if (*holo_cmd) {
      const GridSpec grid = grid_for_waist(holo_waist, g.grid != 0 ? g.grid : 512, holo_extent);
      if (holo.period <= 0.0) holo.period = 16.0 * grid.pitch;
      if (holo_mode == "binary") holo.mode = MaskMode::Binary;
      else if (holo_mode == "sinusoidal") holo.mode = MaskMode::Sinusoidal;
      else throw Error(ErrorKind::Config, "mode must be binary or sinusoidal");
      const ComplexField gaussian = synthesize_lg({0, 0, holo_waist, 1.0}, grid);
      const OrderWindow window{holo_order, holo_half_width};
      const ComplexField mask = fork_transmission(holo, grid);
      const ComplexField order = extract_order(gaussian, mask, holo.period, window);
      ensure_out();
      if (emit.images) write_pgm(out / "mask.pgm", intensity(mask));
      if (emit.fields) write_field(out / "order.field", order);
      std::cout << "efficiency=" << order_efficiency(gaussian, mask, holo.period, window) << '\n';
      std::cout << format_estimate(winding_number_any(order, {0.7 * holo_waist, holo_waist, 0.5 * holo_waist})) << '\n';
      return kExitPass;
    }

    if (*mix_cmd) {
      const ScenarioConfig sc = scenario_from(g, mix_scenario, "fig3");
      const MixingScenario ms = build_mixing(sc);
      const ComplexField signal = mix(ms);
      ensure_out();
      if (emit.fields) write_field(out / "signal.field", signal);
      if (emit.images) write_pgm(out / "signal_intensity.pgm", intensity(signal));
      WindingOptions wo;
      wo.convention = sc.convention;
      const auto est = winding_number_any(signal, {sc.signal_radius_waists * sc.beam_waist, 0.5 * sc.beam_waist}, wo);
      std::cout << format_estimate(est) << '\n';
      const int expected = charge_ledger(expected_beam_charge(sc, BeamRole::ForwardPump),
                                         expected_beam_charge(sc, BeamRole::BackwardPump),
                                         expected_beam_charge(sc, BeamRole::Probe));
      std::cout << "expected=" << expected << '\n';
      return est.charge == expected ? kExitPass : kExitMismatch;
    }

    if (*int_cmd) {
      const ComplexField f = read_field(fs::path(int_input));
      if (int_block == "none") icfg.blocked = BlockedArm::None;
      else if (int_block == "reflected") icfg.blocked = BlockedArm::Reflected;
      else if (int_block == "direct") icfg.blocked = BlockedArm::Direct;
      else throw Error(ErrorKind::Config, "block must be none, reflected or direct");
      if (int_profile == "linear") icfg.profile = MismatchProfile::Linear;
      else if (int_profile == "quadratic") icfg.profile = MismatchProfile::Quadratic;
      else throw Error(ErrorKind::Config, "profile must be linear or quadratic");

      const IntensityImage img = analyze(f, icfg);
      ensure_out();
      if (emit.images) write_pgm(out / "interferogram.pgm", img);
      if (emit.csv && icfg.blocked == BlockedArm::None) {
        try {
          const FringeResult fr = fringe_analysis(img);
          const RingSpectrum rs = ring_spectrum(img, fr.estimate.ring_radius);
          std::ofstream csv(out / "azimuthal_profile.csv", std::ios::binary);
          csv.imbue(std::locale::classic());
          csv.precision(17);
          csv << "angle_rad,intensity\n";
          for (std::size_t k = 0; k < rs.samples.size(); ++k) {
            csv << 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(rs.samples.size()) << ','
                << rs.samples[k] << '\n';
          }
          std::cout << format_estimate(fr.estimate) << '\n';
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::NoFringe) throw;
          std::cout << "no azimuthal fringes\n";
        }
      }
      return kExitPass;
    }

    if (*an_cmd) {
      const fs::path path(an_input);
      if (looks_like_pgm(path)) {
        FringeOptions fo;
        fo.ring_radius = an_radius;
        fo.convention = parse_convention(an_conv);
        std::cout << format_estimate(fringe_analysis(read_pgm(path), fo).estimate) << '\n';
      } else {
        const ComplexField f = read_field(path);
        WindingOptions wo;
        wo.convention = parse_convention(an_conv);
        double radius = 0.0;
        if (an_radius) {
          radius = *an_radius;
        } else {
          const auto profile = radial_profile(f);
          radius = std::max_element(profile.begin(), profile.end(), [](const RadialBin& a, const RadialBin& b) {
                     return a.mean_intensity < b.mean_intensity;
                   })->radius;
        }
        std::cout << format_estimate(winding_number(f, radius, wo)) << '\n';
      }
      return kExitPass;
    }

    if (*run_cmd) {
      RunConfig rc{scenario_from(g, run_scenario_name, "fig3"), out, emit};
      const RunReport report = run_scenario(rc);
      write_report(std::cout, report);
      return report.passed() ? kExitPass : kExitMismatch;
    }

    if (*sweep_cmd) {
      const ScenarioConfig base = scenario_from(g, sweep_scenario, "fig3");
      const auto rows = sweep(ChargeRange::parse(lf), ChargeRange::parse(lb), ChargeRange::parse(lp), base);
      std::size_t passed = 0;
      for (const auto& r : rows) passed += r.pass() ? 1 : 0;
      if (emit.csv) {
        ensure_out();
        std::ofstream csv(out / "sweep.csv", std::ios::binary);
        write_sweep_csv(csv, rows);
      }
      std::cout << "rows=" << rows.size() << " passed=" << passed << '\n';
      return passed == rows.size() ? kExitPass : kExitMismatch;
    }
  } catch (const Error& e) {
    std::cerr << "vortexmix: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Config:
      case ErrorKind::Io:
      case ErrorKind::Parameter: return kExitUsage;
      default: return kExitMismatch;
    }
  } catch (const std::exception& e) {
    std::cerr << "vortexmix: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
