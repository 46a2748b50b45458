#include "vortexmix/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <locale>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "vortexmix/error.hpp"
#include "vortexmix/field_io.hpp"
#include "vortexmix/image.hpp"

namespace vortexmix {

namespace detail {
const std::map<std::string, std::string>& builtin_presets();
}

namespace {

using Clock = std::chrono::steady_clock;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  os.imbue(std::locale::classic());
  os << std::setprecision(17);
  return os;
}

Vec3 tilted_z(double angle, double z_sign) { return {std::sin(angle), 0.0, z_sign * std::cos(angle)}; }

const BeamSetup& setup_for(const ScenarioConfig& sc, BeamRole role) {
  switch (role) {
    case BeamRole::ForwardPump: return sc.forward;
    case BeamRole::BackwardPump: return sc.backward;
    case BeamRole::Probe: return sc.probe;
  }
  return sc.forward;
}

BeamSetup& setup_for(ScenarioConfig& sc, BeamRole role) {
  return const_cast<BeamSetup&>(setup_for(std::as_const(sc), role));
}

bool uses_hologram(const ScenarioConfig& sc, BeamRole role) {
  if (sc.source != BeamSource::Hologram) return false;
  // The forward pump has no hologram in the bench setup; one is inserted only
  // when it is asked to carry a charge.
  return role != BeamRole::ForwardPump || sc.forward.charge != 0;
}

HologramSpec hologram_for(const ScenarioConfig& sc, const BeamSetup& b) {
  HologramSpec h;
  h.charge = b.charge;
  h.period = sc.period();
  h.offset_x = b.hologram_offset_x;
  h.offset_y = b.hologram_offset_y;
  h.mode = sc.hologram_mode;
  h.fill = sc.hologram_fill;
  return h;
}

double measuring_radius(const ScenarioConfig& sc, double waist) { return sc.signal_radius_waists * waist; }

std::vector<double> fallback_radii(double r) { return {r, 0.7 * r, 1.4 * r, 0.45 * r, 2.0 * r}; }

struct Stopwatch {
  std::vector<StageTiming>& sink;
  std::string stage;
  Clock::time_point start = Clock::now();
  ~Stopwatch() { sink.push_back({stage, std::chrono::duration<double>(Clock::now() - start).count()}); }
};

MaskMode parse_mask_mode(const std::string& s) {
  if (s == "binary") return MaskMode::Binary;
  if (s == "sinusoidal") return MaskMode::Sinusoidal;
  throw Error(ErrorKind::Config, "hologram_mode must be binary or sinusoidal, got '" + s + "'");
}

}  // namespace

GridSpec ScenarioConfig::grid() const { return grid_for_waist(beam_waist, grid_n, grid_extent_waists); }

double ScenarioConfig::period() const { return hologram_period > 0.0 ? hologram_period : 16.0 * grid().pitch; }

ScenarioConfig scenario_from_config(const KeyValueConfig& kv) {
  ScenarioConfig sc;
  sc.forward.wavelength = 795e-9;
  sc.forward.waist = 0.5e-3;
  sc.backward.wavelength = 780e-9;
  sc.probe.wavelength = 795e-9;

  std::set<std::string> used;
  auto str = [&](const std::string& k) {
    used.insert(k);
    return kv.get_string(k);
  };
  auto num = [&](const std::string& k, double& dst) {
    used.insert(k);
    if (auto v = kv.get_double(k)) dst = *v;
  };
  auto integer = [&](const std::string& k, int& dst) {
    used.insert(k);
    if (auto v = kv.get_int(k)) dst = static_cast<int>(*v);
  };
  auto flag = [&](const std::string& k, bool& dst) {
    used.insert(k);
    if (auto v = kv.get_bool(k)) dst = *v;
  };

  if (auto v = str("name")) sc.name = *v;
  used.insert("grid_n");
  if (auto v = kv.get_int("grid_n")) {
    if (*v < 16) throw Error(ErrorKind::Config, "grid_n must be at least 16");
    sc.grid_n = static_cast<std::size_t>(*v);
  }
  num("grid_extent_waists", sc.grid_extent_waists);
  num("beam_waist", sc.beam_waist);
  sc.backward.waist = sc.beam_waist;
  sc.probe.waist = sc.beam_waist;
  if (auto v = str("beam_source")) {
    if (*v == "hologram") sc.source = BeamSource::Hologram;
    else if (*v == "analytic") sc.source = BeamSource::Analytic;
    else throw Error(ErrorKind::Config, "beam_source must be hologram or analytic");
  }

  for (auto [prefix, beam] : {std::pair<std::string, BeamSetup*>{"forward_", &sc.forward},
                              {"backward_", &sc.backward},
                              {"probe_", &sc.probe}}) {
    num(prefix + "waist", beam->waist);
    num(prefix + "wavelength", beam->wavelength);
    integer(prefix + "charge", beam->charge);
    integer(prefix + "order", beam->order);
    num(prefix + "hologram_offset_x", beam->hologram_offset_x);
    num(prefix + "hologram_offset_y", beam->hologram_offset_y);
    flag(prefix + "mirror", beam->mirror);
    num(prefix + "offset_x", beam->cell_offset_x);
    num(prefix + "offset_y", beam->cell_offset_y);
  }

  // Geometry: forward pump along +z, backward pump along -z (optionally
  // tilted), probe tilted off the forward pump in the xz plane.
  double probe_angle = 0.010;
  double backward_tilt = 0.0;
  num("probe_angle", probe_angle);
  num("backward_tilt", backward_tilt);
  sc.forward.direction = {0.0, 0.0, 1.0};
  sc.backward.direction = tilted_z(backward_tilt, -1.0);
  sc.probe.direction = tilted_z(probe_angle, 1.0);

  num("hologram_period", sc.hologram_period);
  if (auto v = str("hologram_mode")) sc.hologram_mode = parse_mask_mode(*v);
  num("hologram_fill", sc.hologram_fill);
  num("window_half_width", sc.window_half_width);

  double chi_re = sc.chi3.real(), chi_im = sc.chi3.imag();
  num("chi3_re", chi_re);
  num("chi3_im", chi_im);
  sc.chi3 = {chi_re, chi_im};
  used.insert("observed_signal_wavelength");
  if (auto v = kv.get_double("observed_signal_wavelength")) sc.observed_signal_wavelength = *v;

  num("interferometer_eta", sc.interferometer.eta);
  num("interferometer_phase", sc.interferometer.phase);
  num("interferometer_arm_balance", sc.interferometer.arm_balance);
  if (auto v = str("interferometer_profile")) {
    if (*v == "linear") sc.interferometer.profile = MismatchProfile::Linear;
    else if (*v == "quadratic") sc.interferometer.profile = MismatchProfile::Quadratic;
    else throw Error(ErrorKind::Config, "interferometer_profile must be linear or quadratic");
  }
  if (auto v = str("interferometer_mirror")) {
    if (*v == "horizontal") sc.interferometer.mirror = MirrorAxis::Horizontal;
    else if (*v == "vertical") sc.interferometer.mirror = MirrorAxis::Vertical;
    else throw Error(ErrorKind::Config, "interferometer_mirror must be horizontal or vertical");
  }
  if (auto v = str("phase_convention")) {
    if (*v == "negative") sc.convention = PhaseConvention::NegativeExp;
    else if (*v == "positive") sc.convention = PhaseConvention::PositiveExp;
    else throw Error(ErrorKind::Config, "phase_convention must be negative or positive");
  }

  num("noise", sc.noise);
  used.insert("seed");
  if (auto v = kv.get_u64("seed")) sc.seed = *v;
  num("signal_radius_waists", sc.signal_radius_waists);

  for (const auto& [k, v] : kv.entries()) {
    if (!used.contains(k)) throw Error(ErrorKind::Config, "unknown key '" + k + "'");
  }
  if (sc.noise < 0.0) throw Error(ErrorKind::Config, "noise must be non-negative");
  try {
    static_cast<void>(sc.grid());
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, e.what());
  }
  return sc;
}

std::optional<std::string> preset_text(const std::string& name) {
  const auto& presets = detail::builtin_presets();
  auto it = presets.find(name);
  if (it == presets.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : detail::builtin_presets()) names.push_back(k);
  return names;
}

ScenarioConfig load_scenario(const std::string& name_or_path, const KeyValueConfig& overrides) {
  std::string text;
  if (auto preset = preset_text(name_or_path)) {
    text = *preset;
  } else if (std::filesystem::is_regular_file(name_or_path)) {
    std::ifstream is(name_or_path, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    text = ss.str();
  } else {
    throw Error(ErrorKind::Config, "scenario '" + name_or_path + "' is neither a preset nor a readable file");
  }
  KeyValueConfig kv = KeyValueConfig::parse(text);
  kv.merge(overrides);
  return scenario_from_config(kv);
}

EmitFlags EmitFlags::parse(const std::string& comma_list) {
  EmitFlags f{false, false, false, false};
  std::stringstream ss(comma_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "images") f.images = true;
    else if (item == "fields") f.fields = true;
    else if (item == "csv") f.csv = true;
    else if (item == "report") f.report = true;
    else if (item == "all") f = EmitFlags{};
    else if (!item.empty()) throw Error(ErrorKind::Config, "unknown emit flag '" + item + "'");
  }
  return f;
}

bool RunReport::charges_pass() const {
  return std::all_of(charges.begin(), charges.end(), [](const StageCharge& c) { return c.pass(); });
}

BeamLine prepare_beam(const ScenarioConfig& sc, BeamRole role) {
  const BeamSetup& b = setup_for(sc, role);
  const GridSpec grid = sc.grid();

  ComplexField field(grid);
  if (sc.source == BeamSource::Analytic) {
    field = synthesize_lg({b.order * b.charge, 0, b.waist, 1.0, sc.convention}, grid);
  } else {
    const ComplexField gaussian = synthesize_lg({0, 0, b.waist, 1.0, sc.convention}, grid);
    if (uses_hologram(sc, role)) {
      HologramSpec h = hologram_for(sc, b);
      // Under the e^{+il phi} convention the same physical fork is described
      // by the opposite dislocation sign.
      h.charge *= -azimuthal_sign(sc.convention);
      OrderWindow w{b.order, sc.window_half_width};
      field = diffract_and_extract(gaussian, h, w);
    } else {
      field = gaussian;
    }
  }
  if (b.mirror) field = reflect(field, MirrorAxis::Vertical);
  if (b.cell_offset_x != 0.0 || b.cell_offset_y != 0.0) {
    field = translate(field, std::lround(b.cell_offset_x / grid.pitch), std::lround(b.cell_offset_y / grid.pitch));
  }
  return BeamLine{std::move(field), b.wavelength, b.direction, role};
}

int expected_beam_charge(const ScenarioConfig& sc, BeamRole role) {
  const BeamSetup& b = setup_for(sc, role);
  int l = b.order * b.charge;
  if (uses_hologram(sc, role)) {
    // A fork outside the measuring ring contributes nothing to the winding.
    if (std::hypot(b.hologram_offset_x, b.hologram_offset_y) >= measuring_radius(sc, b.waist)) l = 0;
  }
  return b.mirror ? -l : l;
}

MixingScenario build_mixing(const ScenarioConfig& sc) {
  return MixingScenario{prepare_beam(sc, BeamRole::ForwardPump), prepare_beam(sc, BeamRole::BackwardPump),
                        prepare_beam(sc, BeamRole::Probe), sc.chi3, sc.observed_signal_wavelength};
}

RunReport run_scenario(const RunConfig& cfg, std::optional<PipelineFields>* keep) {
  const ScenarioConfig& sc = cfg.scenario;
  RunReport report;
  report.scenario = sc.name;
  report.grid = sc.grid();
  const WindingOptions wopt{512, 1e-6, sc.convention};

  MixingScenario ms = [&] {
    Stopwatch sw{report.timings, "beams"};
    return build_mixing(sc);
  }();

  {
    Stopwatch sw{report.timings, "beam_charges"};
    for (const BeamLine* beam : {&ms.forward, &ms.backward, &ms.probe}) {
      const double r = measuring_radius(sc, setup_for(sc, beam->role).waist);
      const ChargeEstimate est = winding_number_any(beam->field, fallback_radii(r), wopt);
      report.charges.push_back({std::string(to_string(beam->role)), expected_beam_charge(sc, beam->role), est.charge,
                                est.residual, est.ring_radius});
    }
  }

  ComplexField signal = [&] {
    Stopwatch sw{report.timings, "mix"};
    return mix(ms);
  }();
  report.expected_signal_charge = charge_ledger(report.charges[0].expected, report.charges[1].expected,
                                                report.charges[2].expected);
  {
    Stopwatch sw{report.timings, "signal_charge"};
    const ChargeEstimate est = winding_number_any(signal, fallback_radii(measuring_radius(sc, sc.beam_waist)), wopt);
    report.charges.push_back({"signal", report.expected_signal_charge, est.charge, est.residual, est.ring_radius});
  }
  {
    Stopwatch sw{report.timings, "phase_match"};
    report.match = phase_match(ms, normalized({-ms.probe.direction[0], -ms.probe.direction[1], -ms.probe.direction[2]}));
  }

  IntensityImage blocked, both;
  {
    Stopwatch sw{report.timings, "interferometer"};
    InterferometerConfig ic = sc.interferometer;
    ic.blocked = BlockedArm::Reflected;
    blocked = analyze(signal, ic);
    ic.blocked = BlockedArm::None;
    both = analyze(signal, ic);
    if (sc.noise > 0.0) {
      std::mt19937_64 rng(sc.seed);
      std::uniform_real_distribution<double> dist(0.0, sc.noise * both.peak());
      for (auto& v : both.values) v += dist(rng);
    }
  }

  std::vector<RadialBin> blocked_profile;
  std::optional<RingSpectrum> peak_ring;
  {
    Stopwatch sw{report.timings, "fringe_analysis"};
    blocked_profile = radial_profile(blocked);
    const double peak = blocked.peak();
    const std::size_t n = blocked.grid.n;
    const double center = 0.25 * (blocked.at(n / 2 - 1, n / 2 - 1) + blocked.at(n / 2 - 1, n / 2) +
                                  blocked.at(n / 2, n / 2 - 1) + blocked.at(n / 2, n / 2));
    report.blocked_center_ratio = peak > 0.0 ? center / peak : 0.0;
    report.blocked_peak_radius =
        std::max_element(blocked_profile.begin(), blocked_profile.end(),
                         [](const RadialBin& a, const RadialBin& b) { return a.mean_intensity < b.mean_intensity; })
            ->radius;

    FringeOptions fopt;
    fopt.convention = sc.convention;
    try {
      const FringeResult fr = fringe_analysis(both, fopt);
      report.arm_count = fr.dominant_harmonic;
      report.dominance_ratio = fr.dominance_ratio;
      report.fringe_sign = fr.sign_resolved ? (fr.estimate.charge > 0 ? 1 : -1) : 0;
      report.fringe_residual = fr.estimate.residual;
      peak_ring = ring_spectrum(both, fr.estimate.ring_radius);
      report.ring_maxima = count_lobes(peak_ring->samples);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NoFringe) {
        report.arm_count = 0;
      } else if (e.kind() == ErrorKind::InconsistentInterferogram) {
        report.arm_count = -1;
      } else {
        throw;
      }
    }
  }

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto& dir = cfg.out_dir;
    if (cfg.emit.images) {
      write_pgm(dir / "blocked.pgm", blocked);
      write_pgm(dir / "interferogram.pgm", both);
      write_pgm(dir / "signal_intensity.pgm", intensity(signal));
      if (uses_hologram(sc, BeamRole::BackwardPump)) {
        write_pgm(dir / "backward_mask.pgm", intensity(fork_transmission(hologram_for(sc, sc.backward), report.grid)));
      }
      if (uses_hologram(sc, BeamRole::Probe)) {
        write_pgm(dir / "probe_mask.pgm", intensity(fork_transmission(hologram_for(sc, sc.probe), report.grid)));
      }
    }
    if (cfg.emit.fields) {
      write_field(dir / "forward.field", ms.forward.field);
      write_field(dir / "backward.field", ms.backward.field);
      write_field(dir / "probe.field", ms.probe.field);
      write_field(dir / "signal.field", signal);
    }
    if (cfg.emit.csv) {
      auto radial = open_out(dir / "radial_profile.csv");
      radial << "radius_m,mean_intensity\n";
      for (const auto& b : blocked_profile) radial << b.radius << ',' << b.mean_intensity << '\n';
      auto az = open_out(dir / "azimuthal_profile.csv");
      az << "angle_rad,intensity\n";
      if (peak_ring) {
        const std::size_t m = peak_ring->samples.size();
        for (std::size_t k = 0; k < m; ++k) {
          az << 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m) << ','
             << peak_ring->samples[k] << '\n';
        }
      }
    }
    if (cfg.emit.report) {
      auto os = open_out(dir / "report.txt");
      write_report(os, report);
      auto ts = open_out(dir / "timings.txt");
      ts << std::setprecision(6);
      for (const auto& t : report.timings) ts << t.stage << " = " << t.seconds << " s\n";
    }
  }

  if (keep != nullptr) {
    keep->emplace(PipelineFields{ms.forward.field, ms.backward.field, ms.probe.field, signal, blocked, both,
                                 fork_transmission(hologram_for(sc, sc.backward), report.grid),
                                 fork_transmission(hologram_for(sc, sc.probe), report.grid)});
  }
  return report;
}

void write_report(std::ostream& out, const RunReport& r) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(10);
  os << "scenario = " << r.scenario << '\n';
  os << "grid_n = " << r.grid.n << '\n';
  os << "grid_pitch_m = " << r.grid.pitch << '\n';
  for (const auto& c : r.charges) {
    os << "charge." << c.stage << " = expected " << c.expected << " measured " << c.measured << " residual "
       << c.residual << " ring_m " << c.ring_radius << ' ' << (c.pass() ? "PASS" : "FAIL") << '\n';
  }
  os << "arm_count = expected " << 2 * std::abs(r.expected_signal_charge) << " measured " << r.arm_count << ' '
     << (r.arm_count_pass() ? "PASS" : "FAIL") << '\n';
  os << "ring_lobes = " << r.ring_maxima << '\n';
  os << "harmonic_dominance_ratio = " << r.dominance_ratio << '\n';
  os << "fringe_sign = " << r.fringe_sign << '\n';
  os << "fringe_residual = " << r.fringe_residual << '\n';
  os << "blocked_center_ratio = " << r.blocked_center_ratio << '\n';
  os << "blocked_peak_radius_m = " << r.blocked_peak_radius << '\n';
  os << "signal_wavelength_m = " << r.match.signal_wavelength << '\n';
  os << "k_residual_per_m = " << r.match.k_residual << '\n';
  os << "omega_residual = " << r.match.omega_residual << '\n';
  os << "signal_direction = " << r.match.signal_direction[0] << ' ' << r.match.signal_direction[1] << ' '
     << r.match.signal_direction[2] << '\n';
  os << "result = " << (r.passed() ? "PASS" : "FAIL") << '\n';
  out << os.str();
}

ChargeRange ChargeRange::parse(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::Config, "bad charge range '" + text + "'");
    }
  };
  const auto colon = text.find(':');
  ChargeRange r;
  if (colon == std::string::npos) {
    r.lo = r.hi = to_int(text);
  } else {
    r.lo = to_int(text.substr(0, colon));
    r.hi = to_int(text.substr(colon + 1));
  }
  if (r.lo > r.hi) throw Error(ErrorKind::Config, "empty charge range '" + text + "'");
  return r;
}

std::vector<SweepRow> sweep(ChargeRange forward, ChargeRange backward, ChargeRange probe, const ScenarioConfig& base) {
  ScenarioConfig sc = base;
  for (BeamSetup* b : {&sc.forward, &sc.backward, &sc.probe}) {
    b->order = 1;
    b->mirror = false;
  }
  const WindingOptions wopt{512, 1e-6, sc.convention};

  std::map<std::pair<BeamRole, int>, BeamLine> cache;
  auto beam = [&](BeamRole role, int l) -> const BeamLine& {
    auto key = std::make_pair(role, l);
    auto it = cache.find(key);
    if (it == cache.end()) {
      ScenarioConfig one = sc;
      setup_for(one, role).charge = l;
      it = cache.emplace(key, prepare_beam(one, role)).first;
    }
    return it->second;
  };

  std::vector<SweepRow> rows;
  const auto radii = fallback_radii(measuring_radius(sc, sc.beam_waist));
  for (int lf = forward.lo; lf <= forward.hi; ++lf) {
    for (int lb = backward.lo; lb <= backward.hi; ++lb) {
      for (int lp = probe.lo; lp <= probe.hi; ++lp) {
        MixingScenario ms{beam(BeamRole::ForwardPump, lf), beam(BeamRole::BackwardPump, lb),
                          beam(BeamRole::Probe, lp), sc.chi3, std::nullopt};
        const ChargeEstimate est = winding_number_any(mix(ms), radii, wopt);
        rows.push_back({lf, lb, lp, charge_ledger(lf, lb, lp), est.charge, est.residual});
      }
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(6);
  os << "l_forward,l_backward,l_probe,expected,measured,residual,pass\n";
  for (const auto& r : rows) {
    os << r.l_forward << ',' << r.l_backward << ',' << r.l_probe << ',' << r.expected << ',' << r.measured << ','
       << r.residual << ',' << (r.pass() ? "true" : "false") << '\n';
  }
  out << os.str();
}

}  // namespace vortexmix
