// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vortexmix/analysis.hpp"
#include "vortexmix/error.hpp"
#include "vortexmix/field.hpp"
#include "vortexmix/hologram.hpp"
#include "vortexmix/interferometer.hpp"
#include "vortexmix/mixer.hpp"
#include "vortexmix/pipeline.hpp"

#ifndef VORTEXMIX_CLI_PATH
#error "VORTEXMIX_CLI_PATH must point at the vortexmix executable"
#endif

using namespace vortexmix;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const double kWaist = 0.25e-3;
GridSpec grid() { return grid_for_waist(kWaist, 512, 8.0); }
ComplexField lg(int l) { return synthesize_lg({l, 0, kWaist, 1.0}, grid()); }

Outcome charge_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = sweep({-2, 2}, {-2, 2}, {-2, 2}, load_scenario("fig2"));
  const double elapsed = seconds_since(t0);
  std::size_t ok = 0;
  double worst = 0.0;
  for (const SweepRow& r : rows) {
    ok += r.pass() ? 1 : 0;
    worst = std::max(worst, r.residual);
  }
  return {rows.size() == 125 && ok == rows.size() && elapsed < 120.0,
          fmt("%zu/%zu cases exact, max residual %.2e, %.1f s", ok, rows.size(), worst, elapsed)};
}

Outcome fig2() {
  const RunReport r = run_scenario({load_scenario("fig2"), {}, {}});
  const bool annular = r.blocked_peak_radius > 0.0;
  const bool pass = annular && r.blocked_center_ratio < 0.01 && r.arm_count == 2 && r.dominance_ratio > 5.0;
  return {pass, fmt("centre/peak %.2e, peak ring r=%.3g m, dominant harmonic %d, ratio %.1f", r.blocked_center_ratio,
                    r.blocked_peak_radius, r.arm_count, r.dominance_ratio)};
}

Outcome fig3() {
  const RunReport r = run_scenario({load_scenario("fig3"), {}, {}});
  const int signal = r.charges.back().measured;
  return {signal == 2 && r.arm_count == 4,
          fmt("signal charge %+d, dominant harmonic %d, ratio %.1f", signal, r.arm_count, r.dominance_ratio)};
}

Outcome hologram_law() {
  const ComplexField g = lg(0);
  const double period = 16.0 * g.grid().pitch;
  const std::vector<double> radii{0.7 * kWaist, 0.5 * kWaist, kWaist};
  int ok = 0, total = 0;
  for (int lh = -2; lh <= 2; ++lh) {
    for (int m : {-1, 0, 1}) {
      HologramSpec s;
      s.charge = lh;
      s.period = period;
      const ComplexField out = diffract_and_extract(g, s, OrderWindow::for_period(m, period));
      ok += winding_number_any(out, radii).charge == m * lh ? 1 : 0;
      ++total;
    }
  }
  HologramSpec moved;
  moved.charge = 1;
  moved.period = period;
  moved.offset_x = 3.0 * kWaist;
  const int off = winding_number_any(diffract_and_extract(g, moved, OrderWindow::for_period(1, period)), radii).charge;
  return {ok == total && off == 0, fmt("%d/%d order charges equal m*l_h, offset fork gives %d", ok, total, off)};
}

Outcome binary_efficiency() {
  const double ideal = oracle::first_order_power([](double p) { return std::cos(p) >= 0.0 ? 1.0 : 0.0; });
  const ComplexField g = lg(0);
  HologramSpec s;
  s.period = 16.0 * g.grid().pitch;
  const double eta = diffraction_efficiency(s, OrderWindow::for_period(1, s.period), g);
  const double rel = std::abs(eta - ideal) / ideal;
  return {rel <= 0.05, fmt("efficiency %.5f vs %.5f, relative error %.2f%%", eta, ideal, 100.0 * rel)};
}

Outcome antisymmetry() {
  int ok = 0;
  for (int l = -5; l <= 5; ++l) {
    const ComplexField f = lg(l);
    const int w = winding_number(f, kWaist).charge;
    const bool good = w == l && winding_number(reflect(f, MirrorAxis::Horizontal), kWaist).charge == -w &&
                      winding_number(reflect(f, MirrorAxis::Vertical), kWaist).charge == -w &&
                      winding_number(conjugate(f), kWaist).charge == -w;
    ok += good ? 1 : 0;
  }
  return {ok == 11, fmt("%d/11 charges flip under reflection and conjugation", ok)};
}

Outcome rotation_law() {
  InterferometerConfig c;
  c.eta = 25000.0;
  double worst = 0.0;
  for (int l : {1, 2}) {
    c.phase = 0.0;
    const IntensityImage base = analyze(lg(l), c);
    c.phase = kPi / 2.0;
    const IntensityImage shifted = analyze(lg(l), c);
    const IntensityImage turned = rotate(base, -kPi / (4.0 * l));
    double err = 0.0;
    for (std::size_t k = 0; k < base.values.size(); ++k) err += std::abs(shifted.values[k] - turned.values[k]);
    err /= static_cast<double>(base.values.size()) * shifted.peak();
    worst = std::max(worst, err);
  }
  return {worst < 0.01, fmt("worst mean |error| %.3f%% of peak", 100.0 * worst)};
}

Outcome bookkeeping() {
  const ScenarioConfig sc = load_scenario("fig3");
  const Vec3 against_probe{-sc.probe.direction[0], -sc.probe.direction[1], -sc.probe.direction[2]};
  const MatchReport m = phase_match(sc.forward.wavelength, sc.forward.direction, sc.backward.wavelength,
                                    sc.backward.direction, sc.probe.wavelength, sc.probe.direction, against_probe);
  const double angle = angle_between(m.signal_direction, against_probe);
  const bool wavelength_ok = m.signal_wavelength == 780e-9;
  return {wavelength_ok && angle <= 1e-9,
          fmt("signal wavelength %.12g m (%s), angle to -probe %.4e rad (bound 1e-9)", m.signal_wavelength,
              wavelength_ok ? "bitwise equal to 780 nm" : "not 780 nm", angle)};
}

std::uint64_t fnv1a(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::uint64_t h = 1469598103934665603ull;
  char c;
  while (is.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::map<std::string, std::uint64_t> run_and_hash(const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cmd = std::string("\"") + VORTEXMIX_CLI_PATH + "\" --out \"" + dir.string() + "\" run fig3 > \"" +
                          (dir.string() + ".log") + "\" 2>&1";
  if (std::system(cmd.c_str()) != 0) throw std::runtime_error("run fig3 failed, see " + dir.string() + ".log");
  std::map<std::string, std::uint64_t> hashes;
  for (const auto& e : fs::directory_iterator(dir)) {
    // Wall-clock timings are the only intentionally variable output.
    if (e.path().filename() == "timings.txt") continue;
    hashes[e.path().filename().string()] = fnv1a(e.path());
  }
  return hashes;
}

Outcome determinism() {
  const fs::path base = fs::temp_directory_path() / "vortexmix_acceptance";
  const auto a = run_and_hash(base / "a");
  const auto b = run_and_hash(base / "b");
  std::size_t same = 0;
  for (const auto& [name, h] : a) same += (b.contains(name) && b.at(name) == h) ? 1 : 0;
  const bool pass = !a.empty() && a.size() == b.size() && same == a.size();
  if (pass) fs::remove_all(base);
  return {pass, fmt("%zu/%zu artifacts hash-identical across two runs", same, a.size())};
}

}  // namespace

int main() {
  report(1, "charge conservation sweep", charge_sweep);
  report(2, "fig2 doughnut and two-arm spiral", fig2);
  report(3, "fig3 charge-2 windmill", fig3);
  report(4, "hologram charge law", hologram_law);
  report(5, "binary first-order efficiency", binary_efficiency);
  report(6, "reflection and conjugation antisymmetry", antisymmetry);
  report(7, "interferogram rotation law", rotation_law);
  report(8, "energy and direction bookkeeping", bookkeeping);
  report(9, "determinism of run fig3", determinism);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
