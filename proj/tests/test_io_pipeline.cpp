#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "test_support.hpp"
#include "vortexmix/config.hpp"
#include "vortexmix/error.hpp"
#include "vortexmix/field_io.hpp"
#include "vortexmix/image.hpp"
#include "vortexmix/interferometer.hpp"
#include "vortexmix/pipeline.hpp"

using namespace vortexmix;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Parameter;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("vortexmix_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(FieldIo, RoundTripIsBitExact) {
  ComplexField f = testsupport::lg(3, 1, 64);
  f.values()[5] = Complex{std::numeric_limits<double>::denorm_min(), -0.1};
  f.values()[6] = Complex{1.0 / 3.0, -1e300};
  std::stringstream ss;
  write_field(ss, f);
  const ComplexField g = read_field(ss);
  EXPECT_EQ(g, f);
}

TEST(FieldIo, RejectsMalformedInput) {
  std::stringstream truncated("16 1e-5\n0 0\n1 2\n");
  EXPECT_EQ(kind_of([&] { read_field(truncated); }), ErrorKind::Io);
  std::stringstream junk("16 1e-5\nabc def\n");
  EXPECT_EQ(kind_of([&] { read_field(junk); }), ErrorKind::Io);
  EXPECT_EQ(kind_of([] { read_field(fs::path("/nonexistent/field.txt")); }), ErrorKind::Io);
}

TEST(Pgm, RoundTripKeepsQuantisedLevels) {
  InterferometerConfig c;
  c.eta = 25000.0;
  const IntensityImage img = analyze(testsupport::lg(2, 0, 128), c);
  std::stringstream ss;
  write_pgm(ss, img);
  const std::string bytes = ss.str();
  EXPECT_EQ(bytes.substr(0, 2), "P5");
  const IntensityImage back = read_pgm(ss);
  ASSERT_EQ(back.grid.n, img.grid.n);
  EXPECT_EQ(back.peak(), 255.0);
  for (std::size_t k = 0; k < img.values.size(); ++k) {
    EXPECT_EQ(back.values[k], std::round(255.0 * img.values[k] / img.peak()));
  }
}

TEST(Config, ParsesCommentsAndOverrides) {
  const auto kv = KeyValueConfig::parse("# header\n a = 1.5  # trailing\n\nb=true\nname = fig\na = 2\n");
  EXPECT_EQ(kv.get_double("a"), 2.0);
  EXPECT_EQ(kv.get_bool("b"), true);
  EXPECT_EQ(kv.get_string("name"), "fig");
  EXPECT_FALSE(kv.get_double("missing").has_value());
}

TEST(Config, ReportsMalformedLines) {
  EXPECT_EQ(kind_of([] { KeyValueConfig::parse("grid_n 512\n"); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { KeyValueConfig::parse(" = 3\n"); }), ErrorKind::Config);
  const auto kv = KeyValueConfig::parse("x = 1.0e\n");
  EXPECT_EQ(kind_of([&] { static_cast<void>(kv.get_double("x")); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { scenario_from_config(KeyValueConfig::parse("backward_charg = 1\n")); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { load_scenario("no_such_preset_or_file"); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { EmitFlags::parse("images,movies"); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { ChargeRange::parse("2:-2"); }), ErrorKind::Config);
}

TEST(Config, ChargeRangeAcceptsNegatives) {
  const ChargeRange r = ChargeRange::parse("-2:1");
  EXPECT_EQ(r.lo, -2);
  EXPECT_EQ(r.hi, 1);
  EXPECT_EQ(ChargeRange::parse("-3").hi, -3);
}

TEST(Presets, ShipFig2AndFig3) {
  const auto names = preset_names();
  EXPECT_NE(std::find(names.begin(), names.end(), "fig2"), names.end());
  EXPECT_NE(std::find(names.begin(), names.end(), "fig3"), names.end());
  const ScenarioConfig fig3 = load_scenario("fig3");
  EXPECT_EQ(fig3.backward.charge, 1);
  EXPECT_EQ(fig3.probe.charge, 1);
  EXPECT_TRUE(fig3.probe.mirror);
  EXPECT_EQ(expected_beam_charge(fig3, BeamRole::Probe), -1);
}

TEST(Pipeline, Fig2ReproducesTwoArmSpiral) {
  const RunReport r = run_scenario({load_scenario("fig2"), {}, {}});
  EXPECT_TRUE(r.charges_pass());
  EXPECT_EQ(r.expected_signal_charge, 1);
  EXPECT_EQ(r.arm_count, 2);
  EXPECT_EQ(r.ring_maxima, 2u);
  EXPECT_GT(r.dominance_ratio, 5.0);
  EXPECT_EQ(r.fringe_sign, 1);
  EXPECT_LT(r.blocked_center_ratio, 0.01);
  EXPECT_TRUE(r.passed());
}

TEST(Pipeline, Fig3ReproducesWindmill) {
  const RunReport r = run_scenario({load_scenario("fig3"), {}, {}});
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.charges.back().measured, 2);
  EXPECT_EQ(r.arm_count, 4);
  EXPECT_GT(r.dominance_ratio, 5.0);
  EXPECT_EQ(r.match.signal_wavelength, 780e-9);
}

TEST(Pipeline, GaussianGivesNoFringes) {
  const RunReport r = run_scenario({load_scenario("gaussian"), {}, {}});
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.charges.back().measured, 0);
  EXPECT_EQ(r.arm_count, 0);
}

TEST(Pipeline, OverridesApplyOnTopOfPreset) {
  KeyValueConfig kv;
  kv.set("backward_charge", "3");
  kv.set("grid_n", "256");
  const ScenarioConfig sc = load_scenario("fig2", kv);
  EXPECT_EQ(sc.grid_n, 256u);
  const RunReport r = run_scenario({sc, {}, {}});
  EXPECT_EQ(r.charges.back().measured, 3);
  EXPECT_EQ(r.arm_count, 6);
}

TEST(Pipeline, SweepWithChargeThreeBackwardPump) {
  ScenarioConfig base = load_scenario("fig2");
  base.grid_n = 256;
  const auto rows = sweep({-1, 1}, {3, 3}, {0, 0}, base);
  ASSERT_EQ(rows.size(), 3u);
  for (const SweepRow& row : rows) {
    EXPECT_EQ(row.expected, row.l_forward + 3);
    EXPECT_TRUE(row.pass()) << row.l_forward;
  }
  std::stringstream ss;
  write_sweep_csv(ss, rows);
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "l_forward,l_backward,l_probe,expected,measured,residual,pass");
}

TEST(Pipeline, RepeatedRunsAreBitIdentical) {
  ScenarioConfig sc = load_scenario("fig3");
  sc.noise = 0.05;
  sc.seed = 11;
  std::optional<PipelineFields> a, b;
  run_scenario({sc, {}, {}}, &a);
  run_scenario({sc, {}, {}}, &b);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->signal, b->signal);
  EXPECT_EQ(a->interferogram, b->interferogram);
  EXPECT_EQ(a->blocked, b->blocked);
  sc.seed = 12;
  std::optional<PipelineFields> c;
  run_scenario({sc, {}, {}}, &c);
  EXPECT_NE(a->interferogram, c->interferogram);
}

TEST(Pipeline, WritesRequestedArtifacts) {
  const fs::path dir = scratch_dir("artifacts");
  ScenarioConfig sc = load_scenario("fig2");
  sc.grid_n = 256;
  run_scenario({sc, dir, EmitFlags::parse("images,report")});
  EXPECT_TRUE(fs::exists(dir / "interferogram.pgm"));
  EXPECT_TRUE(fs::exists(dir / "blocked.pgm"));
  EXPECT_TRUE(fs::exists(dir / "report.txt"));
  EXPECT_FALSE(fs::exists(dir / "signal.field"));
  EXPECT_FALSE(fs::exists(dir / "radial_profile.csv"));

  std::ifstream report(dir / "report.txt");
  std::stringstream text;
  text << report.rdbuf();
  EXPECT_NE(text.str().find("fig2"), std::string::npos);
  fs::remove_all(dir);
}
