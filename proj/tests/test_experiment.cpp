#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "dwkb/experiment.hpp"
#include "test_helpers.hpp"

using namespace dwkb;
using namespace dwkb::testing;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("dwkb_test_" + tag);
  std::filesystem::remove_all(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("config parsing and overrides") {
  const std::string path = temp_dir("cfg") + ".cfg";
  {
    std::ofstream out(path);
    out << "# benchmark setup\n"
        << "phi_I = 1.0471975511965976\n"
        << "phi_II = 2.0943951023931953\n"
        << "N = 250\n"
        << "N_h = 100   # plateau length\n"
        << "methods = exact, oracle\n"
        << "format = json\n"
        << "ramp = phase\n";
  }
  ExperimentConfig cfg = parse_config_file(path);
  CHECK(cfg.cells == 250);
  CHECK(cfg.lead_cells == 100);
  CHECK(cfg.methods.size() == 2);
  CHECK(cfg.format == OutputFormat::Json);

  apply_config_entry(cfg, "N", "60");
  CHECK(cfg.cells == 60);
  CHECK_THROWS_AS(apply_config_entry(cfg, "bogus", "1"), ConfigError);
  CHECK_THROWS_AS(apply_config_entry(cfg, "N", "sixty"), ConfigError);
  CHECK_THROWS_AS(apply_config_entry(cfg, "methods", "exact,warp-drive"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("phi_I 1.0\n"), ConfigError);

  ExperimentConfig bad;
  bad.phi_in = 0.0;  // band edge
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ExperimentConfig{};
  bad.lead_cells = 125;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("benchmark run") {
  ExperimentConfig cfg;  // defaults are the benchmark parameters
  ComparisonReport rep = run_experiment(cfg);

  SUBCASE("reflection and transmission per method") {
    const MethodResult* exact = rep.find(Method::Exact);
    const MethodResult* oracle = rep.find(Method::Oracle);
    const MethodResult* ric = rep.find(Method::WkbRiccati);
    const MethodResult* dir = rep.find(Method::WkbDirect);
    REQUIRE(exact);
    REQUIRE(oracle);
    REQUIRE(ric);
    REQUIRE(dir);

    CHECK(std::abs(exact->R) < 1e-6);
    CHECK(std::abs(std::abs(exact->T) - 1.7316) < 5e-4);
    CHECK(std::abs(std::abs(exact->T) - std::sqrt(3.0)) < 1e-9);

    CHECK(ric->R == Complex{});
    CHECK(dir->R == Complex{});
    // regression values of the diagonal-variant products on this profile
    CHECK(std::abs(ric->T) == doctest::Approx(1.7373363).epsilon(1e-4));
    CHECK(std::abs(dir->T) == doctest::Approx(1.7326519).epsilon(1e-4));

    CHECK(std::abs(exact->R - oracle->R) < 1e-9);
    CHECK(std::abs(exact->T - oracle->T) < 1e-9 * std::abs(oracle->T));
  }

  SUBCASE("phase gap against the drift estimate") {
    CHECK(rep.phase_gap_prediction == doctest::Approx(kPi / 6.0).epsilon(1e-15));
    CHECK(std::abs(std::abs(rep.phase_gap_at_end) - kPi / 6.0) < 0.02);
    for (int k = 151; k <= cfg.cells; ++k)
      CHECK(std::abs(std::abs(rep.phase_gap[k]) - kPi / 6.0) < 0.02);
    CHECK(std::abs(std::abs(rep.delta_p) - kPi / 6.0) < 0.02 * (kPi / 6.0));
  }

  SUBCASE("amplitude agreement of the diagonal variants") {
    const MethodResult* exact = rep.find(Method::Exact);
    double peak = 0.0;
    for (int k = 1; k <= cfg.cells; ++k) peak = std::max(peak, exact->abs_y[k]);
    double worst = 0.0;
    for (int k = 1; k <= cfg.cells; ++k)
      worst = std::max({worst, std::abs(rep.d_abs_m1[k]), std::abs(rep.d_abs_m2[k])});
    CHECK(worst < 0.02 * peak);
  }

  SUBCASE("flux of the exact profile is conserved") {
    CHECK(rep.flux_defect < 1e-9);
  }

  SUBCASE("per-cell phase shift of the exact profile tracks the ramp") {
    const MethodResult* exact = rep.find(Method::Exact);
    for (int k = 1; k <= 95; ++k)
      CHECK(exact->phase_shift[k] == doctest::Approx(kPi / 3.0).epsilon(1e-6));
    for (int k = 155; k <= cfg.cells; ++k)
      CHECK(exact->phase_shift[k] == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-6));
  }
}

TEST_CASE("angle utilities") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> a(-50.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double x = a(rng);
    const double w = wrap_angle(x);
    CHECK(w > -kPi);
    CHECK(w <= kPi);
    CHECK(std::abs(std::remainder(x - w, 2.0 * kPi)) < 1e-9);
  }

  // unwrap keeps neighbouring args within pi of each other and preserves
  // each value modulo 2 pi
  std::vector<Complex> spiral(64);
  for (int i = 0; i < 64; ++i)
    spiral[static_cast<std::size_t>(i)] = std::polar(1.0 + 0.01 * i, 0.45 * i);
  RealSeries u = unwrap_args(ComplexSeries(0, spiral));
  for (int k = 0; k <= 63; ++k) {
    CHECK(std::abs(std::remainder(u[k] - 0.45 * k, 2.0 * kPi)) < 1e-12);
    if (k > 0) CHECK(std::abs(u[k] - u[k - 1]) < kPi);
  }
}

TEST_CASE("phase shift series") {
  std::vector<Complex> wave(30);
  for (int k = 0; k < 30; ++k) wave[static_cast<std::size_t>(k)] = std::polar(2.0, 0.85 * k);
  ComplexSeries y(1, wave);
  RealSeries s = phase_shift_series(y);
  for (int k = s.lo(); k <= s.hi(); ++k)
    CHECK(s[k] == doctest::Approx(0.85).epsilon(1e-12));

  std::vector<Complex> conj_wave(wave.size());
  for (std::size_t i = 0; i < wave.size(); ++i) conj_wave[i] = std::conj(wave[i]);
  RealSeries sc = phase_shift_series(ComplexSeries(1, conj_wave));
  for (int k = sc.lo(); k <= sc.hi(); ++k)
    CHECK(sc[k] == doctest::Approx(-0.85).epsilon(1e-12));

  std::vector<Complex> with_zero = {Complex(1.0, 0.0), Complex{}, Complex(1.0, 0.0)};
  CHECK_THROWS_AS(phase_shift_series(ComplexSeries(1, with_zero)), ZeroAmplitude);
}

TEST_CASE("baseline closure: exact compared against itself is the zero report") {
  ExperimentConfig cfg;
  cfg.methods = {Method::Exact};
  ComparisonReport base = run_experiment(cfg);
  std::vector<MethodResult> doubled = base.methods;
  MethodResult fake_ric = base.methods[0];
  fake_ric.method = Method::WkbRiccati;
  MethodResult fake_dir = base.methods[0];
  fake_dir.method = Method::WkbDirect;
  doubled.push_back(fake_ric);
  doubled.push_back(fake_dir);
  ComparisonReport rep = compare_methods(cfg, doubled);
  for (int k = 1; k <= cfg.cells; ++k) {
    CHECK(rep.d_abs_m1[k] == 0.0);
    CHECK(rep.d_phase_m1[k] == 0.0);
    CHECK(rep.phase_gap[k] == 0.0);
  }
}

TEST_CASE("missing baseline is reported") {
  ExperimentConfig cfg;
  cfg.methods = {Method::WkbRiccati};
  CHECK_THROWS_AS(run_experiment(cfg), MissingBaseline);
}

TEST_CASE("oracle equivalence on randomized passband ramps") {
  std::mt19937 rng(314);
  std::uniform_real_distribution<double> phase(0.5, 2.6);
  std::uniform_int_distribution<int> lead(4, 10), ramp(4, 40);
  for (int trial = 0; trial < 5; ++trial) {
    ExperimentConfig cfg;
    cfg.phi_in = phase(rng);
    cfg.phi_out = phase(rng);
    cfg.lead_cells = lead(rng);
    cfg.cells = 2 * cfg.lead_cells + ramp(rng);
    cfg.methods = {Method::Exact, Method::Oracle};
    ComparisonReport rep = run_experiment(cfg);
    const MethodResult* exact = rep.find(Method::Exact);
    const MethodResult* oracle = rep.find(Method::Oracle);
    CHECK(std::abs(exact->R - oracle->R) < 1e-9 * std::max(1.0, std::abs(oracle->R)));
    CHECK(std::abs(exact->T - oracle->T) < 1e-9 * std::max(1.0, std::abs(oracle->T)));
    CHECK(max_diff(exact->y, oracle->y, 1, cfg.cells) < 1e-9 * max_abs(oracle->y));
  }
}

TEST_CASE("emitted outputs") {
  ExperimentConfig cfg;
  cfg.cells = 60;
  cfg.lead_cells = 20;

  SUBCASE("deterministic bytes across reruns") {
    const std::string dir1 = temp_dir("emit1"), dir2 = temp_dir("emit2");
    std::vector<std::string> w1 = emit_outputs(run_experiment(cfg), cfg, dir1);
    std::vector<std::string> w2 = emit_outputs(run_experiment(cfg), cfg, dir2);
    REQUIRE(w1.size() == w2.size());
    for (std::size_t i = 0; i < w1.size(); ++i) CHECK(slurp(w1[i]) == slurp(w2[i]));
    // per-method series, comparison, summary
    CHECK(w1.size() == cfg.methods.size() + 2);
  }

  SUBCASE("series schema") {
    const std::string dir = temp_dir("emit3");
    emit_outputs(run_experiment(cfg), cfg, dir);
    const std::string exact_csv = slurp(dir + "/exact.csv");
    CHECK(exact_csv.rfind("k,abs_y,arg_y,phase_shift\n", 0) == 0);
    CHECK(std::count(exact_csv.begin(), exact_csv.end(), '\n') == cfg.cells + 1);
    const std::string cmp = slurp(dir + "/comparison.csv");
    CHECK(cmp.rfind("k,d_abs_m1,d_abs_m2,d_phase_m1,d_phase_m2\n", 0) == 0);

    const std::string summary = slurp(dir + "/summary.json");
    CHECK(summary.find("\"exact\"") != std::string::npos);
    CHECK(summary.find("\"phase_gap\"") != std::string::npos);
    CHECK(summary.find("\"flux_defect\"") != std::string::npos);
  }

  SUBCASE("summary carries the transmission magnitude") {
    ExperimentConfig bench;  // default benchmark parameters
    const std::string dir = temp_dir("emit4");
    emit_outputs(run_experiment(bench), bench, dir);
    const std::string summary = slurp(dir + "/summary.json");
    const auto pos = summary.find("\"exact\"");
    REQUIRE(pos != std::string::npos);
    const auto tpos = summary.find("\"T\"", pos);
    const auto apos = summary.find("\"abs\": 1.73", tpos);
    CHECK(apos != std::string::npos);  // |T| = 1.7320... for the exact method
  }

  SUBCASE("empty method set emits the summary only") {
    ExperimentConfig none = cfg;
    none.methods.clear();
    const std::string dir = temp_dir("emit5");
    std::vector<std::string> written = emit_outputs(run_experiment(none), none, dir);
    REQUIRE(written.size() == 1);
    const std::string summary = slurp(written[0]);
    CHECK(summary.find("\"N\": 60") != std::string::npos);
    CHECK(summary.find("\"exact\"") == std::string::npos);
  }

  SUBCASE("json series format") {
    ExperimentConfig jcfg = cfg;
    jcfg.format = OutputFormat::Json;
    jcfg.methods = {Method::Exact};
    const std::string dir = temp_dir("emit6");
    emit_outputs(run_experiment(jcfg), jcfg, dir);
    const std::string series = slurp(dir + "/exact.json");
    CHECK(series.find("\"abs_y\"") != std::string::npos);
    CHECK(series.find("\"phase_shift\"") != std::string::npos);
  }
}

TEST_CASE("auxiliary study text") {
  ExperimentConfig cfg;
  cfg.cells = 40;
  cfg.lead_cells = 10;

  const std::string disp = dispersion_csv(cfg);
  CHECK(disp.rfind("k,phi,u_bar,f1,f0,", 0) == 0);
  CHECK(std::count(disp.begin(), disp.end(), '\n') == cfg.cells + 1);

  const std::string ric = riccati_check_csv(cfg, 3, 32);
  CHECK(std::count(ric.begin(), ric.end(), '\n') == 4);
  CHECK(ric.find("ratio_riccati") != std::string::npos);

  const std::string geom = geometry_csv(cfg, 0.02, 4.0177, 3.0989, 0.4);
  CHECK(geom.rfind("k,a,b,d,t,", 0) == 0);
  CHECK(std::count(geom.begin(), geom.end(), '\n') == cfg.cells + 2 + 1);
}
