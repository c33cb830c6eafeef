#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "nagumo/experiments.hpp"
#include "nagumo/random_field.hpp"

using namespace nagumo;

namespace {

const char* kBaseConfig =
    "# reference configuration\n"
    "p = 3\n"
    "gamma = 1\n"
    "alpha = 0.2\n"
    "beta = 0.7\n"
    "m = 3\n"
    "pd_terms = 1:0.1\n"
    "s = 2\n"
    "j_min = -6\n"
    "j_max = 6\n"
    "dt = 0.001\n"
    "t_end = 0.01\n"
    "save_every = 2\n"
    "tail_depth = 25\n"
    "blowup_threshold = 1e6\n"
    "method = euler-kochubei\n"
    "initial = gauss:4:100\n"
    "weight_r = 0\n"
    "out_dir = /tmp/nagumo_io_test\n";

std::string replace_line(const std::string& text, const std::string& key, const std::string& line) {
  std::string out;
  std::stringstream ss(text);
  std::string cur;
  while (std::getline(ss, cur)) {
    if (cur.rfind(key + " ", 0) == 0 || cur.rfind(key + "=", 0) == 0) {
      if (!line.empty()) out += line + "\n";
    } else {
      out += cur + "\n";
    }
  }
  return out;
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig cfg = parse_config(kBaseConfig);
  CHECK(cfg.params.p.value() == 3);
  CHECK(cfg.params.beta == 0.7);
  CHECK(cfg.params.pd.terms().size() == 1);
  CHECK(cfg.params.pd.terms()[0].exponent == 0.1);
  CHECK(cfg.params.reaction_enabled);
  CHECK(cfg.solver.method == Method::EulerKochubei);
  CHECK(cfg.weight_r == 0);
  CHECK(cfg.png_scale == 8);

  const RadialField f0 = cfg.build_initial();
  CHECK(f0.j_min() == -6);
  CHECK(f0.value_at_shell(0) == doctest::Approx(4.0 * std::exp(-0.03 / 3.0)).epsilon(1e-12));
}

TEST_CASE("config errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_config(replace_line(kBaseConfig, "alpha", "alpha = -1")),
                       doctest::Contains("alpha"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(std::string(kBaseConfig) + "mystery = 1\n"),
                       doctest::Contains("unknown key"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(std::string(kBaseConfig) + "p = 5\n"),
                       doctest::Contains("duplicate"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(replace_line(kBaseConfig, "dt", "")),
                       doctest::Contains("missing key"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(replace_line(kBaseConfig, "dt", "dt = abc")),
                       doctest::Contains("line"), ConfigError);
  CHECK_THROWS_AS(parse_config(replace_line(kBaseConfig, "method", "method = rk4")), ConfigError);
  CHECK_THROWS_AS(parse_config(replace_line(kBaseConfig, "initial", "initial = blob:1")), ConfigError);
  CHECK_THROWS_AS(parse_config(replace_line(kBaseConfig, "weight_r", "weight_r = 2")), ConfigError);
  CHECK_NOTHROW(parse_config(replace_line(kBaseConfig, "pd_terms", "pd_terms =")));
}

TEST_CASE("config echo normalizes and round-trips") {
  const RunConfig cfg = parse_config(kBaseConfig);
  const nlohmann::json echo = nlohmann::json::parse(cfg.echo_json());
  CHECK(echo["p"] == 3);
  CHECK(echo["method"] == "euler-kochubei");
  CHECK(echo["reaction"] == "on");
  CHECK(echo["pd_terms"][0]["exponent"] == 0.1);

  // One normalization pass is idempotent: parse . to_text is a fixed point.
  const std::string once = cfg.to_text();
  const std::string twice = parse_config(once).to_text();
  CHECK(once == twice);
  const RunConfig back = parse_config(once);
  CHECK(back.params.beta == cfg.params.beta);
  CHECK(back.solver.dt == cfg.solver.dt);
  CHECK(back.initial == cfg.initial);
}

TEST_CASE("ball initial datum") {
  const RunConfig cfg = parse_config(replace_line(kBaseConfig, "initial", "initial = ball:0"));
  const RadialField f0 = cfg.build_initial();
  CHECK(f0.value_at_shell(0) == 1.0);
  CHECK(f0.value_at_shell(1) == 0.0);
  CHECK(f0.value_at_shell(-3) == 1.0);
  CHECK_THROWS_AS(parse_config(replace_line(kBaseConfig, "initial", "initial = ball:9")), ConfigError);
}

TEST_CASE("csv round trip is bit exact") {
  HeatMap map;
  map.ord_axis = {-2, -1, 0, 1, 2};
  map.time_axis = {0.1, 0.2, 0.3};
  Rng rng(77);
  map.values.assign(5, std::vector<double>(3, 0.0));
  for (auto& row : map.values) {
    for (double& v : row) v = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform_int(-8, 8));
  }
  const std::string path = "/tmp/nagumo_csv_roundtrip.csv";
  export_csv(map, path);
  const auto parsed = parse_csv_matrix(path);
  REQUIRE(parsed.size() == 5);
  for (std::size_t r = 0; r < 5; ++r) {
    REQUIRE(parsed[r].size() == 3);
    for (std::size_t c = 0; c < 3; ++c) CHECK(parsed[r][c] == map.values[r][c]);
  }
  std::remove(path.c_str());
}

TEST_CASE("png export") {
  HeatMap map;
  map.ord_axis = {0, 1};
  map.time_axis = {0.0, 1.0, 2.0};
  map.values = {{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
  const std::string path = "/tmp/nagumo_png_test.png";
  export_png(map, path, 1.0, 4);
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  unsigned char sig[8];
  in.read(reinterpret_cast<char*>(sig), 8);
  CHECK(sig[0] == 0x89);
  CHECK(sig[1] == 'P');
  CHECK(sig[2] == 'N');
  CHECK(sig[3] == 'G');
  // A constant-zero map compresses to a small all-black image.
  in.seekg(0, std::ios::end);
  CHECK(in.tellg() > 50);
  std::remove(path.c_str());
  CHECK_THROWS_AS(export_png(map, path, 1.0, 0), std::invalid_argument);
}

TEST_CASE("simulation pipeline writes all artifacts") {
  const std::string dir = "/tmp/nagumo_io_test";
  std::filesystem::remove_all(dir);
  const RunConfig cfg = parse_config(kBaseConfig);
  const SimulationOutput out = run_simulation(cfg);
  CHECK(std::filesystem::exists(dir + "/heatmap.csv"));
  CHECK(std::filesystem::exists(dir + "/heatmap.png"));
  CHECK(std::filesystem::exists(dir + "/summary.json"));

  // Heat map geometry: rows span ord in [-j_max, -j_min].
  CHECK(out.heatmap.ord_axis.front() == -6);
  CHECK(out.heatmap.ord_axis.back() == 6);
  const auto matrix = parse_csv_matrix(dir + "/heatmap.csv");
  CHECK(matrix.size() == 13);
  CHECK(matrix.front().size() == out.heatmap.time_axis.size());

  std::ifstream in(dir + "/summary.json");
  nlohmann::json summary;
  in >> summary;
  for (const char* key : {"times", "sup_norm", "l2_norm", "hs_norm", "mass", "G_value", "blowup", "error_budget",
                          "params", "comparison_ode"}) {
    CHECK(summary.contains(key));
  }
  CHECK(summary["params"]["p"] == 3);
  // Numbers survive the JSON round trip bit-exactly.
  REQUIRE(summary["sup_norm"].size() == out.trajectory.sup_norm.size());
  for (std::size_t i = 0; i < out.trajectory.sup_norm.size(); ++i) {
    CHECK(summary["sup_norm"][i].get<double>() == out.trajectory.sup_norm[i]);
    CHECK(summary["mass"][i].get<double>() == out.trajectory.mass[i]);
    CHECK(summary["hs_norm"][i].get<double>() == out.trajectory.hs_norm[i]);
  }
  CHECK(summary["error_budget"].get<double>() == out.trajectory.error_budget);
  std::filesystem::remove_all(dir);
}

TEST_CASE("picard method through the config pipeline") {
  std::string text = replace_line(kBaseConfig, "method", "method = picard");
  text = replace_line(text, "out_dir", "out_dir = /tmp/nagumo_picard_out");
  const RunConfig cfg = parse_config(text);
  const SimulationOutput out = run_simulation(cfg);
  REQUIRE(out.trajectory.times.size() > 2);
  CHECK(out.trajectory.sup_norm.back() > 0.0);
  // G values are recomputed from the saved frames with the configured weight.
  CHECK(std::isfinite(out.trajectory.g_value.back()));
  std::filesystem::remove_all("/tmp/nagumo_picard_out");
}

TEST_CASE("p = 2 runs without the odd-prime weight") {
  std::string text = replace_line(kBaseConfig, "p", "p = 2");
  text = replace_line(text, "out_dir", "out_dir = /tmp/nagumo_p2_out");
  const RunConfig cfg = parse_config(text);
  const SimulationOutput out = run_simulation(cfg);
  CHECK(!out.ode.has_value());
  CHECK(std::isnan(out.trajectory.g_value.back()));
  std::ifstream in("/tmp/nagumo_p2_out/summary.json");
  nlohmann::json summary;
  in >> summary;
  CHECK(summary["G_value"].back().is_null());
  CHECK(summary["comparison_ode"].is_null());
  std::filesystem::remove_all("/tmp/nagumo_p2_out");
}

TEST_CASE("unwritable paths raise errors") {
  HeatMap map;
  map.ord_axis = {0};
  map.time_axis = {0.0};
  map.values = {{1.0}};
  CHECK_THROWS_AS(export_csv(map, "/proc/nagumo_nonexistent_dir/x.csv"), std::runtime_error);
  CHECK_THROWS_AS(export_png(map, "/proc/nagumo_nonexistent_dir/x.png", 1.0, 1), std::runtime_error);
}

TEST_CASE("heatmap rows map ord to the reflected shell") {
  Trajectory traj;
  const RadialField f = RadialField::from_profile(Prime(3), -2, 2, [](int j) { return static_cast<double>(j); });
  traj.times = {0.0, 0.5};
  traj.snapshots = {f, f};
  traj.sup_norm = {0, 0};
  traj.l2_norm = {0, 0};
  traj.hs_norm = {0, 0};
  traj.mass = {0, 0};
  traj.g_value = {0, 0};
  const HeatMap map = build_heatmap(traj, -2, 2);
  // One column (the t = 0 frame is dropped when later frames exist).
  REQUIRE(map.time_axis.size() == 1);
  REQUIRE(map.ord_axis.size() == 5);
  // Row ord = -2 shows the sphere j = 2; ord = 2 shows the inner ball value.
  CHECK(map.values.front().front() == 2.0);
  CHECK(map.values.back().front() == -2.0);
}
