#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "modkit/cli.hpp"
#include "modkit/suites.hpp"

using namespace modkit;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "modkit_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

Report sample_report() {
  Report r;
  r.command = "standard";
  r.input = {{"dim", 3}, {"note", "x"}};
  r.checks.push_back(make_check("g", "tiny", 1.0 / 3.0 * 1e-13, 1e-9, "identity"));
  r.checks.push_back(make_check("g", "exact", 0.1, 0.1, "closed-form"));
  r.checks.push_back(make_flag("h", "flag", false, "oracle"));
  r.artifacts = {"a.json"};
  r.seed = std::numeric_limits<std::uint64_t>::max();
  r.wall_time = 0.123456789012345678;
  r.timings["phase"] = 1.5;
  r.series = {{"s", "N", {{128, 2.0 / 3.0}, {256, 1e-300}}}};
  r.data["m"] = matrix_to_json(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(2, 2)));
  return r;
}

}  // namespace

TEST_CASE("matrix encoding") {
  Eigen::MatrixXcd m(2, 3);
  m << std::complex<double>(1, 2), 0.1, std::complex<double>(0, -1), 3, std::complex<double>(1e-17, 5), -2;
  const Json j = matrix_to_json(m);
  CHECK(j.size() == 2);
  CHECK(j[0].size() == 3);
  CHECK(j[0][0] == Json::array({1.0, 2.0}));
  CHECK(j[1][2] == Json::array({-2.0, 0.0}));
  CHECK(complex_matrix_from_json(j) == m);
  CHECK(complex_matrix_from_json(Json::parse(j.dump())) == m);

  Eigen::MatrixXd r(2, 2);
  r << 1, 2, 3, 4;
  CHECK(matrix_to_json(r)[0] == Json::array({1.0, 2.0}));
  CHECK(real_matrix_from_json(matrix_to_json(r)) == r);
  CHECK_THROWS_AS(real_matrix_from_json(Json::parse("[[1,2],[3]]")), Error);

  const RLOperatord j_op = RLOperatord::conjugation(2);
  const RLOperatord back = rl_operator_from_json(to_json(j_op));
  CHECK(back.linearity() == Linearity::Antilinear);
  CHECK(back.matrix() == j_op.matrix());
}

TEST_CASE("check invariant") {
  CHECK(make_check("g", "a", 1e-10, 1e-9, "identity").passed);
  CHECK(make_check("g", "b", 1e-9, 1e-9, "identity").passed);
  CHECK_FALSE(make_check("g", "c", 2e-9, 1e-9, "identity").passed);
  const Check nan = make_check("g", "d", std::numeric_limits<double>::quiet_NaN(), 1.0, "identity");
  CHECK_FALSE(nan.passed);
  CHECK(std::isfinite(nan.residual));
  CHECK_FALSE(make_check("g", "e", std::numeric_limits<double>::infinity(), 1.0, "identity").passed);
  CHECK(make_flag("g", "f", true, "oracle").passed);
  CHECK_FALSE(make_flag("g", "f", false, "oracle").passed);
}

TEST_CASE("report round trip is bit-identical") {
  const Report r = sample_report();
  const std::string text = serialize(r);
  const Report back = deserialize(text);
  CHECK(serialize(back) == text);
  CHECK(back.seed == r.seed);
  CHECK(back.wall_time == r.wall_time);
  CHECK(back.checks[0].residual == r.checks[0].residual);
  CHECK(back.series[0].points[0].second == r.series[0].points[0].second);
  CHECK_FALSE(back.all_passed());
  CHECK(back.groups() == std::vector<std::string>{"g", "h"});

  Json tampered = Json::parse(text);
  tampered["checks"][0]["passed"] = false;
  CHECK_THROWS_AS(report_from_json(tampered), Error);
  CHECK_THROWS_AS(deserialize("{not json"), Error);
  CHECK_THROWS_AS(deserialize("{}"), Error);
}

TEST_CASE("plot output") {
  const Series one{"single", "N", {{1.0, 1e-3}}};
  const std::string svg = render_plot({one});
  CHECK(count(svg, "<circle") == 1);
  CHECK(count(svg, "<polyline") == 0);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(render_plot({one}) == svg);

  CHECK_THROWS_AS(render_plot({}), Error);
  CHECK_THROWS_AS(render_plot({Series{"empty", "N", {}}}), Error);
  CHECK_THROWS_AS(emit_plot({}, scratch("never.svg").string()), Error);
  CHECK_THROWS_AS(emit_plot({one}, "/nonexistent-dir/x.svg"), Error);

  const Series curve{"c", "N", {{1, 1e-2}, {2, 1e-4}, {3, 1e-8}}};
  const fs::path p = scratch("curve.svg");
  emit_plot({curve}, p.string());
  CHECK(slurp(p) == render_plot({curve}));
  CHECK(count(slurp(p), "<circle") == 3);
}

TEST_CASE("affine suite series decrease") {
  SuiteOptions o;
  const Report r = run_suite("affine", o);
  REQUIRE(r.series.size() == 3);
  for (const auto& s : r.series) {
    REQUIRE(s.points.size() == 4);
    for (std::size_t k = 1; k < s.points.size(); ++k) {
      CHECK(s.points[k].first > s.points[k - 1].first);
      CHECK(s.points[k].second < s.points[k - 1].second);
    }
  }
  CHECK(r.all_passed());
}

TEST_CASE("suite options") {
  SuiteOptions o;
  CHECK_THROWS_AS(run_suite("nope", o), Error);
  o.preset = "nope";
  CHECK_THROWS_AS(run_suite("group", o), Error);
  o.preset = "q8xz2";
  const Report g = run_suite("group", o);
  CHECK(g.all_passed());
  for (const auto& grp : g.groups()) CHECK(grp.find("dihedral3") == std::string::npos);

  SuiteOptions s;
  s.dim = 4;
  s.trials = 50;
  s.seed = 7;
  const Report a = run_suite("standard", s), b = run_suite("standard", s);
  CHECK(a.all_passed());
  CHECK(a.groups().size() >= 6);
  CHECK(fingerprint(a) == fingerprint(b));
  Report c = a;
  c.wall_time += 1.0;
  c.timings["x"] = 2.0;
  CHECK(fingerprint(c) == fingerprint(a));
  s.seed = 8;
  CHECK(fingerprint(run_suite("standard", s)) != fingerprint(a));

  s.seed = 7;
  s.tol = 0.0;
  const Report strict = run_suite("standard", s);
  CHECK_FALSE(strict.all_passed());
  for (const auto& c : strict.checks) CHECK(c.tolerance == 0.0);
}

TEST_CASE("command line") {
  std::ostringstream out, err;
  const fs::path report = scratch("standard.json");
  fs::remove(report);
  CHECK(run_cli({"standard", "--dim", "4", "--trials", "50", "--seed", "7", "--out", report.string()}, out, err) ==
        kExitPassed);
  const Report r = deserialize(slurp(report));
  CHECK(r.command == "standard");
  CHECK(r.seed == 7);
  CHECK(r.input["dim"] == 4);
  CHECK(r.all_passed());
  CHECK(r.artifacts == std::vector<std::string>{report.string()});

  fs::remove(report);
  CHECK(run_cli({"standard", "--trials", "5", "--tol", "0", "--out", report.string()}, out, err) ==
        kExitCheckFailure);
  CHECK(fs::exists(report));
  CHECK_FALSE(deserialize(slurp(report)).all_passed());

  CHECK(run_cli({}, out, err) == kExitUsage);
  CHECK(run_cli({"bogus"}, out, err) == kExitUsage);
  CHECK(run_cli({"standard", "--dim", "0"}, out, err) == kExitUsage);
  CHECK(run_cli({"standard", "--trials", "two"}, out, err) == kExitUsage);
  CHECK(run_cli({"standard", "--unknown"}, out, err) == kExitUsage);
  CHECK(run_cli({"group", "--preset", "nonsense"}, out, err) == kExitUsage);
  CHECK(run_cli({"group", "--plot", scratch("g.svg").string()}, out, err) == kExitUsage);

  const fs::path plot = scratch("affine.svg");
  fs::remove(plot);
  std::ostringstream json_out;
  // below the calibrated resolution: inclusion and MI2 miss the single-grid tolerance
  CHECK(run_cli({"affine", "--grid-n", "128", "--grid-l", "3", "--plot", plot.string()}, json_out, err) ==
        kExitCheckFailure);
  CHECK(fs::exists(plot));
  const Report printed = deserialize(json_out.str());
  CHECK(printed.artifacts == std::vector<std::string>{plot.string()});
  CHECK(printed.input["grid_n"] == 128);
}
