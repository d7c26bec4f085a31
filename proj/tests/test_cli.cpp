#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "steklov/config.hpp"
#include "steklov/report_io.hpp"
#include "test_support.hpp"

using steklov::CheckKind;
using steklov::ErrorCode;
using steklov::RunConfig;

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string error_message(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const steklov::Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal config fills every default") {
  const RunConfig c = steklov::parse_config(R"({"domain": {"disk": 1.0}})");
  CHECK(c.plan.resolution.n_rays == 256);
  CHECK(c.plan.resolution.n_radial == 64);
  CHECK(c.plan.resolution.grading == doctest::Approx(0.85));
  CHECK(c.plan.checks.size() == 8);
  CHECK(c.output_dir == "out");
  REQUIRE(c.plan.radius_schedule.size() == 4);
  CHECK(c.plan.radius_schedule[0] == doctest::Approx(0.2).epsilon(1e-15));

  const RunConfig e = steklov::parse_config(
      R"({"domain": {"ellipse": [1.2, 0.8333333333333334]}})");
  CHECK(e.plan.domain.rho(0.0) == doctest::Approx(1.2).epsilon(1e-12));

  const RunConfig s = steklov::parse_config(
      R"({"domain": {"star": {"c0": 1.0, "cos": [0.0, 0.0, 0.15], "sin": []}}})");
  CHECK(s.plan.domain.rho(0.0) == doctest::Approx(1.15).epsilon(1e-12));
}

TEST_CASE("unknown keys are rejected with context") {
  CHECK(error_message([] {
          steklov::parse_config(R"({"domain": {"disk": 1.0}, "bogus": 1})");
        }).find("bogus") != std::string::npos);
  CHECK(raised_code([] {
          steklov::parse_config(R"({"domain": {"disk": 1.0}, "bogus": 1})");
        }) == ErrorCode::ValidationError);
  CHECK(error_message([] {
          steklov::parse_config(
              R"({"domain": {"disk": 1.0}, "resolution": {"rays": 64}})");
        }).find("resolution.rays") != std::string::npos);
  CHECK(error_message([] {
          steklov::parse_config(
              R"({"domain": {"disk": 1.0}, "tolerances": {"magic": 2.0}})");
        }).find("tolerances.magic") != std::string::npos);
}

TEST_CASE("malformed input is a parse error") {
  CHECK(raised_code([] { steklov::parse_config("{"); }) == ErrorCode::ParseError);
  CHECK(raised_code([] { steklov::parse_config("[1, 2]"); }) ==
        ErrorCode::ParseError);
  CHECK(raised_code([] { steklov::parse_config(R"({"schedule": [0.1]})"); }) ==
        ErrorCode::ParseError);  // domain is required
  CHECK(raised_code([] {
          steklov::parse_config(R"({"domain": {"disk": "one"}})");
        }) == ErrorCode::ParseError);
}

TEST_CASE("invalid plans list every violation") {
  const std::string msg = error_message([] {
    steklov::parse_config(
        R"({"domain": {"disk": 1.0}, "schedule": [0.1, 0.2],
            "resolution": {"n_rays": 4}})");
  });
  CHECK(msg.find("decreas") != std::string::npos);
  CHECK(msg.find("n_rays") != std::string::npos);
}

TEST_CASE("serialization is canonical and round-trips") {
  const std::string text = R"({
    "domain": {"ellipse": [1.2, 0.8333333333333334]},
    "schedule": [0.2, 0.1, 0.05],
    "resolution": {"n_rays": 128, "n_radial": 32, "grading": 0.9},
    "checks": ["SHRINKING_HOLE", "NODAL"],
    "output_dir": "runs/e1"
  })";
  const std::string s1 = steklov::serialize_config(steklov::parse_config(text));
  const std::string s2 = steklov::serialize_config(steklov::parse_config(s1));
  CHECK(s1 == s2);
  CHECK(s1.find("\"domain\"") < s1.find("\"resolution\""));
  CHECK(s1.find("\"resolution\"") < s1.find("\"schedule\""));
  CHECK(s1.find("\"schedule\"") < s1.find("\"checks\""));
  CHECK(s1.find("\"checks\"") < s1.find("\"tolerances\""));
  CHECK(s1.find("\"tolerances\"") < s1.find("\"output_dir\""));

  const std::string minimal =
      steklov::serialize_config(steklov::parse_config(R"({"domain": {"disk": 2.0}})"));
  CHECK(minimal ==
        steklov::serialize_config(steklov::parse_config(minimal)));
}

TEST_CASE("mesh subcommand writes the perforated mesh") {
  RunConfig c = steklov::parse_config(R"({
    "domain": {"disk": 1.0}, "schedule": [0.5],
    "resolution": {"n_rays": 16, "n_radial": 4, "grading": 1.0},
    "output_dir": "cli_out_mesh"})");
  c.subcommand = steklov::Subcommand::MESH;
  CHECK(steklov::dispatch(c) == 0);
  const std::string text = slurp("cli_out_mesh/mesh.txt");
  CHECK(text.rfind("v ", 0) == 0);
  CHECK(text.find("\nt ") != std::string::npos);
  CHECK(text.find(" inner") != std::string::npos);
  CHECK(text.find(" outer") != std::string::npos);
}

TEST_CASE("shell subcommand tabulates closed forms") {
  RunConfig c = steklov::parse_config(R"({
    "domain": {"disk": 1.0}, "schedule": [0.5, 0.25],
    "output_dir": "cli_out_shell"})");
  c.subcommand = steklov::Subcommand::SHELL;
  CHECK(steklov::dispatch(c) == 0);
  const std::string csv = slurp("cli_out_shell/shell.csv");
  CHECK(csv.rfind("r,sigma1,sigma2,dsigma2_dr", 0) == 0);
  CHECK(csv.find("1.4426950408889") != std::string::npos);

  c.format = steklov::OutputFormat::JSON;
  CHECK(steklov::dispatch(c) == 0);
  const std::string js = slurp("cli_out_shell/shell.json");
  CHECK(js.find("\"sigma1\": 1.4426950408889634") != std::string::npos);
}

TEST_CASE("solve subcommand writes eigenpairs and fields") {
  RunConfig c = steklov::parse_config(R"({
    "domain": {"disk": 1.0}, "schedule": [0.5],
    "resolution": {"n_rays": 24, "n_radial": 6, "grading": 1.0},
    "output_dir": "cli_out_solve"})");
  c.subcommand = steklov::Subcommand::SOLVE;
  c.solve_count = 3;
  CHECK(steklov::dispatch(c) == 0);
  CHECK(fs::exists("cli_out_solve/eigenvalues.csv"));
  CHECK(fs::exists("cli_out_solve/mesh.txt"));
  for (int i = 1; i <= 3; ++i) {
    CHECK(fs::exists("cli_out_solve/field_" + std::to_string(i) + ".txt"));
  }
  const std::string csv = slurp("cli_out_solve/eigenvalues.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows
}

TEST_CASE("experiment subcommand writes reports and a summary") {
  RunConfig c = steklov::parse_config(R"({
    "domain": {"disk": 1.0}, "schedule": [0.2, 0.1],
    "checks": ["LEMMA33", "CORRECTOR"],
    "output_dir": "cli_out_exp/nested"})");
  c.subcommand = steklov::Subcommand::EXPERIMENT;
  CHECK(steklov::dispatch(c) == 0);
  CHECK(fs::exists("cli_out_exp/nested/report_corrector.csv"));
  CHECK(fs::exists("cli_out_exp/nested/report_lemma33.csv"));
  const std::string summary = slurp("cli_out_exp/nested/summary.json");
  CHECK(summary.find("\"all_pass\": true") != std::string::npos);
  CHECK(summary.find("\"lemma33\"") != std::string::npos);
}

TEST_CASE("a failing verdict exits with status two") {
  RunConfig c = steklov::parse_config(R"({
    "domain": {"disk": 1.0}, "schedule": [0.3],
    "resolution": {"n_rays": 16, "n_radial": 4, "grading": 1.0},
    "checks": ["FRIEDRICH"],
    "tolerances": {"domain_monotonicity_slack": 0.0},
    "output_dir": "cli_out_fail"})");
  c.subcommand = steklov::Subcommand::EXPERIMENT;
  CHECK(steklov::dispatch(c) == 2);
  const std::string summary = slurp("cli_out_fail/summary.json");
  CHECK(summary.find("\"all_pass\": false") != std::string::npos);
}

TEST_CASE("rendered mesh and operator text formats") {
  const steklov::Mesh m = steklov::build_polar_mesh(
      steklov::DomainSpec::disk(1.0, 0.5), 8, 2, 1.0);
  const std::string text = steklov::render_mesh_text(m);
  std::size_t v = 0, t = 0, e = 0;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("t ", 0) == 0) ++t;
    if (line.rfind("e ", 0) == 0) ++e;
  }
  CHECK(v == m.vertex_count());
  CHECK(t == m.triangle_count());
  CHECK(e == m.boundary_edges.size());

  const steklov::SymmetricOperator b =
      steklov::assemble_boundary_mass(m, steklov::BoundaryMarker::OUTER);
  const std::string op = steklov::render_operator_text(b);
  CHECK(std::count(op.begin(), op.end(), '\n') == long(b.entries.size()));

  // format_value round-trips doubles exactly.
  for (double x : {3.141592653589793, -1.0 / 3.0, 1e-17, 0.0, 12345.678}) {
    CHECK(std::strtod(steklov::format_value(x).c_str(), nullptr) == x);
  }
}
