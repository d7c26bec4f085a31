#include "steklov/config.hpp"

#include <cmath>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "steklov/discretize.hpp"
#include "steklov/eigensolve.hpp"
#include "steklov/errors.hpp"

namespace steklov {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& allowed,
                         std::vector<std::string>& bad) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      bad.push_back("unknown key \"" + where + item.key() + "\"");
    }
  }
}

double require_number(const json& v, const std::string& where) {
  if (!v.is_number()) {
    raise(ErrorCode::ParseError, "config: \"" + where + "\" must be a number");
  }
  return v.get<double>();
}

int require_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) {
    raise(ErrorCode::ParseError, "config: \"" + where + "\" must be an integer");
  }
  return v.get<int>();
}

DomainSpec parse_domain(const json& dom, std::vector<std::string>& bad) {
  if (!dom.is_object() || dom.size() != 1) {
    raise(ErrorCode::ParseError,
          "config: \"domain\" must be an object with exactly one of "
          "\"disk\", \"ellipse\", \"star\"");
  }
  if (dom.contains("disk")) {
    return DomainSpec::disk(require_number(dom["disk"], "domain.disk"));
  }
  if (dom.contains("ellipse")) {
    const json& e = dom["ellipse"];
    if (!e.is_array() || e.size() != 2) {
      raise(ErrorCode::ParseError,
            "config: \"domain.ellipse\" must be [a, b]");
    }
    return DomainSpec::ellipse(require_number(e[0], "domain.ellipse[0]"),
                               require_number(e[1], "domain.ellipse[1]"));
  }
  if (dom.contains("star")) {
    const json& s = dom["star"];
    if (!s.is_object()) {
      raise(ErrorCode::ParseError, "config: \"domain.star\" must be an object");
    }
    reject_unknown_keys(s, "domain.star.", {"c0", "cos", "sin"}, bad);
    if (!s.contains("c0")) {
      raise(ErrorCode::ParseError, "config: \"domain.star\" needs \"c0\"");
    }
    const auto coefs = [&](const char* key) {
      std::vector<double> out;
      if (!s.contains(key)) return out;
      const json& arr = s[key];
      if (!arr.is_array()) {
        raise(ErrorCode::ParseError,
              std::string("config: \"domain.star.") + key + "\" must be an array");
      }
      for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(require_number(
            arr[i], std::string("domain.star.") + key + "[" + std::to_string(i) + "]"));
      }
      return out;
    };
    return DomainSpec::star_shaped(require_number(s["c0"], "domain.star.c0"),
                                   coefs("cos"), coefs("sin"));
  }
  raise(ErrorCode::ParseError,
        "config: \"domain\" must hold \"disk\", \"ellipse\", or \"star\"");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::ParseError, std::string("config: ") + e.what());
  }
  if (!root.is_object()) {
    raise(ErrorCode::ParseError, "config: top level must be an object");
  }

  std::vector<std::string> bad;
  reject_unknown_keys(root, "",
                      {"domain", "resolution", "schedule", "checks",
                       "tolerances", "output_dir"},
                      bad);

  RunConfig config;
  if (!root.contains("domain")) {
    raise(ErrorCode::ParseError, "config: \"domain\" is required");
  }
  config.plan.domain = parse_domain(root["domain"], bad);

  if (root.contains("resolution")) {
    const json& res = root["resolution"];
    if (!res.is_object()) {
      raise(ErrorCode::ParseError, "config: \"resolution\" must be an object");
    }
    reject_unknown_keys(res, "resolution.", {"n_rays", "n_radial", "grading"}, bad);
    if (res.contains("n_rays")) {
      config.plan.resolution.n_rays = require_int(res["n_rays"], "resolution.n_rays");
    }
    if (res.contains("n_radial")) {
      config.plan.resolution.n_radial =
          require_int(res["n_radial"], "resolution.n_radial");
    }
    if (res.contains("grading")) {
      config.plan.resolution.grading =
          require_number(res["grading"], "resolution.grading");
    }
  }

  if (root.contains("schedule")) {
    const json& sched = root["schedule"];
    if (!sched.is_array() || sched.empty()) {
      raise(ErrorCode::ParseError, "config: \"schedule\" must be a nonempty array");
    }
    for (std::size_t i = 0; i < sched.size(); ++i) {
      config.plan.radius_schedule.push_back(
          require_number(sched[i], "schedule[" + std::to_string(i) + "]"));
    }
  }

  if (root.contains("checks")) {
    const json& checks = root["checks"];
    if (!checks.is_array()) {
      raise(ErrorCode::ParseError, "config: \"checks\" must be an array");
    }
    for (const json& c : checks) {
      if (!c.is_string()) {
        raise(ErrorCode::ParseError, "config: check names must be strings");
      }
      const auto kind = parse_check_kind(c.get<std::string>());
      if (!kind) {
        bad.push_back("unknown check \"" + c.get<std::string>() + "\"");
        continue;
      }
      config.plan.checks.push_back(*kind);
    }
  } else {
    for (CheckKind k : {CheckKind::SHELL_VALIDATION, CheckKind::SHRINKING_HOLE,
                        CheckKind::ISOPERIMETRIC_M, CheckKind::ISOPERIMETRIC_P,
                        CheckKind::CORRECTOR, CheckKind::LEMMA33,
                        CheckKind::FRIEDRICH, CheckKind::NODAL}) {
      config.plan.checks.push_back(k);
    }
  }

  if (root.contains("tolerances")) {
    const json& tols = root["tolerances"];
    if (!tols.is_object()) {
      raise(ErrorCode::ParseError, "config: \"tolerances\" must be an object");
    }
    ToleranceTable& t = config.plan.tolerances;
    const std::set<std::string> keys = {
        "eigen_oracle_rel", "inequality_slack",  "cluster_gap",
        "nodal_zero",       "decrease_slack",    "limit_rel",
        "domain_monotonicity_slack", "ratio_min"};
    reject_unknown_keys(tols, "tolerances.", keys, bad);
    const auto pick = [&](const char* key, double& field) {
      if (tols.contains(key)) {
        field = require_number(tols[key], std::string("tolerances.") + key);
        if (!(field >= 0.0) || !std::isfinite(field)) {
          bad.push_back(std::string("tolerances.") + key + " must be finite and >= 0");
        }
      }
    };
    pick("eigen_oracle_rel", t.eigen_oracle_rel);
    pick("inequality_slack", t.inequality_slack);
    pick("cluster_gap", t.cluster_gap);
    pick("nodal_zero", t.nodal_zero);
    pick("decrease_slack", t.decrease_slack);
    pick("limit_rel", t.limit_rel);
    pick("domain_monotonicity_slack", t.domain_monotonicity_slack);
    pick("ratio_min", t.ratio_min);
  }

  if (root.contains("output_dir")) {
    const json& od = root["output_dir"];
    if (!od.is_string()) {
      raise(ErrorCode::ParseError, "config: \"output_dir\" must be a string");
    }
    config.output_dir = od.get<std::string>();
    if (config.output_dir.empty()) bad.push_back("output_dir is empty");
  }

  if (config.plan.radius_schedule.empty() && bad.empty()) {
    config.plan.radius_schedule =
        default_radius_schedule(config.plan.domain, config.plan.resolution);
  }

  try {
    config.plan.validate();
  } catch (const Error& e) {
    bad.push_back(e.what());
  }
  if (!bad.empty()) {
    std::string msg = "config: invalid";
    for (const auto& b : bad) msg += "; " + b;
    raise(ErrorCode::ValidationError, msg);
  }
  return config;
}

std::string serialize_config(const RunConfig& config) {
  ordered_json root;
  ordered_json dom;
  const DomainSpec& d = config.plan.domain;
  if (const auto* disk = std::get_if<DiskBoundary>(&d.outer)) {
    dom["disk"] = disk->radius;
  } else if (const auto* ell = std::get_if<EllipseBoundary>(&d.outer)) {
    dom["ellipse"] = {ell->a, ell->b};
  } else {
    const auto& star = std::get<FourierBoundary>(d.outer);
    ordered_json s;
    s["c0"] = star.c0;
    s["cos"] = star.cos_coef;
    s["sin"] = star.sin_coef;
    dom["star"] = s;
  }
  root["domain"] = dom;
  root["resolution"] = {{"n_rays", config.plan.resolution.n_rays},
                        {"n_radial", config.plan.resolution.n_radial},
                        {"grading", config.plan.resolution.grading}};
  root["schedule"] = config.plan.radius_schedule;
  std::vector<std::string> names;
  for (CheckKind k : config.plan.checks) names.push_back(check_kind_name(k));
  root["checks"] = names;
  const ToleranceTable& t = config.plan.tolerances;
  root["tolerances"] = {
      {"eigen_oracle_rel", t.eigen_oracle_rel},
      {"inequality_slack", t.inequality_slack},
      {"cluster_gap", t.cluster_gap},
      {"nodal_zero", t.nodal_zero},
      {"decrease_slack", t.decrease_slack},
      {"limit_rel", t.limit_rel},
      {"domain_monotonicity_slack", t.domain_monotonicity_slack},
      {"ratio_min", t.ratio_min}};
  root["output_dir"] = config.output_dir;
  return root.dump(2) + "\n";
}

namespace {

std::vector<double> column_as_doubles(const Table& t, const std::string& name) {
  std::size_t idx = t.columns.size();
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (t.columns[c] == name) idx = c;
  }
  std::vector<double> out;
  if (idx == t.columns.size()) return out;
  for (const auto& row : t.rows) out.push_back(std::stod(row[idx]));
  return out;
}

void write_report(const CheckReport& report, const std::filesystem::path& dir,
                  OutputFormat format) {
  const std::string name =
      "report_" + report.check + (format == OutputFormat::CSV ? ".csv" : ".json");
  const std::string body = format == OutputFormat::CSV
                               ? render_csv(report.table)
                               : render_table_json(report.table);
  write_text_file((dir / name).string(), body);
}

std::string summary_json(const std::vector<CheckReport>& reports) {
  ordered_json root;
  root["checks"] = ordered_json::array();
  bool all = true;
  for (const CheckReport& r : reports) {
    ordered_json entry;
    entry["check"] = r.check;
    entry["verdicts"] = ordered_json::array();
    for (const Verdict& v : r.verdicts) {
      entry["verdicts"].push_back({{"name", v.name},
                                   {"status", verdict_status_name(v.status)},
                                   {"detail", v.detail}});
    }
    root["checks"].push_back(entry);
    all = all && r.all_pass();
  }
  root["all_pass"] = all;
  return root.dump(2) + "\n";
}

int run_experiment_command(const RunConfig& config,
                           const std::filesystem::path& dir) {
  const std::vector<CheckReport> reports = run_experiment(config.plan);
  for (const CheckReport& r : reports) write_report(r, dir, config.format);
  write_text_file((dir / "summary.json").string(), summary_json(reports));

  if (config.plots) {
    for (const CheckReport& r : reports) {
      if (r.check != "shrinking_hole") continue;
      const std::vector<double> rs = column_as_doubles(r.table, "r");
      Series s1{"sigma1", rs, column_as_doubles(r.table, "sigma1")};
      Series s2{"sigma2", rs, column_as_doubles(r.table, "sigma2")};
      write_text_file((dir / "fig_sigma_vs_r.svg").string(),
                      render_svg_chart("eigenvalues vs hole radius", {s1, s2},
                                       false, false));
      Series gap{"sigma2_gap", rs, column_as_doubles(r.table, "sigma2_gap")};
      Series e1{"h1_err_u1", rs, column_as_doubles(r.table, "h1_err_u1")};
      Series e2{"h1_err_u2", rs, column_as_doubles(r.table, "h1_err_u2")};
      write_text_file((dir / "fig_error_vs_r.svg").string(),
                      render_svg_chart("limit errors vs hole radius",
                                       {gap, e1, e2}, true, true));
    }
  }

  for (const CheckReport& r : reports) {
    if (!r.all_pass()) return 2;
  }
  return 0;
}

}  // namespace

int dispatch(const RunConfig& config) {
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);

  switch (config.subcommand) {
    case Subcommand::MESH: {
      const Mesh mesh = build_polar_mesh(
          config.plan.domain.with_hole(config.plan.radius_schedule.front()),
          config.plan.resolution.n_rays, config.plan.resolution.n_radial,
          config.plan.resolution.grading);
      write_text_file((dir / "mesh.txt").string(), render_mesh_text(mesh));
      return 0;
    }
    case Subcommand::SHELL: {
      const double R = equivalent_radii(config.plan.domain).measure;
      Table t;
      t.columns = {"r", "sigma1", "sigma2", "dsigma2_dr"};
      for (double r : config.plan.radius_schedule) {
        const ShellSpec s{config.shell_dim, r, R};
        t.rows.push_back({format_value(r), format_value(sigma1_shell(s)),
                          format_value(sigma2_shell(s)),
                          format_value(sigma2_shell_derivative(s))});
      }
      const bool csv = config.format == OutputFormat::CSV;
      write_text_file((dir / (csv ? "shell.csv" : "shell.json")).string(),
                      csv ? render_csv(t) : render_table_json(t));
      return 0;
    }
    case Subcommand::SOLVE: {
      const Mesh mesh = build_polar_mesh(
          config.plan.domain.with_hole(config.plan.radius_schedule.front()),
          config.plan.resolution.n_rays, config.plan.resolution.n_radial,
          config.plan.resolution.grading);
      const SpectralResult sd = solve_steklov_dirichlet(
          mesh, config.solve_count, config.plan.tolerances.cluster_gap);
      Table t;
      t.columns = {"index", "sigma", "cluster"};
      for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i) {
        std::size_t cluster = 0;
        for (std::size_t c = 0; c < sd.clusters.size(); ++c) {
          for (int j : sd.clusters[c]) {
            if (j == static_cast<int>(i)) cluster = c;
          }
        }
        t.rows.push_back({std::to_string(i + 1),
                          format_value(sd.eigenvalues[i]),
                          std::to_string(cluster + 1)});
      }
      const bool csv = config.format == OutputFormat::CSV;
      write_text_file((dir / (csv ? "eigenvalues.csv" : "eigenvalues.json")).string(),
                      csv ? render_csv(t) : render_table_json(t));
      for (std::size_t i = 0; i < sd.eigenfields.size(); ++i) {
        write_text_file((dir / ("field_" + std::to_string(i + 1) + ".txt")).string(),
                        render_field_text(sd.eigenfields[i]));
      }
      write_text_file((dir / "mesh.txt").string(), render_mesh_text(mesh));
      return 0;
    }
    case Subcommand::EXPERIMENT:
      return run_experiment_command(config, dir);
  }
  return 1;
}

}  // namespace steklov
