#pragma once

#include <string>

#include "steklov/experiments.hpp"

namespace steklov {

enum class Subcommand { MESH, SHELL, SOLVE, EXPERIMENT };
enum class OutputFormat { CSV, JSON };

struct RunConfig {
  Subcommand subcommand = Subcommand::EXPERIMENT;
  ExperimentPlan plan;
  std::string output_dir = "out";
  OutputFormat format = OutputFormat::CSV;
  bool plots = false;
  bool seedless = true;  // accepted for symmetry; runs are deterministic anyway
  int shell_dim = 2;     // shell subcommand only
  int solve_count = 6;   // solve subcommand only
};

// Strict config parse. Accepted keys: "domain" (required), "resolution",
// "schedule", "checks", "tolerances", "output_dir"; anything else is
// rejected. Missing keys fall back to defaults (256x64 grading 0.85, the
// stock tolerance table, a geometric radius schedule, every check).
// ParseError carries the json context; ValidationError lists every violated
// invariant at once.
RunConfig parse_config(const std::string& text);

// Canonical form: fixed key order with every default written out, so
// parse(serialize(parse(text))) reproduces serialize(parse(text)) byte for
// byte.
std::string serialize_config(const RunConfig& config);

// Runs the subcommand, writing under output_dir (created if missing).
// Returns 0 when every verdict passes, 2 when any verdict fails; errors
// propagate as exceptions for the caller to map to exit 1.
int dispatch(const RunConfig& config);

}  // namespace steklov
