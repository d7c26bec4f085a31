#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "steklov/config.hpp"
#include "steklov/errors.hpp"

namespace {

struct Options {
  std::string config_path;
  std::string format = "csv";
  bool plots = false;
  bool seedless = false;
  int dim = 2;
  int k = 6;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("config", opt.config_path, "config file (json)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--format", opt.format, "table format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--plots", opt.plots, "emit svg line plots");
  cmd->add_flag("--seedless", opt.seedless,
                "deterministic mode (always on; accepted for scripts)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steklov-Dirichlet spectral laboratory"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* mesh = app.add_subcommand("mesh", "write the mesh for inspection");
  add_common(mesh, opt);
  CLI::App* shell = app.add_subcommand("shell", "closed-form shell table");
  add_common(shell, opt);
  shell->add_option("--dim", opt.dim, "shell dimension")->check(CLI::Range(2, 16));
  CLI::App* solve = app.add_subcommand("solve", "eigenpairs at the first radius");
  add_common(solve, opt);
  solve->add_option("-k,--k", opt.k, "eigenpair count")->check(CLI::Range(1, 64));
  CLI::App* experiment =
      app.add_subcommand("experiment", "run the configured checks");
  add_common(experiment, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Collapse CLI11's exit-code zoo onto the 0/2/1 contract.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    std::ifstream in(opt.config_path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (!in) {
      std::cerr << "error: cannot read " << opt.config_path << "\n";
      return 1;
    }

    steklov::RunConfig config = steklov::parse_config(buffer.str());
    if (mesh->parsed()) config.subcommand = steklov::Subcommand::MESH;
    if (shell->parsed()) config.subcommand = steklov::Subcommand::SHELL;
    if (solve->parsed()) config.subcommand = steklov::Subcommand::SOLVE;
    if (experiment->parsed()) config.subcommand = steklov::Subcommand::EXPERIMENT;
    config.format = opt.format == "json" ? steklov::OutputFormat::JSON
                                         : steklov::OutputFormat::CSV;
    config.plots = opt.plots;
    config.shell_dim = opt.dim;
    config.solve_count = opt.k;
    return steklov::dispatch(config);
  } catch (const steklov::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
