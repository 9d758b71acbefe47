#include <iostream>

#include <CLI11.hpp>

#include "omd/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Orthogonally resolvable matching designs: generate, verify, sweep"};
  app.require_subcommand(1);

  omd::cli::Config cfg;
  auto add_common = [&cfg](CLI::App* cmd) {
    cmd->add_option("--seed", cfg.seed, "Seed for randomised search")->capture_default_str();
    cmd->add_option("--budget", cfg.budget, "Node budget per search")->capture_default_str();
    cmd->add_option("--out", cfg.out, "Write output to this file instead of stdout");
  };

  int n = 0, k = 0;
  auto* gen = app.add_subcommand("generate", "Construct and verify an OMD(n,k)");
  gen->add_option("--n", n, "Number of points")->required();
  gen->add_option("--k", k, "Edges per block")->required();
  gen->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "grid", "latex"}))
      ->capture_default_str();
  add_common(gen);

  std::string path;
  auto* ver = app.add_subcommand("verify", "Verify a design file");
  ver->add_option("path", path, "Design JSON file")->required();
  add_common(ver);

  auto* tra = app.add_subcommand("transversal", "Search for a transversal of a design file");
  tra->add_option("path", path, "Design JSON file")->required();
  add_common(tra);

  int n_max = 0, k_max = 0;
  auto* swp = app.add_subcommand("sweep", "Generate and verify every admissible (n,k) up to the bounds");
  swp->add_option("--n-max", n_max, "Largest n")->required();
  swp->add_option("--k-max", k_max, "Largest k")->required();
  add_common(swp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : omd::cli::exit_code::usage;
  }

  if (*gen) return omd::cli::cmd_generate(n, k, cfg, std::cout, std::cerr);
  if (*ver) return omd::cli::cmd_verify(path, cfg, std::cout, std::cerr);
  if (*tra) return omd::cli::cmd_transversal(path, cfg, std::cout, std::cerr);
  return omd::cli::cmd_sweep(n_max, k_max, cfg, std::cout, std::cerr);
}
