// pbna: decide PBNA feasibility for three unicast sessions on a DAG, build the
// precoding solution, and demonstrate it end to end over GF(2^m).

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pbna/cli.hpp"
#include "pbna/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"precoding-based network alignment toolkit"};
  app.set_version_flag("--version", pbna::kToolVersion);
  app.require_subcommand(1);

  pbna::cli::CheckOptions check_opt;
  pbna::cli::SimulateOptions sim_opt;
  pbna::cli::OracleOptions oracle_opt;

  auto add_common = [](CLI::App* cmd, pbna::cli::CheckOptions& o) {
    cmd->add_option("graph", o.graph_path, "graph JSON file")->required();
    cmd->add_option("--m", o.m, "field degree: arithmetic is over GF(2^m)")
        ->capture_default_str();
    cmd->add_option("--trials", o.trials, "random trials per probabilistic condition")
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "RNG seed (required: reports must be reproducible)")
        ->required();
    cmd->add_option("--n", o.n, "precoding parameter n; the scheme uses 2n+1 network uses")
        ->capture_default_str();
    cmd->add_option("--oracle", o.oracle_mode, "exact-oracle usage: auto|force|off")
        ->capture_default_str();
    cmd->add_option("--out", o.out_path, "write the JSON report here instead of stdout");
  };

  CLI::App* check = app.add_subcommand("check", "decide PBNA feasibility");
  add_common(check, check_opt);

  CLI::App* simulate =
      app.add_subcommand("simulate", "check feasibility, then encode/transmit/decode");
  add_common(simulate, sim_opt.common);
  simulate->add_flag("--force", sim_opt.force,
                     "run the pipeline even when the report says infeasible");

  CLI::App* oracle = app.add_subcommand("oracle", "exact polynomial identity verdicts");
  oracle->add_option("graph", oracle_opt.graph_path, "graph JSON file")->required();
  oracle->add_option("--what", oracle_opt.what, "identities|square-term|paths")
      ->capture_default_str();
  oracle->add_option("--out", oracle_opt.out_path, "write the JSON report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return pbna::cli::cmd_check(check_opt, std::cout, std::cerr);
  if (simulate->parsed()) return pbna::cli::cmd_simulate(sim_opt, std::cout, std::cerr);
  return pbna::cli::cmd_oracle(oracle_opt, std::cout, std::cerr);
}
