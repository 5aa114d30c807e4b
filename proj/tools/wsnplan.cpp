// Command-line front end: optimize runs the deployment algorithms on a
// scenario file, eval re-scores a stored deployment, verify runs the oracle
// batteries.
#include <CLI11.hpp>

#include "wsn/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Energy-minimal node deployment for fading sensor networks"};
  app.require_subcommand(1);

  wsn::cli::OptimizeArgs opt;
  std::uint64_t opt_seed = 0;
  std::string opt_sweep;
  auto* optimize = app.add_subcommand("optimize", "run POOL or PEEL on a scenario");
  optimize->add_option("--config", opt.config_path, "scenario JSON file")->required();
  optimize->add_option("--algorithm", opt.algorithm, "pool | peel")->required();
  auto* seed_flag = optimize->add_option("--seed", opt_seed, "override the scenario seed");
  auto* sweep_flag =
      optimize->add_option("--seed-sweep", opt_sweep, "run seeds a..b, keep the best");
  optimize->add_option("--out", opt.out_path, "result document path");
  optimize->add_option("--trace", opt.trace_path, "trace CSV path");
  optimize->add_option("--geometry", opt.geometry_path, "geometry CSV path");

  wsn::cli::EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "evaluate a stored deployment");
  eval->add_option("--config", ev.config_path, "scenario JSON file")->required();
  eval->add_option("--deployment", ev.deployment_path, "result document")->required();
  eval->add_option("--objective", ev.objective, "d1 | d2")->required();

  wsn::cli::VerifyArgs vf;
  auto* verify = app.add_subcommand("verify", "run an oracle battery");
  verify->add_option("--suite", vf.suite, "numerics | routing | boundary | outage-mc")
      ->required();
  verify->add_option("--seed", vf.seed, "battery seed");
  verify->add_option("--out", vf.out_path, "JSON report path");

  CLI11_PARSE(app, argc, argv);

  if (optimize->parsed()) {
    if (*seed_flag) opt.seed = opt_seed;
    if (*sweep_flag) opt.seed_sweep = opt_sweep;
    return wsn::cli::cmd_optimize(opt);
  }
  if (eval->parsed()) return wsn::cli::cmd_eval(ev);
  if (verify->parsed()) return wsn::cli::cmd_verify(vf);
  return 1;
}
