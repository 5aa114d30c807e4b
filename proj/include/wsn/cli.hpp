#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace wsn::cli {

// Exit codes: 0 converged / all pass, 1 config or usage error,
// 2 stopped at max_iters, 3 verification failure.

struct OptimizeArgs {
  std::string config_path;
  std::string algorithm;  // "pool" | "peel"
  std::optional<std::uint64_t> seed;
  std::optional<std::string> seed_sweep;  // "a..b", inclusive
  std::string out_path;
  std::string trace_path;
  std::string geometry_path;
};
int cmd_optimize(const OptimizeArgs& args);

struct EvalArgs {
  std::string config_path;
  std::string deployment_path;  // result document
  std::string objective;        // "d1" | "d2"
};
int cmd_eval(const EvalArgs& args);

struct VerifyArgs {
  std::string suite;  // numerics | routing | boundary | outage-mc
  std::uint64_t seed = 1;
  std::string out_path;  // optional JSON report document
};
int cmd_verify(const VerifyArgs& args);

}  // namespace wsn::cli
