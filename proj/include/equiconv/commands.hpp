#pragma once

#include <optional>
#include <string>

#include "equiconv/config.hpp"

namespace eqc {

struct CommandResult {
  json output;
  int exit_code = 0;
};

// Exit codes shared by the CLI: 0 pass, 1 verification failure,
// 2 config error, 3 solver error, 4 resource limit.
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverError = 3;
inline constexpr int kExitTooLarge = 4;

// Solves the kernel basis and dumps it in the requested form (d, c, g).
CommandResult cmd_basis(const json& config, const std::string& form);

// Runs the per-config verification suites: exact coset identities,
// three-form dimension equality, round trips, Mackey projection and
// equivariance residuals. inject_noise > 0 perturbs the solved kernels
// off the solution span as a negative control.
CommandResult cmd_verify(const json& config);

// Compares the intertwiner oracle with the span of correlation layers
// generated from the solved basis.
CommandResult cmd_oracle(const json& config);

// Lists the builtin groups with their subgroups.
CommandResult cmd_catalog();

// Full invariant sweep over the shipped configurations; optionally
// includes a user-supplied group fixture in the exact-identity sweep.
CommandResult cmd_selftest(int trials, std::uint64_t seed,
                           const std::optional<json>& fixture);

}  // namespace eqc
