#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "equiconv/commands.hpp"

namespace {

eqc::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw eqc::ConfigError("cannot open file '" + path + "'");
  try {
    return eqc::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw eqc::ConfigError("invalid JSON in '" + path + "': " + err.what());
  }
}

void emit(const eqc::json& output, const std::string& out_path) {
  const std::string text = output.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw eqc::ConfigError("cannot write file '" + out_path + "'");
    out << text;
  }
}

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<double> inject_noise;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_config) {
  auto* config =
      cmd->add_option("--config", opts.config_path, "experiment config JSON file");
  if (needs_config) config->required();
  cmd->add_option("--out", opts.out_path, "write the report to a file");
  cmd->add_option("--trials", opts.trials, "random trials per property suite");
  cmd->add_option("--seed", opts.seed, "seed for the deterministic generator");
  cmd->add_option("--tol", opts.tol, "pass/fail tolerance");
  cmd->add_option("--inject-noise", opts.inject_noise,
                  "perturb solved kernels off the solution span (negative control)");
}

eqc::json effective_config(const CommonOpts& opts) {
  eqc::json config = load_json(opts.config_path);
  if (!config.is_object()) throw eqc::ConfigError("config must be a JSON object");
  if (opts.trials) config["trials"] = *opts.trials;
  if (opts.seed) config["seed"] = *opts.seed;
  if (opts.tol) config["tol"] = *opts.tol;
  if (opts.inject_noise) config["inject_noise"] = *opts.inject_noise;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equivariant convolution kernel spaces on finite homogeneous spaces"};
  app.require_subcommand(1);

  CommonOpts basis_opts, verify_opts, oracle_opts, selftest_opts;
  std::string form = "d";
  std::string fixture_path;
  bool json_flag = true;

  auto* basis =
      app.add_subcommand("basis", "solve and dump an equivariant kernel basis");
  add_common(basis, basis_opts, true);
  basis->add_option("--form", form, "kernel form to emit: d, c or g")
      ->check(CLI::IsMember({"d", "c", "g"}));
  basis->add_flag("--json", json_flag, "emit JSON (default)");

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  add_common(verify, verify_opts, true);
  verify->add_flag("--json", json_flag, "emit JSON (default)");

  auto* oracle = app.add_subcommand(
      "oracle", "compare the brute-force intertwiner space with the solved basis");
  add_common(oracle, oracle_opts, true);

  auto* catalog = app.add_subcommand("catalog", "list the builtin groups");
  std::string catalog_out;
  catalog->add_option("--out", catalog_out, "write the listing to a file");

  auto* selftest =
      app.add_subcommand("selftest", "invariant sweep over every builtin configuration");
  add_common(selftest, selftest_opts, false);
  selftest->add_option("--fixture", fixture_path,
                       "extra group JSON to include in the identity sweep");

  CLI11_PARSE(app, argc, argv);

  try {
    eqc::CommandResult result;
    std::string out_path;
    if (basis->parsed()) {
      result = eqc::cmd_basis(effective_config(basis_opts), form);
      out_path = basis_opts.out_path;
    } else if (verify->parsed()) {
      result = eqc::cmd_verify(effective_config(verify_opts));
      out_path = verify_opts.out_path;
    } else if (oracle->parsed()) {
      result = eqc::cmd_oracle(effective_config(oracle_opts));
      out_path = oracle_opts.out_path;
    } else if (catalog->parsed()) {
      result = eqc::cmd_catalog();
      out_path = catalog_out;
    } else if (selftest->parsed()) {
      std::optional<eqc::json> fixture;
      if (!fixture_path.empty()) fixture = load_json(fixture_path);
      result = eqc::cmd_selftest(selftest_opts.trials.value_or(4),
                                 selftest_opts.seed.value_or(42), fixture);
      out_path = selftest_opts.out_path;
    }
    emit(result.output, out_path);
    return result.exit_code;
  } catch (const eqc::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return eqc::kExitConfigError;
  } catch (const eqc::TooLarge& err) {
    std::cerr << "resource limit: " << err.what() << "\n";
    return eqc::kExitTooLarge;
  } catch (const eqc::Error& err) {
    std::cerr << "solver error: " << err.what() << "\n";
    return eqc::kExitSolverError;
  }
}
