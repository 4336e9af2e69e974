// rotodiff command line front-end.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rotodiff/cli.hpp"

namespace {

using rotodiff::cli::Json;

int report(const Json& error, int code) {
  std::cerr << error.dump() << std::endl;
  return code;
}

unsigned threads_from_env() {
  const char* env = std::getenv("ROTODIFF_THREADS");
  if (!env || !*env) return 1;
  try {
    const long n = std::stol(env);
    return n > 0 ? static_cast<unsigned>(n) : 1u;
  } catch (const std::exception&) {
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotodiff: angular momentum diffusion of rigid rotors"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  unsigned threads = 0;
  std::uint64_t seed = 0;

  auto* run = app.add_subcommand("run", "run a scenario");
  run->add_option("config", config_path, "scenario config (JSON)")->required();
  run->add_option("--out", out_dir, "output directory");
  auto* threads_opt = run->add_option("--threads", threads, "worker threads (ROTODIFF_THREADS)")
                          ->check(CLI::PositiveNumber);
  auto* seed_opt = run->add_option("--seed", seed, "override the config seed");

  auto* validate = app.add_subcommand("validate", "validate a config and print it canonicalized");
  validate->add_option("config", config_path, "scenario config (JSON)")->required();

  app.add_subcommand("schema", "print the config JSON schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand("schema")) {
      std::cout << rotodiff::cli::schema_text();
      return 0;
    }
    const Json raw = rotodiff::cli::load_config(config_path);
    if (app.got_subcommand("validate")) {
      std::cout << rotodiff::cli::canonicalize(raw).dump(2) << std::endl;
      return 0;
    }
    rotodiff::cli::RunOptions options;
    options.out_dir = out_dir;
    options.threads = threads_opt->count() ? threads : threads_from_env();
    if (seed_opt->count()) options.seed = seed;
    rotodiff::cli::run_scenario(raw, options);
    return 0;
  } catch (const rotodiff::cli::ValidationError& e) {
    Json err = rotodiff::cli::error_json("config", e.what());
    err["pointer"] = e.pointer();
    return report(err, 1);
  } catch (const rotodiff::ConfigError& e) {
    return report(rotodiff::cli::error_json("config", e.what()), 1);
  } catch (const std::invalid_argument& e) {
    return report(rotodiff::cli::error_json("config", e.what()), 1);
  } catch (const rotodiff::NumericalError& e) {
    Json err = rotodiff::cli::error_json("numerical", e.what());
    err["module_error"] = dynamic_cast<const rotodiff::TruncationError*>(&e)
                              ? "TruncationError"
                              : "NumericalError";
    err["achieved"] = e.achieved();
    return report(err, 2);
  } catch (const std::exception& e) {
    return report(rotodiff::cli::error_json("runtime", e.what()), 2);
  }
}
