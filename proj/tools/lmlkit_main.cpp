// Command-line entry point: runs one experiment into an output directory,
// writing manifest.json, the experiment CSVs, and summary.json.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure that
// aborted the run.
#include <omp.h>

#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "experiments.hpp"
#include "lml/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"lmlkit: exact and approximate Bayesian evidence experiments"};

  std::string experiment;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::vector<std::string> set_values;
  int threads = 0;
  bool list = false;
  bool serial = false;

  app.add_option("--experiment", experiment, "experiment id (see --list)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "master seed (default: per-experiment)")
      ->each([&](const std::string&) { seed_given = true; });
  app.add_option("--set", set_values, "override a config key, e.g. --set n=50 (repeatable)");
  app.add_option("--threads", threads, "OpenMP thread cap (0 = hardware default)");
  app.add_flag("--serial", serial, "run replicate loops serially (same results)");
  app.add_flag("--list", list, "list experiments and exit");

  CLI11_PARSE(app, argc, argv);

  using namespace lml::harness;

  if (list) {
    for (const ExperimentDef& def : all_experiments()) {
      std::printf("%-18s seed=%-6llu %s\n", def.name.c_str(),
                  static_cast<unsigned long long>(def.default_seed), def.description.c_str());
    }
    return 0;
  }

  try {
    if (experiment.empty()) throw ConfigError("--experiment is required (see --list)");
    if (out_dir.empty()) throw ConfigError("--out is required");

    const ExperimentDef* def = nullptr;
    for (const ExperimentDef& candidate : all_experiments()) {
      if (candidate.name == experiment) def = &candidate;
    }
    if (!def) throw ConfigError("unknown experiment '" + experiment + "' (see --list)");

    std::map<std::string, std::string> overrides;
    for (const std::string& item : set_values) {
      const std::size_t eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ConfigError("--set expects key=value, got '" + item + "'");
      }
      overrides[item.substr(0, eq)] = item.substr(eq + 1);
    }

    if (threads > 0) omp_set_num_threads(threads);
    lml::set_default_exec(serial ? lml::Exec::serial : lml::Exec::parallel);

    run_experiment(*def, seed_given ? seed : def->default_seed, out_dir, overrides,
                   serial ? lml::Exec::serial : lml::Exec::parallel);
    return 0;
  } catch (const ConfigError& error) {
    std::fprintf(stderr, "config error: %s\n", error.what());
    return 2;
  } catch (const lml::NumericalError& error) {
    std::fprintf(stderr, "numerical failure: %s\n", error.what());
    return 3;
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return 3;
  }
}
