#ifndef LMLKIT_HARNESS_EXPERIMENTS_HPP
#define LMLKIT_HARNESS_EXPERIMENTS_HPP

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "lml/parallel.hpp"
#include "lml/rng.hpp"

namespace lml::harness {

struct ExperimentContext {
  Params params;
  SeedSpec seed;
  std::filesystem::path out_dir;
  Exec exec = Exec::parallel;

  /// Accumulates the headline quantities; written to summary.json by the
  /// runner after the experiment returns.
  mutable nlohmann::ordered_json summary;
};

struct ExperimentDef {
  std::string name;
  std::string description;
  std::uint64_t default_seed;
  std::function<void(Params&)> declare;
  std::function<void(const ExperimentContext&)> run;
};

const std::vector<ExperimentDef>& all_experiments();

/// Runs one experiment end to end: resolves the config, writes manifest.json,
/// runs, writes summary.json. Throws ConfigError for configuration problems.
void run_experiment(const ExperimentDef& def, std::uint64_t seed,
                    const std::filesystem::path& out_dir,
                    const std::map<std::string, std::string>& overrides, Exec exec);

extern const char* kToolVersion;

}  // namespace lml::harness

#endif  // LMLKIT_HARNESS_EXPERIMENTS_HPP
