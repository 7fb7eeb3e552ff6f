#include "experiments.hpp"

#include <fstream>

namespace lml::harness {

const char* kToolVersion = "0.1.0";

ExperimentDef density_experiment();
ExperimentDef fourier_experiment();
ExperimentDef gp_rbf_bias_experiment();
ExperimentDef gp_rq_experiment();
ExperimentDef gp_mlp_mean_experiment();
ExperimentDef laplace_periodic_experiment();
ExperimentDef sampling_check_experiment();
ExperimentDef pac_bayes_experiment();
ExperimentDef learning_curve_experiment();
ExperimentDef clml_sweep_experiment();

const std::vector<ExperimentDef>& all_experiments() {
  static const std::vector<ExperimentDef> experiments = {
      density_experiment(),        fourier_experiment(),      gp_rbf_bias_experiment(),
      gp_rq_experiment(),          gp_mlp_mean_experiment(),  laplace_periodic_experiment(),
      sampling_check_experiment(), pac_bayes_experiment(),    learning_curve_experiment(),
      clml_sweep_experiment(),
  };
  return experiments;
}

void run_experiment(const ExperimentDef& def, std::uint64_t seed,
                    const std::filesystem::path& out_dir,
                    const std::map<std::string, std::string>& overrides, Exec exec) {
  ExperimentContext context;
  def.declare(context.params);
  context.params.apply_overrides(overrides);
  context.seed = SeedSpec{seed};
  context.out_dir = out_dir;
  context.exec = exec;

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw ConfigError("output directory '" + out_dir.string() + "' is not writable");
  }

  nlohmann::ordered_json manifest;
  manifest["tool"] = "lmlkit";
  manifest["version"] = kToolVersion;
  manifest["experiment"] = def.name;
  manifest["seed"] = seed;
  manifest["config"] = context.params.resolved();
  {
    std::ofstream out(out_dir / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << '\n';
  }

  def.run(context);

  {
    std::ofstream out(out_dir / "summary.json", std::ios::binary);
    out << context.summary.dump(2) << '\n';
  }
}

}  // namespace lml::harness
