// Generic learning-curve and CLML-sweep wrappers over the built-in model sets.
#include <cmath>
#include <memory>
#include <sstream>
#include <vector>

#include "csv.hpp"
#include "experiments.hpp"
#include "lml/fourier_model.hpp"
#include "lml/selection.hpp"

namespace lml::harness {

namespace {
struct ModelSet {
  std::vector<std::unique_ptr<EvidenceModel>> models;
  OrderedDataset data;
};

// model=density: M1/M2 Gaussian-mean pair on seeded scalar data.
// model=fourier: M3/M9/M9c on regenerated order-9 data.
// model=gp-rbf:  three lengthscales on data from an l=4 RBF GP.
ModelSet build_model_set(const std::string& name, std::size_t n, SeedSpec seed) {
  ModelSet set;
  if (name == "density") {
    Rng rng = Rng::child(seed, 0);
    std::vector<double> values(n);
    for (auto& v : values) v = rng.normal(1.5, 1.0);
    set.data = OrderedDataset::from_scalars(values);
    set.models.push_back(
        std::make_unique<DensityEvidenceModel>(GaussianDensityModel{0.0, 1.0}, "M1"));
    set.models.push_back(
        std::make_unique<DensityEvidenceModel>(GaussianDensityModel{2.0, 0.07}, "M2"));
    return set;
  }
  if (name == "fourier") {
    set.data = fourier_generate(9, fourier_inverse_square_prior(9), 0.1, n, seed);
    set.models.push_back(std::make_unique<FourierEvidenceModel>(
        FourierRegressionModel{3, fourier_unit_prior(3), 0.1}, "M3"));
    set.models.push_back(std::make_unique<FourierEvidenceModel>(
        FourierRegressionModel{9, fourier_unit_prior(9), 0.1}, "M9"));
    set.models.push_back(std::make_unique<FourierEvidenceModel>(
        FourierRegressionModel{9, fourier_inverse_square_prior(9), 0.1}, "M9c"));
    return set;
  }
  if (name == "gp-rbf") {
    GPModel truth;
    truth.kernel = {KernelKind::rbf, 4.0, 1.0, 1.0};
    truth.noise_std = 0.2;
    std::vector<double> positions(n);
    for (std::size_t i = 0; i < n; ++i) positions[i] = static_cast<double>(i + 1);
    set.data = gp_generate(truth, positions, seed);
    for (double lengthscale : {2.0, 4.0, 8.0}) {
      GPModel model = truth;
      model.kernel.lengthscale = lengthscale;
      char id[32];
      std::snprintf(id, sizeof id, "GP_l%g", lengthscale);
      set.models.push_back(std::make_unique<GPEvidenceModel>(model, id));
    }
    return set;
  }
  throw ConfigError("unknown model set '" + name + "' (density, fourier, gp-rbf)");
}
}  // namespace

ExperimentDef learning_curve_experiment() {
  ExperimentDef def;
  def.name = "learning-curve";
  def.description = "conditional log predictive densities per index for a built-in model set";
  def.default_seed = 19;
  def.declare = [](Params& params) {
    params.declare_string("model", "density", "model set: density, fourier, gp-rbf");
    params.declare_int("n", 40, "dataset size");
    params.declare_int("orderings", 100, "orderings averaged over");
  };
  def.run = [](const ExperimentContext& context) {
    const Params& p = context.params;
    const ModelSet set = build_model_set(p.get_string("model"),
                                         static_cast<std::size_t>(p.get_int("n")), context.seed);
    std::vector<std::string> columns{"n"};
    for (const auto& model : set.models) {
      columns.push_back("mean_logpred_" + model->id());
      columns.push_back("stderr_" + model->id());
    }
    std::vector<LearningCurve> curves;
    const SeedSpec curve_seed{Rng::child(context.seed, 1).next_u64()};
    for (const auto& model : set.models) {
      curves.push_back(learning_curve(*model, set.data,
                                      static_cast<std::size_t>(p.get_int("orderings")), curve_seed,
                                      context.exec));
    }
    CsvWriter csv(context.out_dir / "learning_curve.csv", columns);
    for (std::size_t i = 0; i < set.data.size(); ++i) {
      std::vector<Cell> cells{static_cast<std::int64_t>(i + 1)};
      for (const LearningCurve& curve : curves) {
        cells.emplace_back(curve.mean_log_pred[i]);
        cells.emplace_back(curve.std_errors[i]);
      }
      csv.row(cells);
    }
    for (std::size_t k = 0; k < set.models.size(); ++k) {
      context.summary["lml_" + set.models[k]->id()] = set.models[k]->log_evidence(set.data);
    }
  };
  return def;
}

ExperimentDef clml_sweep_experiment() {
  ExperimentDef def;
  def.name = "clml-sweep";
  def.description = "CLML as a function of the cut-off m for a built-in model set";
  def.default_seed = 23;
  def.declare = [](Params& params) {
    params.declare_string("model", "fourier", "model set: density, fourier, gp-rbf");
    params.declare_int("n", 100, "dataset size");
    params.declare_int("orderings", 50, "orderings averaged over");
    params.declare_string("m_values", "", "comma-separated cut-offs; empty = 10 even steps");
  };
  def.run = [](const ExperimentContext& context) {
    const Params& p = context.params;
    const std::size_t n = static_cast<std::size_t>(p.get_int("n"));
    const ModelSet set = build_model_set(p.get_string("model"), n, context.seed);

    std::vector<std::size_t> m_values;
    const std::string m_text = p.get_string("m_values");
    if (m_text.empty()) {
      for (int step = 1; step <= 10; ++step) {
        m_values.push_back(std::max<std::size_t>(1, n * step / 10));
      }
    } else {
      std::stringstream stream(m_text);
      std::string item;
      while (std::getline(stream, item, ',')) {
        const long value = std::stol(item);
        if (value < 1 || static_cast<std::size_t>(value) > n) {
          throw ConfigError("m_values entries must lie in [1, n]");
        }
        m_values.push_back(static_cast<std::size_t>(value));
      }
    }

    std::vector<const EvidenceModel*> model_ptrs;
    for (const auto& model : set.models) model_ptrs.push_back(model.get());
    const auto rows =
        clml_m_sweep(model_ptrs, set.data, m_values,
                     static_cast<std::size_t>(p.get_int("orderings")),
                     SeedSpec{Rng::child(context.seed, 1).next_u64()}, context.exec);

    std::vector<std::string> columns{"m"};
    for (const auto& model : set.models) columns.push_back("clml_" + model->id());
    columns.push_back("preferred");
    CsvWriter csv(context.out_dir / "clml_sweep.csv", columns);
    for (const auto& row : rows) {
      std::vector<Cell> cells{static_cast<std::int64_t>(row.m)};
      for (double value : row.clml_per_model) cells.emplace_back(value);
      cells.emplace_back(row.preferred);
      csv.row(cells);
    }
    context.summary["m_values"] = m_values;
    context.summary["preferred_at_largest_m"] = rows.back().preferred;
  };
  return def;
}

}  // namespace lml::harness
