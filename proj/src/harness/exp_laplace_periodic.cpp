#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "csv.hpp"
#include "experiments.hpp"
#include "lml/approx.hpp"
#include "lml/sampling.hpp"

namespace lml::harness {

ExperimentDef laplace_periodic_experiment() {
  ExperimentDef def;
  def.name = "laplace-periodic";
  def.description = "exact vs Laplace evidence of the periodic-sine model as the prior widens";
  def.default_seed = 3;
  def.declare = [](Params& params) {
    params.declare_int("n", 20, "data points");
    params.declare_double("w_true", 0.8, "generating parameter");
    params.declare_double_list(
        "alphas",
        "6.283185307179586,12.566370614359172,25.132741228718345,50.265482457436690",
        "uniform-prior half-widths (default 2pi,4pi,8pi,16pi)");
  };
  def.run = [](const ExperimentContext& context) {
    const Params& p = context.params;
    Rng rng = Rng::child(context.seed, 0);
    std::vector<double> values(p.get_int("n"));
    const double latent_mean = std::sin(p.get_double("w_true"));
    for (auto& v : values) v = rng.normal(latent_mean, 1.0);
    const OrderedDataset data = OrderedDataset::from_scalars(values);

    CsvWriter csv(context.out_dir / "laplace_periodic.csv",
                  {"alpha", "exact_lml_quadrature", "laplace_lml"});
    std::vector<double> exact_values, laplace_values;
    for (double alpha : p.get_double_list("alphas")) {
      const SineParamModel model(PeriodicSineModel{alpha});
      const double exact = quadrature_evidence(model, data).log_value;
      const double laplace =
          laplace_evidence(model, data, Eigen::VectorXd::Zero(1)).log_evidence;
      csv.row({alpha, exact, laplace});
      exact_values.push_back(exact);
      laplace_values.push_back(laplace);
    }

    const auto [min_exact, max_exact] =
        std::minmax_element(exact_values.begin(), exact_values.end());
    context.summary["quadrature_spread"] = *max_exact - *min_exact;
    nlohmann::ordered_json deltas = nlohmann::ordered_json::array();
    for (std::size_t i = 1; i < laplace_values.size(); ++i) {
      deltas.push_back(laplace_values[i] - laplace_values[i - 1]);
    }
    context.summary["laplace_deltas"] = deltas;
    context.summary["log_half"] = -std::log(2.0);
  };
  return def;
}

}  // namespace lml::harness
