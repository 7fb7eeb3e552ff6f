#include <cmath>
#include <vector>

#include "csv.hpp"
#include "experiments.hpp"
#include "lml/density_model.hpp"
#include "lml/selection.hpp"

namespace lml::harness {

namespace {
OrderedDataset draw_density_data(std::size_t n, double mean, SeedSpec seed, std::uint64_t stream) {
  Rng rng = Rng::child(seed, stream);
  std::vector<double> values(n);
  for (auto& v : values) v = rng.normal(mean, 1.0);
  return OrderedDataset::from_scalars(values);
}

void write_curve_csv(const std::filesystem::path& path, const LearningCurve& curve) {
  CsvWriter csv(path, {"n", "mean_logpred", "stderr"});
  for (std::size_t i = 0; i < curve.mean_log_pred.size(); ++i) {
    csv.row({static_cast<std::int64_t>(i + 1), curve.mean_log_pred[i], curve.std_errors[i]});
  }
}
}  // namespace

ExperimentDef density_experiment() {
  ExperimentDef def;
  def.name = "density";
  def.description = "prior-variance sweep and learning curves for the Gaussian-mean model";
  def.default_seed = 101;
  def.declare = [](Params& params) {
    params.declare_double("u_true", 1.5, "mean of the generating distribution");
    params.declare_int("n_train", 20, "training points");
    params.declare_int("n_test", 1000, "fresh points for the test predictive log density");
    params.declare_double("sigma2_min", 1e-2, "smallest prior variance in the sweep");
    params.declare_double("sigma2_max", 1e3, "largest prior variance in the sweep");
    params.declare_int("sigma2_points", 60, "log-spaced sweep points");
    params.declare_double("sweep_mu", 0.0, "prior mean held fixed during the sweep");
    params.declare_double("m1_mu", 0.0, "prior mean of model M1");
    params.declare_double("m1_sigma2", 1.0, "prior variance of model M1");
    params.declare_double("m2_mu", 2.0, "prior mean of model M2");
    params.declare_double("m2_sigma2", 0.07, "prior variance of model M2");
    params.declare_int("lc_orderings", 100, "orderings for the learning curves");
  };
  def.run = [](const ExperimentContext& context) {
    const Params& p = context.params;
    const OrderedDataset train =
        draw_density_data(p.get_int("n_train"), p.get_double("u_true"), context.seed, 0);
    const OrderedDataset test =
        draw_density_data(p.get_int("n_test"), p.get_double("u_true"), context.seed, 1);

    // prior-variance sweep with mu fixed
    const int points = static_cast<int>(p.get_int("sigma2_points"));
    const double log_min = std::log(p.get_double("sigma2_min"));
    const double log_max = std::log(p.get_double("sigma2_max"));
    CsvWriter sweep(context.out_dir / "density_sigma_sweep.csv",
                    {"sigma2", "lml", "test_ll", "pred_mean", "pred_var"});
    double lml_at_10 = 0.0, lml_at_max = 0.0;
    bool decreasing_from_10 = true;
    bool seen_ge_10 = false;
    double previous_lml = 0.0;
    double mean_lo = 1e300, mean_hi = -1e300, var_lo = 1e300, var_hi = -1e300;
    for (int i = 0; i < points; ++i) {
      const double sigma2 =
          std::exp(log_min + (log_max - log_min) * i / std::max(points - 1, 1));
      const GaussianDensityModel model{p.get_double("sweep_mu"), sigma2};
      const double lml = density_lml(model, train).log_value;
      const GaussianDistribution predictive = density_predictive(model, train);
      double test_ll = 0.0;
      for (std::size_t t = 0; t < test.size(); ++t) {
        test_ll += predictive.log_density(test.scalar_value(t));
      }
      test_ll /= static_cast<double>(test.size());
      sweep.row({sigma2, lml, test_ll, predictive.scalar_mean(), predictive.scalar_variance()});

      if (sigma2 >= 10.0) {
        if (!seen_ge_10) {
          lml_at_10 = lml;
          seen_ge_10 = true;
        } else if (lml >= previous_lml) {
          decreasing_from_10 = false;
        }
        mean_lo = std::min(mean_lo, predictive.scalar_mean());
        mean_hi = std::max(mean_hi, predictive.scalar_mean());
        var_lo = std::min(var_lo, predictive.scalar_variance());
        var_hi = std::max(var_hi, predictive.scalar_variance());
        previous_lml = lml;
        lml_at_max = lml;
      }
    }

    // learning curves for the two comparison models
    const GaussianDensityModel m1{p.get_double("m1_mu"), p.get_double("m1_sigma2")};
    const GaussianDensityModel m2{p.get_double("m2_mu"), p.get_double("m2_sigma2")};
    const DensityEvidenceModel model1(m1, "M1");
    const DensityEvidenceModel model2(m2, "M2");
    const std::size_t orderings = static_cast<std::size_t>(p.get_int("lc_orderings"));
    const LearningCurve curve1 = learning_curve(
        model1, train, orderings, SeedSpec{Rng::child(context.seed, 2).next_u64()}, context.exec);
    const LearningCurve curve2 = learning_curve(
        model2, train, orderings, SeedSpec{Rng::child(context.seed, 3).next_u64()}, context.exec);
    write_curve_csv(context.out_dir / "density_learning_curve_m1.csv", curve1);
    write_curve_csv(context.out_dir / "density_learning_curve_m2.csv", curve2);

    bool m1_starts_lower = curve1.mean_log_pred[0] < curve2.mean_log_pred[0];
    bool m1_crosses_above = false;
    for (std::size_t i = 1; i < curve1.mean_log_pred.size(); ++i) {
      if (curve1.mean_log_pred[i] > curve2.mean_log_pred[i]) m1_crosses_above = true;
    }

    context.summary["lml_m1"] = density_lml(m1, train).log_value;
    context.summary["lml_m2"] = density_lml(m2, train).log_value;
    context.summary["lml_at_sigma2_10"] = lml_at_10;
    context.summary["lml_at_sigma2_max"] = lml_at_max;
    context.summary["lml_strictly_decreasing_from_10"] = decreasing_from_10;
    context.summary["pred_mean_rel_range"] = (mean_hi - mean_lo) / std::abs(mean_hi);
    context.summary["pred_var_rel_range"] = (var_hi - var_lo) / var_hi;
    context.summary["m1_starts_lower"] = m1_starts_lower;
    context.summary["m1_crosses_above_m2"] = m1_crosses_above;
  };
  return def;
}

}  // namespace lml::harness
