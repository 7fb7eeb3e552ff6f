#include <cmath>
#include <vector>

#include "csv.hpp"
#include "experiments.hpp"
#include "lml/pac_bayes.hpp"
#include "lml/param_model.hpp"

namespace lml::harness {

ExperimentDef pac_bayes_experiment() {
  ExperimentDef def;
  def.name = "pac-bayes";
  def.description = "evidence/KL PAC-Bayes bounds on the clipped Gaussian-mean model";
  def.default_seed = 17;
  def.declare = [](Params& params) {
    params.declare_int("n", 30, "training points per trial");
    params.declare_double("loss_lower", 0.9, "clip lower bound a (nats)");
    params.declare_double("loss_upper", 1.9, "clip upper bound b (nats)");
    params.declare_double("delta", 0.05, "confidence parameter");
    params.declare_int("trials", 100, "frequentist coverage trials");
    params.declare_int("risk_samples", 2000, "posterior samples per risk estimate");
    params.declare_int("fresh_points", 50, "held-out points per posterior sample");
    params.declare_int("pac_m", 25, "cut-off for the conditional-evidence bound");
    params.declare_double_list("union_ks", "1,10,100", "union-bound adjustments reported");
    params.declare_int("evidence_grid_points", 50, "grid for the monotonicity table");
  };
  def.run = [](const ExperimentContext& context) {
    const Params& p = context.params;
    const GaussianDensityModel model{0.0, 1.0};
    const double a = p.get_double("loss_lower");
    const double b = p.get_double("loss_upper");
    const double delta = p.get_double("delta");
    const std::size_t n = static_cast<std::size_t>(p.get_int("n"));
    const std::size_t trials = static_cast<std::size_t>(p.get_int("trials"));
    const std::size_t pac_m = static_cast<std::size_t>(p.get_int("pac_m"));

    struct Trial {
      double risk = 0.0;
      double germain = 0.0, germain_clml = 0.0, mcallester = 0.0;
      BoundInputs inputs;
    };
    const std::vector<Trial> outcomes = indexed_map(
        trials,
        [&](std::size_t trial) {
          Rng rng = Rng::child(context.seed, trial);
          const double u_true = rng.normal(0.0, 1.0);
          std::vector<double> train(n);
          for (auto& v : train) v = rng.normal(u_true, 1.0);
          const OrderedDataset data = OrderedDataset::from_scalars(train);

          Trial out;
          out.inputs = empirical_pac_inputs(
              model, data, a, b, static_cast<std::size_t>(p.get_int("risk_samples")),
              SeedSpec{Rng::child(context.seed, trial, 1).next_u64()}, delta, pac_m, Exec::serial);
          out.germain = germain_lml_bound(out.inputs).bound_value;
          out.germain_clml = germain_clml_bound(out.inputs).bound_value;
          out.mcallester = mcallester_bound(out.inputs).bound_value;

          // held-out risk of posterior samples on fresh data
          const ClippedDensityParamModel clipped(model, a, b);
          const GaussianDistribution posterior = density_posterior(model, data);
          Rng heldout = Rng::child(context.seed, trial, 2);
          const int samples = static_cast<int>(p.get_int("risk_samples"));
          const int fresh = static_cast<int>(p.get_int("fresh_points"));
          double risk = 0.0;
          for (int s = 0; s < samples; ++s) {
            const double u = posterior.sample(heldout)[0];
            for (int f = 0; f < fresh; ++f) {
              risk += clipped.clipped_nll(heldout.normal(u_true, 1.0), u);
            }
          }
          out.risk = risk / (static_cast<double>(samples) * fresh);
          return out;
        },
        context.exec);

    CsvWriter coverage(context.out_dir / "pac_coverage.csv",
                       {"trial", "risk", "germain_bound", "germain_clml_bound",
                        "mcallester_bound", "germain_violated", "mcallester_violated"});
    int germain_violations = 0, mcallester_violations = 0;
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
      const Trial& out = outcomes[t];
      const bool gv = out.risk > out.germain;
      const bool mv = out.risk > out.mcallester;
      germain_violations += gv;
      mcallester_violations += mv;
      coverage.row({static_cast<std::int64_t>(t), out.risk, out.germain, out.germain_clml,
                    out.mcallester, static_cast<std::int64_t>(gv), static_cast<std::int64_t>(mv)});
    }

    // bounds table on the first trial's inputs, with union adjustments
    CsvWriter bounds(context.out_dir / "pac_bounds.csv",
                     {"kind", "union_k", "delta", "n", "a", "b", "kl", "empirical_risk",
                      "log_evidence", "log_conditional_evidence", "m", "bound"});
    const BoundInputs& first = outcomes[0].inputs;
    const std::vector<BoundReport> base = {mcallester_bound(first), germain_lml_bound(first),
                                           germain_clml_bound(first)};
    for (const BoundReport& report : base) {
      for (double k_real : p.get_double_list("union_ks")) {
        const BoundReport adjusted = union_adjust(report, static_cast<std::size_t>(k_real));
        bounds.row({to_string(adjusted.kind), static_cast<std::int64_t>(adjusted.union_k),
                    adjusted.inputs.delta, static_cast<std::int64_t>(adjusted.inputs.n),
                    adjusted.inputs.loss_lower, adjusted.inputs.loss_upper,
                    *adjusted.inputs.kl, *adjusted.inputs.empirical_risk,
                    *adjusted.inputs.log_evidence, *adjusted.inputs.log_conditional_evidence,
                    static_cast<std::int64_t>(*adjusted.inputs.m), adjusted.bound_value});
      }
    }

    // monotonicity of the evidence bound over a synthetic evidence grid
    CsvWriter monotonic(context.out_dir / "pac_monotonicity.csv", {"log_evidence", "bound"});
    bool monotone = true;
    double previous = std::numeric_limits<double>::infinity();
    const int grid = static_cast<int>(p.get_int("evidence_grid_points"));
    for (int i = 0; i < grid; ++i) {
      BoundInputs inputs;
      inputs.n = n;
      inputs.delta = delta;
      inputs.loss_lower = a;
      inputs.loss_upper = b;
      inputs.log_evidence = -static_cast<double>(n) * (b - (b - a) * i / (grid - 1.0));
      const double value = germain_lml_bound(inputs).bound_value;
      monotonic.row({*inputs.log_evidence, value});
      if (value >= previous) monotone = false;
      previous = value;
    }

    // McAllester union identity: delta/k equals kl + log k
    const BoundReport adjusted = union_adjust(base[0], 10);
    BoundInputs shifted = first;
    shifted.kl = *first.kl + std::log(10.0);
    context.summary["union_identity_gap"] =
        std::abs(adjusted.bound_value - mcallester_bound(shifted).bound_value);
    context.summary["germain_violations"] = germain_violations;
    context.summary["mcallester_violations"] = mcallester_violations;
    context.summary["trials"] = trials;
    context.summary["evidence_bound_monotone"] = monotone;
  };
  return def;
}

}  // namespace lml::harness
