#include "lml/gp_fit.hpp"

#include <cmath>
#include <stdexcept>

#include "lml/optimize.hpp"

namespace lml {

namespace {

// Number of leading packed entries that live in the log domain (the box
// constraint applies only to those).
Eigen::Index hyper_count(const HyperMask& mask) {
  Eigen::Index count = 0;
  if (mask.lengthscale) ++count;
  if (mask.output_scale) ++count;
  if (mask.alpha) ++count;
  if (mask.noise) ++count;
  return count;
}

struct Objective {
  const GPModel* base;
  const OrderedDataset* data;
  const FitOptions* options;
  std::vector<OrderedDataset> prefixes;  // CLML conditioning prefixes, fixed across evals

  double value(const Eigen::VectorXd& params) const {
    const GPModel model = unpack_params(*base, options->free, params);
    const double full = gp_lml(model, *data).log_value;
    if (options->objective == FitObjective::lml) return full;
    double total = 0.0;
    for (const OrderedDataset& prefix : prefixes) total += full - gp_lml(model, prefix).log_value;
    return total / static_cast<double>(prefixes.size());
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& params) const {
    const GPModel model = unpack_params(*base, options->free, params);
    const Eigen::VectorXd full = gp_lml_grad(model, *data, options->free);
    if (options->objective == FitObjective::lml) return full;
    Eigen::VectorXd total = Eigen::VectorXd::Zero(full.size());
    for (const OrderedDataset& prefix : prefixes) {
      if (prefix.empty()) {
        total += full;
      } else {
        total += full - gp_lml_grad(model, prefix, options->free);
      }
    }
    return total / static_cast<double>(prefixes.size());
  }
};

Eigen::VectorXd perturb_start(const Eigen::VectorXd& init, const GPModel& base,
                              const FitOptions& options, int restart) {
  Eigen::VectorXd start = init;
  Rng rng = Rng::child(options.seed, 0x7e57, static_cast<std::uint64_t>(restart));
  const Eigen::Index n_hypers = hyper_count(options.free);
  for (Eigen::Index i = 0; i < n_hypers; ++i) start[i] += rng.normal();
  if (options.free.mean) {
    if (std::holds_alternative<ConstantMean>(base.mean)) {
      start[n_hypers] += rng.normal();
    } else {
      // Fresh fan-in init for MLP weights rather than a perturbation.
      const auto& arch = std::get<MlpMean>(base.mean).arch;
      start.segment(n_hypers, start.size() - n_hypers) = mlp_init_weights(arch, rng);
    }
  }
  return start;
}

}  // namespace

std::pair<GPModel, HyperOptTrace> fit_hypers(const GPModel& init, const OrderedDataset& data,
                                             const FitOptions& options, Exec exec) {
  if (packed_size(init, options.free) == 0) throw std::invalid_argument("free mask is empty");
  if (options.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (options.objective == FitObjective::clml &&
      (options.clml_m < 1 || options.clml_m > data.size())) {
    throw std::invalid_argument("clml cut-off must satisfy 1 <= m <= n");
  }

  Objective objective{&init, &data, &options, {}};
  if (options.objective == FitObjective::clml) {
    const std::size_t count = std::max<std::size_t>(options.clml_orderings, 1);
    for (std::size_t r = 0; r < count; ++r) {
      const OrderedDataset shuffled =
          options.clml_orderings == 0 ? data : make_ordering(data, options.seed, r);
      objective.prefixes.push_back(shuffled.prefix(options.clml_m - 1));
    }
  }

  const Eigen::VectorXd init_params = pack_params(init, options.free);
  const Eigen::Index n_hypers = hyper_count(options.free);

  AscentOptions ascent_options;
  ascent_options.max_iterations = options.max_iterations;
  ascent_options.grad_tolerance = options.grad_tolerance;
  ascent_options.initial_step = 0.1;
  {
    const double big = 1e100;
    Eigen::VectorXd lower = Eigen::VectorXd::Constant(init_params.size(), -big);
    Eigen::VectorXd upper = Eigen::VectorXd::Constant(init_params.size(), big);
    lower.head(n_hypers).setConstant(options.hyper_log_lower);
    upper.head(n_hypers).setConstant(options.hyper_log_upper);
    ascent_options.box = {std::move(lower), std::move(upper)};
  }

  struct RestartOutcome {
    AscentResult result;
    std::vector<TraceEntry> trace;
  };
  const std::vector<RestartOutcome> outcomes = indexed_map(
      static_cast<std::size_t>(options.restarts),
      [&](std::size_t restart) {
        const Eigen::VectorXd start =
            restart == 0 ? init_params
                         : perturb_start(init_params, init, options, static_cast<int>(restart));
        RestartOutcome outcome;
        outcome.result = ascend(
            [&](const Eigen::VectorXd& p) { return objective.value(p); },
            [&](const Eigen::VectorXd& p) { return objective.gradient(p); }, start, ascent_options,
            [&](const Eigen::VectorXd& p, double value, double grad_norm) {
              outcome.trace.push_back({p, value, grad_norm});
            });
        return outcome;
      },
      exec);

  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r) {
    if (outcomes[r].result.value > outcomes[best].result.value) best = r;
  }
  HyperOptTrace trace;
  trace.iterations = outcomes[best].trace;
  trace.converged = outcomes[best].result.converged;
  trace.objective = options.objective;
  return {unpack_params(init, options.free, outcomes[best].result.x), std::move(trace)};
}

}  // namespace lml
