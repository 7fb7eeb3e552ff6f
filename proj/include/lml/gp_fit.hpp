#ifndef LMLKIT_GP_FIT_HPP
#define LMLKIT_GP_FIT_HPP

#include <utility>
#include <vector>

#include "lml/gp.hpp"
#include "lml/parallel.hpp"

namespace lml {

enum class FitObjective { lml, clml };

struct FitOptions {
  FitObjective objective = FitObjective::lml;
  HyperMask free;
  std::size_t clml_m = 1;          ///< CLML cut-off (ignored for lml)
  std::size_t clml_orderings = 1;  ///< 0 = identity ordering
  int restarts = 3;
  int max_iterations = 200;
  double grad_tolerance = 1e-6;
  /// Box for the log-domain hypers; mean parameters are unconstrained.
  double hyper_log_lower = -4.605170185988091;  // log 1e-2
  double hyper_log_upper = 9.210340371976184;   // log 1e4
  SeedSpec seed;
};

struct TraceEntry {
  Eigen::VectorXd params;  ///< packed free parameters (log domain for hypers)
  double objective = 0.0;
  double grad_norm = 0.0;
};

struct HyperOptTrace {
  std::vector<TraceEntry> iterations;  ///< accepted iterates of the best restart
  bool converged = false;
  FitObjective objective = FitObjective::lml;
};

/// Ascent on the chosen objective over the free parameters. Restart 0 starts
/// from `init`; later restarts perturb it with seed-derived noise and may run
/// in parallel. Returns the best-of-restarts model with the trace of the
/// winning restart; deterministic given the seed.
std::pair<GPModel, HyperOptTrace> fit_hypers(const GPModel& init, const OrderedDataset& data,
                                             const FitOptions& options,
                                             Exec exec = default_exec());

}  // namespace lml

#endif  // LMLKIT_GP_FIT_HPP
