#ifndef LMLKIT_PAC_BAYES_HPP
#define LMLKIT_PAC_BAYES_HPP

#include <cstddef>
#include <optional>
#include <string>

#include "lml/dataset.hpp"
#include "lml/density_model.hpp"
#include "lml/parallel.hpp"
#include "lml/rng.hpp"

namespace lml {

/// Everything a bound evaluation needs. The loss is the per-point negative
/// log-likelihood in nats, assumed bounded in [loss_lower, loss_upper]
/// (realized by clipping). A single instance may carry the KL/risk pair, the
/// log evidence, and the conditional evidence side by side; each bound reads
/// the fields it needs.
struct BoundInputs {
  std::size_t n = 0;
  double delta = 0.05;      ///< confidence parameter, 0 < delta <= 1
  double loss_lower = 0.0;  ///< a
  double loss_upper = 1.0;  ///< b
  std::optional<double> kl;
  std::optional<double> empirical_risk;
  std::optional<double> log_evidence;
  std::optional<double> log_conditional_evidence;
  std::optional<std::size_t> m;  ///< CLML cut-off

  void validate() const;
};

enum class BoundKind { mcallester, germain_lml, germain_clml };

std::string to_string(BoundKind kind);

struct BoundReport {
  double bound_value = 0.0;
  BoundKind kind = BoundKind::mcallester;
  BoundInputs inputs;      ///< echo of the inputs (original delta)
  std::size_t union_k = 1; ///< 1 when unadjusted
};

/// risk + sqrt((kl + log(n/delta) + 2) / (2n - 1)).
BoundReport mcallester_bound(const BoundInputs& inputs);

/// a + (b-a)/(1-e^{a-b}) [1 - e^a (p(D|M) delta)^{1/n}], with the root taken
/// as exp((log_evidence + log delta)/n). Extended-precision accumulation for
/// the bracket.
BoundReport germain_lml_bound(const BoundInputs& inputs);

/// Same form with exponent 1/(n - m + 1) and the conditional evidence.
BoundReport germain_clml_bound(const BoundInputs& inputs);

/// Recomputes the report's bound with delta replaced by delta/k (certifying k
/// models simultaneously). For the McAllester bound this is identical to
/// adding log k to the KL term.
BoundReport union_adjust(const BoundReport& report, std::size_t k);

/// Empirical linkage for the conjugate Gaussian-mean model with the per-point
/// NLL clipped to [a, b]:
///  - empirical_risk: E over analytic-posterior samples of the mean clipped
///    NLL on the data (n_samples draws, seeded),
///  - kl: KL(posterior || prior) in closed form,
///  - log_evidence: evidence of the *clipped* model by quadrature, so the
///    bounded-loss hypothesis of the evidence bound genuinely holds,
///  - log_conditional_evidence at cut-off m: clipped evidence difference.
BoundInputs empirical_pac_inputs(const GaussianDensityModel& model, const OrderedDataset& data,
                                 double a, double b, std::size_t n_samples, SeedSpec seed,
                                 double delta = 0.05, std::optional<std::size_t> m = std::nullopt,
                                 Exec exec = default_exec());

}  // namespace lml

#endif  // LMLKIT_PAC_BAYES_HPP
