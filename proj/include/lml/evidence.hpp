#ifndef LMLKIT_EVIDENCE_HPP
#define LMLKIT_EVIDENCE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace lml {

enum class EvidenceMethod {
  exact,
  quadrature,
  laplace,
  bic,
  elbo,
  likelihood_weighting,
  importance_sampling,
};

std::string to_string(EvidenceMethod method);

struct EvidenceDiagnostics {
  double std_error = 0.0;            ///< log-domain standard error
  double effective_sample_size = 0.0;
  std::int64_t n_samples = 0;
  bool unreliable = false;           ///< set when ESS < 2
};

/// A log-evidence value (nats) together with how it was obtained.
struct EvidenceEstimate {
  double log_value = 0.0;
  EvidenceMethod method = EvidenceMethod::exact;
  std::optional<EvidenceDiagnostics> diagnostics;

  EvidenceEstimate() = default;
  EvidenceEstimate(double log_value_in, EvidenceMethod method_in,
                   std::optional<EvidenceDiagnostics> diagnostics_in = std::nullopt)
      : log_value(log_value_in), method(method_in), diagnostics(std::move(diagnostics_in)) {
    // exact/quadrature values carry no sampling error by definition
    if ((method == EvidenceMethod::exact || method == EvidenceMethod::quadrature) && diagnostics &&
        diagnostics->std_error != 0.0) {
      throw std::invalid_argument("exact/quadrature estimates cannot carry a std error");
    }
  }
};

}  // namespace lml

#endif  // LMLKIT_EVIDENCE_HPP
