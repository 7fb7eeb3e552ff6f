#include "lml/evidence.hpp"

namespace lml {

std::string to_string(EvidenceMethod method) {
  switch (method) {
    case EvidenceMethod::exact: return "exact";
    case EvidenceMethod::quadrature: return "quadrature";
    case EvidenceMethod::laplace: return "laplace";
    case EvidenceMethod::bic: return "bic";
    case EvidenceMethod::elbo: return "elbo";
    case EvidenceMethod::likelihood_weighting: return "likelihood_weighting";
    case EvidenceMethod::importance_sampling: return "importance_sampling";
  }
  return "unknown";
}

}  // namespace lml
