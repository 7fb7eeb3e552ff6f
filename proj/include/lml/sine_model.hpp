#ifndef LMLKIT_SINE_MODEL_HPP
#define LMLKIT_SINE_MODEL_HPP

#include "lml/dataset.hpp"

namespace lml {

/// 1-D periodic model: x ~ N(sin(w), 1) with w ~ Uniform[-alpha, alpha].
struct PeriodicSineModel {
  double prior_half_width = 3.141592653589793;  ///< alpha > 0
};

/// sum_i log N(x_i; sin w, 1) (no prior term).
double sine_log_likelihood(const OrderedDataset& data, double w);

/// Log joint: likelihood plus log(1/(2 alpha)) inside the support, -inf outside.
double sine_log_joint(const PeriodicSineModel& model, const OrderedDataset& data, double w);

}  // namespace lml

#endif  // LMLKIT_SINE_MODEL_HPP
