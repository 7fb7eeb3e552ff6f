#include "lml/sine_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lml {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
}

double sine_log_likelihood(const OrderedDataset& data, double w) {
  const double mean = std::sin(w);
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = data.scalar_value(i) - mean;
    total += -0.5 * (kLog2Pi + r * r);
  }
  return total;
}

double sine_log_joint(const PeriodicSineModel& model, const OrderedDataset& data, double w) {
  if (model.prior_half_width <= 0.0) throw std::invalid_argument("prior_half_width must be > 0");
  if (std::abs(w) > model.prior_half_width) return -std::numeric_limits<double>::infinity();
  return sine_log_likelihood(data, w) - std::log(2.0 * model.prior_half_width);
}

}  // namespace lml
