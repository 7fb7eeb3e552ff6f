#include "lml/optimize.hpp"

#include <algorithm>
#include <cmath>

namespace lml {

namespace {
Eigen::VectorXd clamp_to_box(Eigen::VectorXd x,
                             const std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& box) {
  if (box) x = x.cwiseMax(box->first).cwiseMin(box->second);
  return x;
}
}  // namespace

AscentResult ascend(const std::function<double(const Eigen::VectorXd&)>& objective,
                    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& gradient,
                    Eigen::VectorXd init, const AscentOptions& options,
                    const std::function<void(const Eigen::VectorXd&, double, double)>& on_accept) {
  constexpr double kArmijo = 1e-4;
  AscentResult result;
  result.x = clamp_to_box(std::move(init), options.box);
  result.value = objective(result.x);
  double step = options.initial_step;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    result.iterations = iter;
    const Eigen::VectorXd grad = gradient(result.x);
    const double grad_norm = grad.norm();
    if (on_accept) on_accept(result.x, result.value, grad_norm);
    if (!(grad_norm > options.grad_tolerance)) {
      result.converged = true;
      return result;
    }

    bool accepted = false;
    for (double t = step; t >= options.min_step; t *= 0.5) {
      const Eigen::VectorXd candidate = clamp_to_box(result.x + t * grad, options.box);
      const double decrease = grad.dot(candidate - result.x);
      if (decrease <= 0.0) continue;  // box clamp neutralized the step
      const double value = objective(candidate);
      if (std::isfinite(value) && value > result.value + kArmijo * decrease) {
        result.x = candidate;
        result.value = value;
        step = 2.0 * t;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No improving step along the gradient: at a local optimum (or the box
      // boundary) to line-search precision.
      result.converged = true;
      return result;
    }
  }
  result.converged = false;
  return result;
}

}  // namespace lml
