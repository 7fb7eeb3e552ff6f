#ifndef LMLKIT_OPTIMIZE_HPP
#define LMLKIT_OPTIMIZE_HPP

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <utility>

namespace lml {

struct AscentOptions {
  int max_iterations = 200;
  double grad_tolerance = 1e-7;
  double initial_step = 1.0;
  double min_step = 1e-14;
  /// Optional box constraint; candidate points are clamped componentwise.
  std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> box;
};

struct AscentResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Gradient ascent with a backtracking line search and a multiplicative step
/// adapter: the accepted step seeds the next iteration (grown 2x), rejected
/// steps halve. Accepted steps satisfy an Armijo increase condition, so the
/// objective is non-decreasing along the iterate sequence. The optional
/// callback observes every accepted iterate (params, value, grad norm).
AscentResult ascend(
    const std::function<double(const Eigen::VectorXd&)>& objective,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& gradient,
    Eigen::VectorXd init, const AscentOptions& options,
    const std::function<void(const Eigen::VectorXd&, double, double)>& on_accept = nullptr);

}  // namespace lml

#endif  // LMLKIT_OPTIMIZE_HPP
