#include "lml/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace lml {

double kernel_value(const KernelSpec& spec, double squared_distance) {
  const double l2 = spec.lengthscale * spec.lengthscale;
  switch (spec.kind) {
    case KernelKind::rbf:
      return spec.output_scale * std::exp(-squared_distance / (2.0 * l2));
    case KernelKind::rq: {
      const double base = 1.0 + squared_distance / (2.0 * spec.alpha * l2);
      return spec.output_scale * std::exp(-spec.alpha * std::log(base));
    }
  }
  throw std::invalid_argument("unknown kernel kind");
}

double kernel_value_grad(const KernelSpec& spec, double squared_distance, KernelHyper hyper) {
  const double l2 = spec.lengthscale * spec.lengthscale;
  const double k = kernel_value(spec, squared_distance);
  switch (hyper) {
    case KernelHyper::log_output_scale:
      return k;
    case KernelHyper::log_lengthscale:
      if (spec.kind == KernelKind::rbf) {
        // dk/dl = k r^2 / l^3; times l for the log domain.
        return k * squared_distance / l2;
      } else {
        const double base = 1.0 + squared_distance / (2.0 * spec.alpha * l2);
        // dk/dl = s B^{-alpha-1} r^2 / l^3 (with s folded into k/B^{-alpha}).
        return k / base * squared_distance / l2;
      }
    case KernelHyper::log_alpha: {
      if (spec.kind != KernelKind::rq) return 0.0;
      const double base = 1.0 + squared_distance / (2.0 * spec.alpha * l2);
      // d(log k)/d(log alpha) = alpha (-log B + (B-1)/B)
      return k * spec.alpha * (-std::log(base) + (base - 1.0) / base);
    }
  }
  throw std::invalid_argument("unknown kernel hyper");
}

namespace {
template <class Fn>
Eigen::MatrixXd build(const Eigen::MatrixXd& x1, const Eigen::MatrixXd& x2, const Fn& fn) {
  if (x1.cols() != x2.cols()) throw std::invalid_argument("kernel point dimension mismatch");
  Eigen::MatrixXd out(x1.rows(), x2.rows());
  for (Eigen::Index i = 0; i < x1.rows(); ++i) {
    for (Eigen::Index j = 0; j < x2.rows(); ++j) {
      out(i, j) = fn((x1.row(i) - x2.row(j)).squaredNorm());
    }
  }
  return out;
}
}  // namespace

Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Eigen::MatrixXd& x1,
                              const Eigen::MatrixXd& x2) {
  return build(x1, x2, [&](double r2) { return kernel_value(spec, r2); });
}

Eigen::MatrixXd kernel_matrix_grad(const KernelSpec& spec, const Eigen::MatrixXd& x1,
                                   const Eigen::MatrixXd& x2, KernelHyper hyper) {
  return build(x1, x2, [&](double r2) { return kernel_value_grad(spec, r2, hyper); });
}

}  // namespace lml
