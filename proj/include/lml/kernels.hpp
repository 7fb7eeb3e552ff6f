#ifndef LMLKIT_KERNELS_HPP
#define LMLKIT_KERNELS_HPP

#include <Eigen/Core>

namespace lml {

enum class KernelKind { rbf, rq };

/// Stationary kernel with squared-exponential or rational-quadratic shape:
///   rbf: k(r) = output_scale * exp(-r^2 / (2 l^2))
///   rq:  k(r) = output_scale * (1 + r^2 / (2 alpha l^2))^(-alpha)
/// alpha only participates for the rq kind; rq -> rbf as alpha -> inf.
struct KernelSpec {
  KernelKind kind = KernelKind::rbf;
  double lengthscale = 1.0;
  double output_scale = 1.0;
  double alpha = 1.0;
};

/// Which log-domain hyperparameter a kernel derivative is taken in.
enum class KernelHyper { log_lengthscale, log_output_scale, log_alpha };

double kernel_value(const KernelSpec& spec, double squared_distance);

/// dk/d(log hyper) at the given squared distance.
double kernel_value_grad(const KernelSpec& spec, double squared_distance, KernelHyper hyper);

/// Gram matrix between row-point sets (n1 x d and n2 x d).
Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Eigen::MatrixXd& x1,
                              const Eigen::MatrixXd& x2);

/// Elementwise dK/d(log hyper) between row-point sets.
Eigen::MatrixXd kernel_matrix_grad(const KernelSpec& spec, const Eigen::MatrixXd& x1,
                                   const Eigen::MatrixXd& x2, KernelHyper hyper);

}  // namespace lml

#endif  // LMLKIT_KERNELS_HPP
