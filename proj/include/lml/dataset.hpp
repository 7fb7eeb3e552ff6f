#ifndef LMLKIT_DATASET_HPP
#define LMLKIT_DATASET_HPP

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <vector>

#include "lml/rng.hpp"

namespace lml {

/// One observation: an input vector (possibly empty for pure density models)
/// and an optional scalar target.
struct Observation {
  Eigen::VectorXd x;
  std::optional<double> y;
};

/// A dataset with an explicit visiting order. Points are stored once; the
/// ordering is a bijection on {0, ..., n-1} that all sequential quantities
/// (prefixes, learning curves, CLML cut-offs) respect. Immutable after
/// construction and safe to share across threads.
class OrderedDataset {
 public:
  OrderedDataset() = default;
  explicit OrderedDataset(std::vector<Observation> points);
  OrderedDataset(std::vector<Observation> points, std::vector<std::size_t> ordering);

  /// Scalar observations without targets (density models).
  static OrderedDataset from_scalars(const std::vector<double>& values);
  /// Scalar inputs with scalar targets (regression models).
  static OrderedDataset from_xy(const std::vector<double>& xs, const std::vector<double>& ys);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  /// i-th point under the ordering.
  const Observation& point(std::size_t i) const { return points_[ordering_[i]]; }
  const std::vector<std::size_t>& ordering() const { return ordering_; }

  /// First m points under the ordering, as a new dataset with identity order.
  OrderedDataset prefix(std::size_t m) const;

  /// Same points under a different ordering.
  OrderedDataset with_ordering(std::vector<std::size_t> ordering) const;

  /// Scalar views in ordering order. Throw if a point is not scalar / has no target.
  Eigen::VectorXd scalar_values() const;  ///< x values of dimension-1 points
  Eigen::VectorXd targets() const;
  double scalar_value(std::size_t i) const;

 private:
  std::vector<Observation> points_;
  std::vector<std::size_t> ordering_;
};

/// Same points under a uniformly random permutation determined solely by
/// (seed, index). Pure function; the input dataset is unmodified.
OrderedDataset make_ordering(const OrderedDataset& dataset, SeedSpec seed, std::uint64_t index);

}  // namespace lml

#endif  // LMLKIT_DATASET_HPP
