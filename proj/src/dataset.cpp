#include "lml/dataset.hpp"

#include <algorithm>
#include <stdexcept>

namespace lml {

namespace {
std::vector<std::size_t> identity_ordering(std::size_t n) {
  std::vector<std::size_t> ordering(n);
  for (std::size_t i = 0; i < n; ++i) ordering[i] = i;
  return ordering;
}

void check_bijection(const std::vector<std::size_t>& ordering, std::size_t n) {
  if (ordering.size() != n) throw std::invalid_argument("ordering size does not match point count");
  std::vector<bool> seen(n, false);
  for (std::size_t idx : ordering) {
    if (idx >= n || seen[idx]) throw std::invalid_argument("ordering is not a bijection on {0..n-1}");
    seen[idx] = true;
  }
}
}  // namespace

OrderedDataset::OrderedDataset(std::vector<Observation> points)
    : points_(std::move(points)), ordering_(identity_ordering(points_.size())) {}

OrderedDataset::OrderedDataset(std::vector<Observation> points, std::vector<std::size_t> ordering)
    : points_(std::move(points)), ordering_(std::move(ordering)) {
  check_bijection(ordering_, points_.size());
}

OrderedDataset OrderedDataset::from_scalars(const std::vector<double>& values) {
  std::vector<Observation> points(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    points[i].x = Eigen::VectorXd::Constant(1, values[i]);
  }
  return OrderedDataset(std::move(points));
}

OrderedDataset OrderedDataset::from_xy(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("xs and ys must have equal length");
  std::vector<Observation> points(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    points[i].x = Eigen::VectorXd::Constant(1, xs[i]);
    points[i].y = ys[i];
  }
  return OrderedDataset(std::move(points));
}

OrderedDataset OrderedDataset::prefix(std::size_t m) const {
  if (m > size()) throw std::invalid_argument("prefix length exceeds dataset size");
  std::vector<Observation> points(m);
  for (std::size_t i = 0; i < m; ++i) points[i] = point(i);
  return OrderedDataset(std::move(points));
}

OrderedDataset OrderedDataset::with_ordering(std::vector<std::size_t> ordering) const {
  return OrderedDataset(points_, std::move(ordering));
}

Eigen::VectorXd OrderedDataset::scalar_values() const {
  Eigen::VectorXd values(size());
  for (std::size_t i = 0; i < size(); ++i) values[i] = scalar_value(i);
  return values;
}

double OrderedDataset::scalar_value(std::size_t i) const {
  const Observation& obs = point(i);
  if (obs.x.size() != 1) throw std::invalid_argument("observation is not scalar");
  return obs.x[0];
}

Eigen::VectorXd OrderedDataset::targets() const {
  Eigen::VectorXd values(size());
  for (std::size_t i = 0; i < size(); ++i) {
    const Observation& obs = point(i);
    if (!obs.y) throw std::invalid_argument("observation has no target");
    values[i] = *obs.y;
  }
  return values;
}

OrderedDataset make_ordering(const OrderedDataset& dataset, SeedSpec seed, std::uint64_t index) {
  if (dataset.empty()) throw std::invalid_argument("make_ordering requires n >= 1");
  Rng rng = Rng::child(seed, index);
  return dataset.with_ordering(rng.permutation(dataset.size()));
}

}  // namespace lml
