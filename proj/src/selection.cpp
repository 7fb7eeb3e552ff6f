#include "lml/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lml {

namespace {
struct MeanStderr {
  double mean = 0.0;
  double std_error = 0.0;
};

MeanStderr mean_and_stderr(const std::vector<double>& values) {
  const std::size_t n = values.size();
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  if (n < 2) return {mean, 0.0};
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return {mean, std::sqrt(var / static_cast<double>(n - 1) / static_cast<double>(n))};
}
}  // namespace

LearningCurve learning_curve(const EvidenceModel& model, const OrderedDataset& data,
                             std::size_t n_orderings, SeedSpec seed, Exec exec) {
  if (data.empty()) throw std::invalid_argument("learning_curve requires n >= 1");
  if (n_orderings < 1) throw std::invalid_argument("n_orderings must be >= 1");
  const std::size_t n = data.size();

  // One row of conditional log predictive densities per ordering.
  const std::vector<std::vector<double>> rows = indexed_map(
      n_orderings,
      [&](std::size_t r) {
        const OrderedDataset shuffled =
            n_orderings == 1 ? data : make_ordering(data, seed, r);
        std::vector<double> row(n);
        double previous = 0.0;  // log evidence of the empty prefix
        for (std::size_t i = 1; i <= n; ++i) {
          const double current = model.log_evidence(shuffled.prefix(i));
          row[i - 1] = current - previous;
          previous = current;
        }
        return row;
      },
      exec);

  LearningCurve curve;
  curve.n_orderings = n_orderings;
  curve.mean_log_pred.resize(n);
  curve.std_errors.resize(n);
  std::vector<double> column(n_orderings);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < n_orderings; ++r) column[r] = rows[r][i];
    const MeanStderr stats = mean_and_stderr(column);
    curve.mean_log_pred[i] = stats.mean;
    curve.std_errors[i] = stats.std_error;
  }
  return curve;
}

ConditionalEvidence clml(const EvidenceModel& model, const OrderedDataset& data, std::size_t m,
                         std::size_t n_orderings, SeedSpec seed, Exec exec) {
  if (m < 1 || m > data.size()) throw std::invalid_argument("clml cut-off must satisfy 1 <= m <= n");
  const double full = model.log_evidence(data);
  if (n_orderings == 0) {
    return {full - model.log_evidence(data.prefix(m - 1)), 0.0, 1};
  }
  const std::vector<double> values = indexed_map(
      n_orderings,
      [&](std::size_t r) {
        const OrderedDataset shuffled = make_ordering(data, seed, r);
        return full - model.log_evidence(shuffled.prefix(m - 1));
      },
      exec);
  const MeanStderr stats = mean_and_stderr(values);
  return {stats.mean, stats.std_error, n_orderings};
}

double clml_exhaustive(const EvidenceModel& model, const OrderedDataset& data, std::size_t m) {
  const std::size_t n = data.size();
  if (n > 8) throw std::invalid_argument("clml_exhaustive is restricted to n <= 8");
  if (m < 1 || m > n) throw std::invalid_argument("clml cut-off must satisfy 1 <= m <= n");
  const double full = model.log_evidence(data);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  std::size_t count = 0;
  do {
    total += full - model.log_evidence(data.with_ordering(perm).prefix(m - 1));
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / static_cast<double>(count);
}

ComparisonReport compare(std::span<const EvidenceModel* const> models, const OrderedDataset& data,
                         std::size_t m, std::size_t n_orderings, SeedSpec seed, Exec exec) {
  if (models.size() < 2) throw std::invalid_argument("compare needs at least two models");
  ComparisonReport report;
  for (const EvidenceModel* model : models) {
    ComparisonEntry entry;
    entry.id = model->id();
    entry.lml = model->log_evidence(data);
    const ConditionalEvidence conditional = clml(*model, data, m, n_orderings, seed, exec);
    entry.clml = conditional.log_value;
    entry.clml_std_error = conditional.ordering_std_error;
    report.models.push_back(std::move(entry));
  }
  const auto argmax = [&](auto value) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < report.models.size(); ++i) {
      if (value(report.models[i]) > value(report.models[best])) best = i;
      if (value(report.models[i]) == value(report.models[best]) && i != best)
        report.tie_broken = true;
    }
    return best;
  };
  report.preferred_by_lml = report.models[argmax([](const auto& e) { return e.lml; })].id;
  report.preferred_by_clml = report.models[argmax([](const auto& e) { return e.clml; })].id;
  return report;
}

std::optional<std::size_t> crossover_scan(const EvidenceModel& a, const EvidenceModel& b,
                                          const OrderedDataset& data,
                                          std::span<const std::size_t> schedule, Exec exec) {
  if (schedule.empty()) throw std::invalid_argument("crossover schedule is empty");
  for (std::size_t n : schedule) {
    if (n < 1 || n > data.size()) throw std::invalid_argument("schedule entry out of range");
  }
  const std::vector<int> preferences = indexed_map(
      schedule.size(),
      [&](std::size_t i) {
        const OrderedDataset prefix = data.prefix(schedule[i]);
        return a.log_evidence(prefix) >= b.log_evidence(prefix) ? 0 : 1;
      },
      exec);
  for (std::size_t i = 1; i < preferences.size(); ++i) {
    if (preferences[i] != preferences[0]) return schedule[i];
  }
  return std::nullopt;
}

std::vector<MSweepRow> clml_m_sweep(std::span<const EvidenceModel* const> models,
                                    const OrderedDataset& data, std::span<const std::size_t> m_values,
                                    std::size_t n_orderings, SeedSpec seed, Exec exec) {
  if (models.empty()) throw std::invalid_argument("clml_m_sweep needs at least one model");
  std::vector<MSweepRow> rows;
  for (std::size_t m : m_values) {
    MSweepRow row;
    row.m = m;
    for (const EvidenceModel* model : models) {
      row.clml_per_model.push_back(clml(*model, data, m, n_orderings, seed, exec).log_value);
    }
    const std::size_t best = static_cast<std::size_t>(
        std::max_element(row.clml_per_model.begin(), row.clml_per_model.end()) -
        row.clml_per_model.begin());
    row.preferred = models[best]->id();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lml
