#ifndef LMLKIT_SELECTION_HPP
#define LMLKIT_SELECTION_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lml/dataset.hpp"
#include "lml/density_model.hpp"
#include "lml/evidence.hpp"
#include "lml/fourier_model.hpp"
#include "lml/gp.hpp"
#include "lml/parallel.hpp"

namespace lml {

/// A model that can evaluate its exact log evidence on any prefix of a
/// dataset (including the empty one). Everything in this module is built on
/// this handle.
class EvidenceModel {
 public:
  virtual ~EvidenceModel() = default;
  virtual double log_evidence(const OrderedDataset& data) const = 0;
  virtual std::string id() const = 0;
};

class DensityEvidenceModel final : public EvidenceModel {
 public:
  DensityEvidenceModel(GaussianDensityModel model, std::string id)
      : model_(model), id_(std::move(id)) {}
  double log_evidence(const OrderedDataset& data) const override {
    return density_lml(model_, data).log_value;
  }
  std::string id() const override { return id_; }
  const GaussianDensityModel& model() const { return model_; }

 private:
  GaussianDensityModel model_;
  std::string id_;
};

class FourierEvidenceModel final : public EvidenceModel {
 public:
  FourierEvidenceModel(FourierRegressionModel model, std::string id)
      : model_(std::move(model)), id_(std::move(id)) {}
  double log_evidence(const OrderedDataset& data) const override {
    return fourier_lml(model_, data).log_value;
  }
  std::string id() const override { return id_; }
  const FourierRegressionModel& model() const { return model_; }

 private:
  FourierRegressionModel model_;
  std::string id_;
};

class GPEvidenceModel final : public EvidenceModel {
 public:
  GPEvidenceModel(GPModel model, std::string id) : model_(std::move(model)), id_(std::move(id)) {}
  double log_evidence(const OrderedDataset& data) const override {
    return gp_lml(model_, data).log_value;
  }
  std::string id() const override { return id_; }
  const GPModel& model() const { return model_; }

 private:
  GPModel model_;
  std::string id_;
};

/// Mean conditional log predictive density log p(D_i | D_<i) per index,
/// averaged over orderings, with the across-ordering standard error. The sum
/// over one ordering telescopes to that ordering's log evidence.
struct LearningCurve {
  std::vector<double> mean_log_pred;
  std::vector<double> std_errors;
  std::size_t n_orderings = 0;
};

LearningCurve learning_curve(const EvidenceModel& model, const OrderedDataset& data,
                             std::size_t n_orderings, SeedSpec seed, Exec exec = default_exec());

/// CLML as the prefix difference lml(full) - lml(prefix(m-1)), averaged over
/// orderings (0 = identity ordering). The across-ordering spread is stored in
/// ordering_std_error; the estimate itself is exact per ordering.
struct ConditionalEvidence {
  double log_value = 0.0;
  double ordering_std_error = 0.0;
  std::size_t n_orderings = 1;
};

ConditionalEvidence clml(const EvidenceModel& model, const OrderedDataset& data, std::size_t m,
                         std::size_t n_orderings, SeedSpec seed, Exec exec = default_exec());

/// Average over all n! permutations; test oracle, n <= 8 only.
double clml_exhaustive(const EvidenceModel& model, const OrderedDataset& data, std::size_t m);

struct ComparisonEntry {
  std::string id;
  double lml = 0.0;
  double clml = 0.0;
  double clml_std_error = 0.0;
};

/// Ties broken toward the earlier-listed model (recorded in tie_broken).
struct ComparisonReport {
  std::vector<ComparisonEntry> models;
  std::string preferred_by_lml;
  std::string preferred_by_clml;
  bool tie_broken = false;
};

ComparisonReport compare(std::span<const EvidenceModel* const> models, const OrderedDataset& data,
                         std::size_t m, std::size_t n_orderings, SeedSpec seed,
                         Exec exec = default_exec());

/// Smallest prefix size in the schedule at which the LML preference between
/// the two models flips away from its value at the first schedule point.
std::optional<std::size_t> crossover_scan(const EvidenceModel& a, const EvidenceModel& b,
                                          const OrderedDataset& data,
                                          std::span<const std::size_t> schedule,
                                          Exec exec = default_exec());

struct MSweepRow {
  std::size_t m = 0;
  std::vector<double> clml_per_model;
  std::string preferred;
};

std::vector<MSweepRow> clml_m_sweep(std::span<const EvidenceModel* const> models,
                                    const OrderedDataset& data, std::span<const std::size_t> m_values,
                                    std::size_t n_orderings, SeedSpec seed,
                                    Exec exec = default_exec());

}  // namespace lml

#endif  // LMLKIT_SELECTION_HPP
