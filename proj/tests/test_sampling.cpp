#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <cmath>
#include <numbers>

#include "lml/density_model.hpp"
#include "lml/errors.hpp"
#include "lml/sampling.hpp"
#include "oracles.hpp"

using namespace lml;

namespace {
constexpr double kPi = std::numbers::pi;

// Likelihood identically c regardless of w; prior N(0,1).
class ConstantLikelihoodModel final : public DifferentiableModel {
 public:
  explicit ConstantLikelihoodModel(double log_c) : log_c_(log_c) {}
  Eigen::Index dim() const override { return 1; }
  double log_likelihood(const OrderedDataset&, const Eigen::VectorXd&) const override {
    return log_c_;
  }
  double log_prior(const Eigen::VectorXd& w) const override {
    return -0.5 * (std::log(2 * kPi) + w.squaredNorm());
  }
  PriorKind prior_kind() const override { return PriorKind::gaussian; }
  GaussianDistribution prior_gaussian() const override {
    return GaussianDistribution::scalar(0.0, 1.0);
  }
  Eigen::VectorXd sample_prior(Rng& rng) const override { return prior_gaussian().sample(rng); }

 private:
  double log_c_;
};

// Likelihood zero everywhere (degenerate-estimate path).
class ZeroLikelihoodModel final : public DifferentiableModel {
 public:
  Eigen::Index dim() const override { return 1; }
  double log_likelihood(const OrderedDataset&, const Eigen::VectorXd&) const override {
    return -std::numeric_limits<double>::infinity();
  }
  double log_prior(const Eigen::VectorXd& w) const override {
    return -0.5 * (std::log(2 * kPi) + w.squaredNorm());
  }
  PriorKind prior_kind() const override { return PriorKind::gaussian; }
  GaussianDistribution prior_gaussian() const override {
    return GaussianDistribution::scalar(0.0, 1.0);
  }
  Eigen::VectorXd sample_prior(Rng& rng) const override { return prior_gaussian().sample(rng); }
};
}  // namespace

TEST_CASE("quadrature_evidence: closed form, empty data, Fig-4 constancy") {
  Rng rng(13);
  for (int trial = 0; trial < 8; ++trial) {
    const GaussianDensityModel density{rng.uniform(-1, 1), rng.uniform(0.1, 5)};
    std::vector<double> values(1 + rng.below(6));
    for (auto& v : values) v = rng.normal(0, 1.5);
    const OrderedDataset data = OrderedDataset::from_scalars(values);
    const DensityParamModel model(density);
    CHECK(quadrature_evidence(model, data).log_value ==
          doctest::Approx(density_lml(density, data).log_value).epsilon(1e-8));
  }

  // zero data: the prior normalizes
  const DensityParamModel unit(GaussianDensityModel{0.0, 1.0});
  CHECK(quadrature_evidence(unit, OrderedDataset{}).log_value ==
        doctest::Approx(0.0).epsilon(1e-8));

  // periodic sine: alpha = 2 pi vs 4 pi differ by < 0.05 nats
  Rng data_rng(29);
  std::vector<double> xs(20);
  for (auto& x : xs) x = data_rng.normal(std::sin(0.8), 1.0);
  const OrderedDataset sine_data = OrderedDataset::from_scalars(xs);
  const double at_2pi =
      quadrature_evidence(SineParamModel(PeriodicSineModel{2 * kPi}), sine_data).log_value;
  const double at_4pi =
      quadrature_evidence(SineParamModel(PeriodicSineModel{4 * kPi}), sine_data).log_value;
  CHECK(std::abs(at_2pi - at_4pi) < 0.05);
}

TEST_CASE("likelihood_weighting: constant integrand is exact with zero variance") {
  const ConstantLikelihoodModel model(std::log(0.37));
  const EvidenceEstimate estimate =
      likelihood_weighting(model, OrderedDataset{}, 1000, SeedSpec{1});
  CHECK(estimate.log_value == doctest::Approx(std::log(0.37)).epsilon(1e-14));
  CHECK(estimate.diagnostics->std_error == 0.0);
  CHECK(estimate.diagnostics->effective_sample_size == doctest::Approx(1000.0).epsilon(1e-12));
}

TEST_CASE("likelihood_weighting: within 3 std errors of the closed form / quadrature") {
  const GaussianDensityModel density{0.0, 1.0};
  const OrderedDataset data = OrderedDataset::from_scalars({0.7, -0.9, 1.4});
  const DensityParamModel model(density);
  const EvidenceEstimate estimate = likelihood_weighting(model, data, 100000, SeedSpec{9});
  const double reference = density_lml(density, data).log_value;
  CHECK(std::abs(estimate.log_value - reference) < 3.0 * estimate.diagnostics->std_error);

  const SineParamModel sine(PeriodicSineModel{kPi});
  const OrderedDataset sine_data = OrderedDataset::from_scalars({0.5, 0.1});
  const EvidenceEstimate sine_estimate =
      likelihood_weighting(sine, sine_data, 100000, SeedSpec{10});
  const double sine_reference = quadrature_evidence(sine, sine_data).log_value;
  CHECK(std::abs(sine_estimate.log_value - sine_reference) <
        3.0 * sine_estimate.diagnostics->std_error);
}

TEST_CASE("likelihood_weighting: degenerate when every sample has zero likelihood") {
  const ZeroLikelihoodModel model;
  CHECK_THROWS_AS((void)likelihood_weighting(model, OrderedDataset{}, 100, SeedSpec{2}),
                  DegenerateEstimateError);
}

TEST_CASE("likelihood_weighting: unbiased in the linear domain over 100 seeds") {
  const GaussianDensityModel density{0.0, 1.0};
  const OrderedDataset data = OrderedDataset::from_scalars({0.5, -0.5});
  const DensityParamModel model(density);
  const double reference = std::exp(density_lml(density, data).log_value);
  std::vector<double> linear(100);
  std::vector<double> errors(100);
  for (std::size_t run = 0; run < 100; ++run) {
    const EvidenceEstimate estimate = likelihood_weighting(model, data, 2000, SeedSpec{run});
    linear[run] = std::exp(estimate.log_value);
    errors[run] = estimate.diagnostics->std_error * linear[run];  // linear-domain se
  }
  const double mean = std::accumulate(linear.begin(), linear.end(), 0.0) / 100.0;
  double pooled = 0.0;
  for (double e : errors) pooled += e * e;
  const double pooled_se = std::sqrt(pooled) / 100.0;
  CHECK(std::abs(mean - reference) < 3.0 * pooled_se);
}

TEST_CASE("importance_sampling: exact posterior proposal has zero variance") {
  const GaussianDensityModel density{0.3, 2.0};
  const OrderedDataset data = OrderedDataset::from_scalars({1.2, -0.1, 0.8, 2.0});
  const DensityParamModel model(density);
  const double reference = density_lml(density, data).log_value;
  const ProposalSpec proposal{density_posterior(density, data), "exact posterior"};
  const EvidenceEstimate estimate = importance_sampling(model, data, proposal, 5000, SeedSpec{3});
  CHECK(estimate.log_value == doctest::Approx(reference).epsilon(1e-10));
  CHECK(estimate.diagnostics->std_error < 1e-10);

  // every individual log weight equals the closed form; spot-check by running
  // with a single sample at several seeds
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const EvidenceEstimate one = importance_sampling(model, data, proposal, 1, SeedSpec{seed});
    CHECK(one.log_value == doctest::Approx(reference).epsilon(1e-10));
  }
}

TEST_CASE("importance_sampling: prior proposal reduces exactly to likelihood weighting") {
  const GaussianDensityModel density{0.1, 1.3};
  const OrderedDataset data = OrderedDataset::from_scalars({0.4, 1.0});
  const DensityParamModel model(density);
  const ProposalSpec prior_proposal{model.prior_gaussian(), "prior"};
  const EvidenceEstimate lw = likelihood_weighting(model, data, 3000, SeedSpec{77});
  const EvidenceEstimate is = importance_sampling(model, data, prior_proposal, 3000, SeedSpec{77});
  CHECK(lw.log_value == is.log_value);  // same samples, same reduction
  CHECK(lw.diagnostics->effective_sample_size ==
        doctest::Approx(is.diagnostics->effective_sample_size).epsilon(1e-9));
}

TEST_CASE("importance_sampling: wide proposal agrees with quadrature; low ESS is flagged") {
  const SineParamModel sine(PeriodicSineModel{kPi});
  const OrderedDataset data = OrderedDataset::from_scalars({0.5, 0.2, 0.9});
  const ProposalSpec wide{GaussianDistribution::scalar(0.0, kPi * kPi), "wide gaussian"};
  const EvidenceEstimate estimate = importance_sampling(sine, data, wide, 100000, SeedSpec{4});
  const double reference = quadrature_evidence(sine, data).log_value;
  CHECK(std::abs(estimate.log_value - reference) < 3.0 * estimate.diagnostics->std_error);
  CHECK_FALSE(estimate.diagnostics->unreliable);

  // sharp posterior under a mismatched wide proposal: one sample dominates
  Rng gen(123);
  std::vector<double> xs(2000);
  for (auto& x : xs) x = gen.normal(0.5, 1.0);
  const OrderedDataset sharp = OrderedDataset::from_scalars(xs);
  const ProposalSpec mismatched{GaussianDistribution::scalar(3.0, 25.0), "mismatched"};
  const EvidenceEstimate bad = importance_sampling(sine, sharp, mismatched, 200, SeedSpec{0});
  CHECK(bad.diagnostics->effective_sample_size < 2.0);
  CHECK(bad.diagnostics->unreliable);
}

TEST_CASE("estimates are invariant to sample order (sorted reduction)") {
  // Two models whose per-sample draws differ in production order but span the
  // same multiset of weights cannot be constructed directly; instead check
  // that the reduction is stable under shuffling by comparing parallel and
  // serial execution, which enumerate samples in different orders.
  const GaussianDensityModel density{0.0, 1.0};
  const OrderedDataset data = OrderedDataset::from_scalars({0.3});
  const DensityParamModel model(density);
  const EvidenceEstimate serial = likelihood_weighting(model, data, 50000, SeedSpec{6}, Exec::serial);
  const EvidenceEstimate parallel =
      likelihood_weighting(model, data, 50000, SeedSpec{6}, Exec::parallel);
  CHECK(serial.log_value == parallel.log_value);
  CHECK(serial.diagnostics->std_error == parallel.diagnostics->std_error);
}
