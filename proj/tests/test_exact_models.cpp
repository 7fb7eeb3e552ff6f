#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "lml/density_model.hpp"
#include "lml/fourier_model.hpp"
#include "lml/rng.hpp"
#include "lml/sine_model.hpp"
#include "oracles.hpp"

using namespace lml;

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;

// log integral of exp(h) over [lo, hi], max-stabilized Simpson.
double log_integral(const std::function<double(double)>& h, double lo, double hi, int n = 40000) {
  double peak = -1e300;
  for (int k = 0; k <= n; ++k) peak = std::max(peak, h(lo + (hi - lo) * k / n));
  const double value =
      oracle::simpson([&](double w) { return std::exp(h(w) - peak); }, lo, hi, n);
  return peak + std::log(value);
}

double density_log_joint(const GaussianDensityModel& model, const std::vector<double>& data,
                         double u) {
  double total = -0.5 * (kLog2Pi + std::log(model.prior_variance) +
                         (u - model.prior_mean) * (u - model.prior_mean) / model.prior_variance);
  for (double x : data) total += -0.5 * (kLog2Pi + (x - u) * (x - u));
  return total;
}

double density_lml_oracle(const GaussianDensityModel& model, const std::vector<double>& data) {
  const double sd = std::sqrt(model.prior_variance);
  double lo = model.prior_mean - 10 * sd - 10, hi = model.prior_mean + 10 * sd + 10;
  for (double x : data) {
    lo = std::min(lo, x - 10);
    hi = std::max(hi, x + 10);
  }
  return log_integral([&](double u) { return density_log_joint(model, data, u); }, lo, hi);
}
}  // namespace

TEST_CASE("density_lml: frozen examples") {
  // variance-zero limit pins u to the prior mean
  const GaussianDensityModel limit{0.0, 0.0, true};
  const OrderedDataset one_zero = OrderedDataset::from_scalars({0.0});
  CHECK(density_lml(limit, one_zero).log_value == doctest::Approx(-0.5 * kLog2Pi).epsilon(1e-12));
  CHECK(density_lml(limit, one_zero).log_value == doctest::Approx(-0.9189385332).epsilon(1e-8));

  const GaussianDensityModel unit{0.0, 1.0};
  // log N(0; 0, 2), cross-checked against the quadrature oracle
  const double expected = density_lml_oracle(unit, {0.0});
  CHECK(density_lml(unit, one_zero).log_value == doctest::Approx(expected).epsilon(1e-8));
  CHECK(density_lml(unit, one_zero).log_value == doctest::Approx(-1.2655121234).epsilon(1e-8));

  const OrderedDataset pair = OrderedDataset::from_scalars({1.0, -1.0});
  CHECK(density_lml(unit, pair).log_value ==
        doctest::Approx(density_lml_oracle(unit, {1.0, -1.0})).epsilon(1e-8));

  CHECK(density_lml(unit, OrderedDataset{}).log_value == 0.0);
  CHECK_THROWS_AS((void)density_lml(GaussianDensityModel{0.0, -1.0}, pair), std::invalid_argument);
}

TEST_CASE("density_posterior: frozen examples and quadrature moments") {
  const GaussianDensityModel model{0.0, 1.0};
  const GaussianDistribution no_data = density_posterior(model, OrderedDataset{});
  CHECK(no_data.scalar_mean() == 0.0);
  CHECK(no_data.scalar_variance() == 1.0);

  const GaussianDistribution single = density_posterior(model, OrderedDataset::from_scalars({2.0}));
  CHECK(single.scalar_mean() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(single.scalar_variance() == doctest::Approx(0.5).epsilon(1e-12));

  const std::vector<double> data{1.0, -1.0, 3.0};
  const GaussianDistribution posterior =
      density_posterior(model, OrderedDataset::from_scalars(data));
  // quadrature-normalized posterior moments
  const double log_z = density_lml_oracle(model, data);
  const double mean = oracle::simpson(
      [&](double u) { return u * std::exp(density_log_joint(model, data, u) - log_z); }, -15, 15,
      40000);
  const double second = oracle::simpson(
      [&](double u) { return u * u * std::exp(density_log_joint(model, data, u) - log_z); }, -15,
      15, 40000);
  CHECK(posterior.scalar_mean() == doctest::Approx(mean).epsilon(1e-8));
  CHECK(posterior.scalar_variance() == doctest::Approx(second - mean * mean).epsilon(1e-8));
}

TEST_CASE("density_predictive: frozen examples and the near-flat limit") {
  CHECK(density_predictive(GaussianDensityModel{0.0, 4.0}, OrderedDataset{}).scalar_variance() ==
        doctest::Approx(5.0).epsilon(1e-12));

  const GaussianDistribution single =
      density_predictive(GaussianDensityModel{0.0, 1.0}, OrderedDataset::from_scalars({2.0}));
  CHECK(single.scalar_mean() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(single.scalar_variance() == doctest::Approx(1.5).epsilon(1e-12));

  const std::vector<double> data{0.4, 1.1, -0.3, 2.2};
  const GaussianDistribution flat =
      density_predictive(GaussianDensityModel{0.0, 1e6}, OrderedDataset::from_scalars(data));
  const double sample_mean = (0.4 + 1.1 - 0.3 + 2.2) / 4.0;
  CHECK(flat.scalar_mean() == doctest::Approx(sample_mean).epsilon(1e-3));
  CHECK(flat.scalar_variance() == doctest::Approx(1.25).epsilon(1e-3));
}

TEST_CASE("density: telescoping product decomposition and CLML identity") {
  Rng rng(17);
  const GaussianDensityModel model{0.4, 2.5};
  std::vector<double> values(9);
  for (auto& v : values) v = rng.normal(1.0, 1.3);
  const OrderedDataset data = OrderedDataset::from_scalars(values);

  double telescoped = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const GaussianDistribution pred = density_predictive(model, data.prefix(i));
    telescoped += pred.log_density(data.scalar_value(i));
  }
  CHECK(telescoped == doctest::Approx(density_lml(model, data).log_value).epsilon(1e-8));

  // exact prefix-difference equals the directly evaluated conditional density
  for (std::size_t m : {1ul, 4ul, 9ul}) {
    const double difference =
        density_lml(model, data).log_value - density_lml(model, data.prefix(m - 1)).log_value;
    double direct = 0.0;
    for (std::size_t i = m - 1; i < data.size(); ++i) {
      direct += density_predictive(model, data.prefix(i)).log_density(data.scalar_value(i));
    }
    CHECK(difference == doctest::Approx(direct).epsilon(1e-8));
  }
}

TEST_CASE("density: closed forms match quadrature on randomized instances") {
  Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const double mu = rng.uniform(-2, 2);
    const double s2 = std::exp(rng.uniform(std::log(1e-2), std::log(1e3)));
    const std::size_t n = 1 + static_cast<std::size_t>(rng.below(6));
    std::vector<double> values(n);
    for (auto& v : values) v = rng.normal(mu, 1.5);
    const GaussianDensityModel model{mu, s2};
    const OrderedDataset data = OrderedDataset::from_scalars(values);
    const double reference = density_lml_oracle(model, values);
    CHECK(density_lml(model, data).log_value == doctest::Approx(reference).epsilon(1e-6));
  }
}

TEST_CASE("density: lml decreases in sigma^2 >= 10 while the predictive freezes") {
  Rng rng(31);
  std::vector<double> values(20);
  for (auto& v : values) v = rng.normal(1.5, 1.0);
  const OrderedDataset data = OrderedDataset::from_scalars(values);

  double previous_lml = density_lml(GaussianDensityModel{0.0, 10.0}, data).log_value;
  const GaussianDistribution pred_low = density_predictive(GaussianDensityModel{0.0, 10.0}, data);
  double min_mean = pred_low.scalar_mean(), max_mean = min_mean;
  double min_var = pred_low.scalar_variance(), max_var = min_var;
  for (double s2 = 12.0; s2 <= 1000.0; s2 *= 1.2) {
    const GaussianDensityModel model{0.0, s2};
    const double lml = density_lml(model, data).log_value;
    CHECK(lml < previous_lml);
    previous_lml = lml;
    const GaussianDistribution pred = density_predictive(model, data);
    min_mean = std::min(min_mean, pred.scalar_mean());
    max_mean = std::max(max_mean, pred.scalar_mean());
    min_var = std::min(min_var, pred.scalar_variance());
    max_var = std::max(max_var, pred.scalar_variance());
  }
  CHECK((max_mean - min_mean) / std::abs(max_mean) < 0.01);
  CHECK((max_var - min_var) / max_var < 0.01);
}

TEST_CASE("fourier_lml: frozen examples and both algebraic routes") {
  FourierRegressionModel model{1, fourier_unit_prior(1), 0.1};
  CHECK(fourier_lml(model, OrderedDataset{}).log_value == 0.0);

  // single point at x=0: features (0, 1), marginal variance 1 + 0.01
  const OrderedDataset point = OrderedDataset::from_xy({0.0}, {0.0});
  const double expected = -0.5 * (kLog2Pi + std::log(1.01));
  CHECK(fourier_lml(model, point).log_value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(fourier_lml(model, point).log_value == doctest::Approx(-0.9239).epsilon(1e-4));

  // Monte Carlo cross-check over (a1, b1): E_w N(y; phi w, noise^2)
  Rng rng(41);
  constexpr int kSamples = 400000;
  double acc = 0.0;
  for (int s = 0; s < kSamples; ++s) {
    const double b1 = rng.normal();
    acc += std::exp(-0.5 * (std::log(2 * std::numbers::pi * 0.01) + b1 * b1 / 0.01));
  }
  CHECK(fourier_lml(model, point).log_value ==
        doctest::Approx(std::log(acc / kSamples)).epsilon(5e-3));

  // function-space and weight-space routes agree on random instances
  Rng data_rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const int order = 1 + static_cast<int>(data_rng.below(4));
    const std::size_t n = 1 + data_rng.below(12);
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = data_rng.uniform();
      ys[i] = data_rng.normal(0, 1);
    }
    FourierRegressionModel random_model{order, fourier_inverse_square_prior(order), 0.2};
    const OrderedDataset data = OrderedDataset::from_xy(xs, ys);
    const double fs = fourier_lml(random_model, data, FourierRoute::function_space).log_value;
    const double ws = fourier_lml(random_model, data, FourierRoute::weight_space).log_value;
    CHECK(fs == doctest::Approx(ws).epsilon(1e-9));
  }
}

TEST_CASE("fourier_lml: invariant to permutations of the dataset") {
  const OrderedDataset data = fourier_generate(3, fourier_unit_prior(3), 0.1, 20, SeedSpec{5});
  FourierRegressionModel model{3, fourier_unit_prior(3), 0.1};
  const double base = fourier_lml(model, data).log_value;
  for (std::uint64_t r = 0; r < 5; ++r) {
    const OrderedDataset shuffled = make_ordering(data, SeedSpec{77}, r);
    // prefix(n) materializes the permuted order as a new dataset
    CHECK(fourier_lml(model, shuffled.prefix(shuffled.size())).log_value ==
          doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("fourier telescoping: sum of predictive log densities equals the lml") {
  const OrderedDataset data = fourier_generate(2, fourier_unit_prior(2), 0.15, 12, SeedSpec{6});
  FourierRegressionModel model{2, fourier_unit_prior(2), 0.15};
  double telescoped = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const GaussianDistribution pred = fourier_posterior_predictive(
        model, data.prefix(i), Eigen::VectorXd::Constant(1, data.scalar_value(i)), true);
    telescoped += pred.log_density(*data.point(i).y);
  }
  CHECK(telescoped == doctest::Approx(fourier_lml(model, data).log_value).epsilon(1e-8));
}

TEST_CASE("fourier_posterior_predictive: prior variance, interpolation") {
  // n=0: latent variance sum_d s_d^2 (sin^2 + cos^2) = sum_d s_d^2, plus noise
  FourierRegressionModel model{3, fourier_inverse_square_prior(3), 0.1};
  const double x = 0.73;
  const GaussianDistribution prior_pred = fourier_posterior_predictive(
      model, OrderedDataset{}, Eigen::VectorXd::Constant(1, x), true);
  double expected_var = 0.01;
  for (int d = 1; d <= 3; ++d) expected_var += std::pow(1.0 / (d * d), 2);
  CHECK(prior_pred.scalar_mean() == 0.0);
  CHECK(prior_pred.scalar_variance() == doctest::Approx(expected_var).epsilon(1e-12));

  // heavily replicated training x with small noise: prediction pins to y
  std::vector<double> xs(30, 0.4), ys(30, 0.8);
  FourierRegressionModel interp{2, fourier_unit_prior(2), 0.01};
  const GaussianDistribution pred = fourier_posterior_predictive(
      interp, OrderedDataset::from_xy(xs, ys), Eigen::VectorXd::Constant(1, 0.4), true);
  CHECK(std::abs(pred.scalar_mean() - 0.8) < 3.0 * std::sqrt(pred.scalar_variance()));
}

TEST_CASE("fourier_generate: protocol") {
  const OrderedDataset data =
      fourier_generate(9, fourier_inverse_square_prior(9), 0.1, 100, SeedSpec{3});
  CHECK(data.size() == 100);
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(data.scalar_value(i) >= 0.0);
    CHECK(data.scalar_value(i) < 1.0);
  }
  // determinism
  const OrderedDataset again =
      fourier_generate(9, fourier_inverse_square_prior(9), 0.1, 100, SeedSpec{3});
  CHECK(data.targets() == again.targets());

  // zero noise with pinned weights: y = sin x + cos x exactly
  Eigen::VectorXd weights(2);
  weights << 1.0, 1.0;
  const OrderedDataset clean = fourier_generate_with_weights(1, weights, 0.0, 50, SeedSpec{4});
  for (std::size_t i = 0; i < clean.size(); ++i) {
    const double x = clean.scalar_value(i);
    CHECK(*clean.point(i).y == doctest::Approx(std::sin(x) + std::cos(x)).epsilon(1e-14));
  }

  // noise std over many draws
  Eigen::VectorXd zero_weights = Eigen::VectorXd::Zero(2);
  const OrderedDataset noisy =
      fourier_generate_with_weights(1, zero_weights, 0.1, 100000, SeedSpec{8});
  const Eigen::VectorXd residuals = noisy.targets();
  const double std = std::sqrt(residuals.squaredNorm() / residuals.size());
  CHECK(std == doctest::Approx(0.1).epsilon(0.02));
}

TEST_CASE("sine_log_joint: frozen examples") {
  const PeriodicSineModel model{std::numbers::pi};
  const OrderedDataset data = OrderedDataset::from_scalars({0.5});

  CHECK(sine_log_joint(model, data, 3.5) == -std::numeric_limits<double>::infinity());
  CHECK(sine_log_joint(model, data, -3.15) == -std::numeric_limits<double>::infinity());

  // w = pi/6: sin w = 0.5 = x, exponent vanishes
  const double expected = -0.5 * kLog2Pi - std::log(2 * std::numbers::pi);
  CHECK(sine_log_joint(model, data, std::numbers::pi / 6) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(sine_log_joint(model, data, std::numbers::pi / 6) ==
        doctest::Approx(-2.7568155996).epsilon(1e-8));

  // symmetry: sin(pi - w) = sin(w)
  for (double w : {0.2, 0.9, 1.4}) {
    CHECK(sine_log_joint(model, data, w) ==
          doctest::Approx(sine_log_joint(model, data, std::numbers::pi - w)).epsilon(1e-12));
  }
}
