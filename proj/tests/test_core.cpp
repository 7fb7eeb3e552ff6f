#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "lml/dataset.hpp"
#include "lml/errors.hpp"
#include "lml/evidence.hpp"
#include "lml/gaussian.hpp"
#include "lml/rng.hpp"
#include "oracles.hpp"

using namespace lml;

namespace {
// Lehmer index of a permutation (0 .. n!-1).
std::size_t permutation_index(const std::vector<std::size_t>& perm) {
  std::size_t index = 0;
  const std::size_t n = perm.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller_after = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (perm[j] < perm[i]) ++smaller_after;
    }
    std::size_t factorial = 1;
    for (std::size_t k = 2; k < n - i; ++k) factorial *= k;
    index += smaller_after * factorial;
  }
  return index;
}
}  // namespace

TEST_CASE("make_ordering: n=1 gives the identity permutation") {
  const OrderedDataset data = OrderedDataset::from_scalars({3.5});
  for (std::uint64_t seed : {0ull, 1ull, 99999ull}) {
    const OrderedDataset shuffled = make_ordering(data, SeedSpec{seed}, 0);
    CHECK(shuffled.ordering() == std::vector<std::size_t>{0});
  }
}

TEST_CASE("make_ordering: identical (seed, index) gives identical permutations") {
  const OrderedDataset data = OrderedDataset::from_scalars({1, 2, 3, 4, 5, 6, 7});
  const OrderedDataset a = make_ordering(data, SeedSpec{42}, 7);
  const OrderedDataset b = make_ordering(data, SeedSpec{42}, 7);
  CHECK(a.ordering() == b.ordering());
  const OrderedDataset c = make_ordering(data, SeedSpec{42}, 8);
  CHECK(a.ordering() != c.ordering());
  // the input is untouched
  CHECK(data.ordering() == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6});
}

TEST_CASE("make_ordering: uniform over S_5 (each cell within 5 sigma of 1/120)") {
  const OrderedDataset data = OrderedDataset::from_scalars({0, 1, 2, 3, 4});
  constexpr std::size_t kDraws = 10000;
  std::vector<std::size_t> counts(120, 0);
  for (std::size_t i = 0; i < kDraws; ++i) {
    counts[permutation_index(make_ordering(data, SeedSpec{2024}, i).ordering())]++;
  }
  const double expected = kDraws / 120.0;
  const double sigma = std::sqrt(kDraws * (1.0 / 120.0) * (119.0 / 120.0));
  double chi_square = 0.0;
  for (std::size_t cell = 0; cell < 120; ++cell) {
    CHECK(std::abs(static_cast<double>(counts[cell]) - expected) < 5.0 * sigma);
    chi_square += (counts[cell] - expected) * (counts[cell] - expected) / expected;
  }
  // chi-square with 119 dof: mean 119, sd ~15.4; 5 sigma band
  CHECK(chi_square > 119.0 - 5.0 * 15.43);
  CHECK(chi_square < 119.0 + 5.0 * 15.43);
}

TEST_CASE("dataset: prefix respects the ordering and rejects bad input") {
  const OrderedDataset data = OrderedDataset::from_scalars({10, 20, 30});
  const OrderedDataset reversed = data.with_ordering({2, 1, 0});
  const OrderedDataset first_two = reversed.prefix(2);
  CHECK(first_two.scalar_value(0) == 30);
  CHECK(first_two.scalar_value(1) == 20);
  CHECK_THROWS_AS((void)data.prefix(4), std::invalid_argument);
  CHECK_THROWS_AS((void)data.with_ordering({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("rng: deterministic streams, sane uniform and normal moments") {
  Rng a = Rng::child(SeedSpec{7}, 3);
  Rng b = Rng::child(SeedSpec{7}, 3);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng rng(123);
  double sum = 0.0, sum_sq = 0.0;
  constexpr int kDraws = 200000;
  for (int i = 0; i < kDraws; ++i) {
    const double z = rng.normal();
    sum += z;
    sum_sq += z * z;
  }
  CHECK(std::abs(sum / kDraws) < 0.01);
  CHECK(sum_sq / kDraws == doctest::Approx(1.0).epsilon(0.02));

  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("kl_gaussian: q = p gives zero") {
  const GaussianDistribution q = GaussianDistribution::scalar(0.7, 2.3);
  CHECK(kl_gaussian(q, q) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("kl_gaussian: frozen 1-D values against the integration oracle") {
  // KL(N(0,1) || N(0, e^2)) and KL(N(1,1) || N(0,1)); expected values below
  // were produced by the Simpson oracle over q log(q/p) and match the closed
  // form 0.5*(e^-2 - 1 + 2) and 0.5.
  const auto integral_kl = [](double mq, double vq, double mp, double vp) {
    return oracle::simpson(
        [&](double w) {
          const double lq = -0.5 * (std::log(2 * std::numbers::pi * vq) + (w - mq) * (w - mq) / vq);
          const double lp = -0.5 * (std::log(2 * std::numbers::pi * vp) + (w - mp) * (w - mp) / vp);
          return std::exp(lq) * (lq - lp);
        },
        mq - 12 * std::sqrt(vq), mq + 12 * std::sqrt(vq), 40000);
  };

  const double e2 = std::exp(2.0);
  const double oracle_a = integral_kl(0, 1, 0, e2);
  CHECK(oracle_a == doctest::Approx(0.5 * (std::exp(-2.0) - 1.0 + 2.0)).epsilon(1e-9));
  CHECK(kl_gaussian(GaussianDistribution::scalar(0, 1), GaussianDistribution::scalar(0, e2)) ==
        doctest::Approx(oracle_a).epsilon(1e-9));
  CHECK(kl_gaussian(GaussianDistribution::scalar(0, 1), GaussianDistribution::scalar(0, e2)) ==
        doctest::Approx(0.5676676416).epsilon(1e-6));

  const double oracle_b = integral_kl(1, 1, 0, 1);
  CHECK(kl_gaussian(GaussianDistribution::scalar(1, 1), GaussianDistribution::scalar(0, 1)) ==
        doctest::Approx(oracle_b).epsilon(1e-9));
  CHECK(kl_gaussian(GaussianDistribution::scalar(1, 1), GaussianDistribution::scalar(0, 1)) ==
        doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("kl_gaussian: nonnegative, zero iff q = p, matches integration in 1-D and 2-D") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const double mq = rng.uniform(-2, 2), mp = rng.uniform(-2, 2);
    const double vq = rng.uniform(0.2, 3), vp = rng.uniform(0.2, 3);
    const GaussianDistribution q = GaussianDistribution::scalar(mq, vq);
    const GaussianDistribution p = GaussianDistribution::scalar(mp, vp);
    const double kl = kl_gaussian(q, p);
    CHECK(kl >= -1e-10);
    const double reference = oracle::simpson(
        [&](double w) {
          const double lq = -0.5 * (std::log(2 * std::numbers::pi * vq) + (w - mq) * (w - mq) / vq);
          const double lp = -0.5 * (std::log(2 * std::numbers::pi * vp) + (w - mp) * (w - mp) / vp);
          return std::exp(lq) * (lq - lp);
        },
        mq - 14 * std::sqrt(vq), mq + 14 * std::sqrt(vq), 60000);
    CHECK(kl == doctest::Approx(reference).epsilon(1e-6));
  }

  // 2-D instance against tensor Simpson
  Eigen::VectorXd mq(2), mp(2);
  mq << 0.3, -0.2;
  mp << -0.1, 0.4;
  Eigen::MatrixXd cq(2, 2), cp(2, 2);
  cq << 1.0, 0.3, 0.3, 0.8;
  cp << 1.5, -0.2, -0.2, 0.9;
  const GaussianDistribution q(mq, cq);
  const GaussianDistribution p(mp, cp);
  const double reference = oracle::simpson2d(
      [&](double w0, double w1) {
        Eigen::VectorXd w(2);
        w << w0, w1;
        const double lq = oracle::dense_gaussian_logpdf(w, mq, cq);
        const double lp = oracle::dense_gaussian_logpdf(w, mp, cp);
        return std::exp(lq) * (lq - lp);
      },
      -10, 10, -10, 10, 600);
  CHECK(kl_gaussian(q, p) == doctest::Approx(reference).epsilon(1e-6));

  // equality case at 1e-10 on a random pair forced equal
  const GaussianDistribution same(mq, cq);
  CHECK(std::abs(kl_gaussian(q, same)) < 1e-10);
}

TEST_CASE("kl_gaussian: dimension mismatch and bad covariances are rejected") {
  const GaussianDistribution q = GaussianDistribution::scalar(0, 1);
  const GaussianDistribution p2 =
      GaussianDistribution::diagonal(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2));
  CHECK_THROWS_AS((void)kl_gaussian(q, p2), std::invalid_argument);

  Eigen::MatrixXd not_pd(2, 2);
  not_pd << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(GaussianDistribution(Eigen::VectorXd::Zero(2), not_pd), NotPositiveDefiniteError);

  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(GaussianDistribution(Eigen::VectorXd::Zero(2), asym), std::invalid_argument);
}

TEST_CASE("gaussian: log density matches the dense oracle; sampling is seeded") {
  Eigen::VectorXd mean(3);
  mean << 1.0, -2.0, 0.5;
  Eigen::MatrixXd cov(3, 3);
  cov << 2.0, 0.4, 0.1, 0.4, 1.0, -0.2, 0.1, -0.2, 0.7;
  const GaussianDistribution g(mean, cov);
  Rng rng(5);
  for (int i = 0; i < 10; ++i) {
    Eigen::VectorXd x(3);
    x << rng.normal(), rng.normal(), rng.normal();
    CHECK(g.log_density(x) ==
          doctest::Approx(oracle::dense_gaussian_logpdf(x, mean, cov)).epsilon(1e-10));
  }
  Rng s1(11), s2(11);
  CHECK(g.sample(s1) == g.sample(s2));
}

TEST_CASE("cholesky ladder: escalates jitter, then raises the typed error") {
  // Rank-deficient PSD matrix: plain Cholesky fails, jitter certifies it.
  Eigen::MatrixXd psd(2, 2);
  psd << 1.0, 1.0, 1.0, 1.0;
  const CholeskyFactor factor = cholesky_with_jitter(psd);
  CHECK(factor.jitter > 0.0);

  Eigen::MatrixXd negative(1, 1);
  negative << -1.0;
  CHECK_THROWS_AS((void)cholesky_with_jitter(negative), NotPositiveDefiniteError);
}

TEST_CASE("evidence estimate: exact methods reject a sampling std error") {
  EvidenceDiagnostics diag;
  diag.std_error = 0.1;
  CHECK_THROWS_AS(EvidenceEstimate(0.0, EvidenceMethod::exact, diag), std::invalid_argument);
  diag.std_error = 0.0;
  CHECK_NOTHROW(EvidenceEstimate(0.0, EvidenceMethod::quadrature, diag));
  CHECK_NOTHROW(EvidenceEstimate(0.0, EvidenceMethod::likelihood_weighting,
                                 EvidenceDiagnostics{0.1, 50.0, 100, false}));
}
