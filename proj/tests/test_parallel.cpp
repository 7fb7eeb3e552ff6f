#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <limits>
#include <vector>

#include "lml/parallel.hpp"
#include "lml/rng.hpp"

using namespace lml;

TEST_CASE("pairwise_sum: serial and parallel are bit-identical") {
  Rng rng(1);
  for (std::size_t n : {0ul, 1ul, 7ul, 1024ul, 1025ul, 100000ul}) {
    std::vector<double> values(n);
    for (auto& v : values) v = rng.uniform(-1, 1) * std::pow(10.0, rng.uniform(-8, 8));
    const double serial = pairwise_sum(values, Exec::serial);
    const double parallel = pairwise_sum(values, Exec::parallel);
    CHECK(serial == parallel);  // exact, same reduction tree
  }
}

TEST_CASE("pairwise_sum: agrees with long double accumulation") {
  Rng rng(2);
  std::vector<double> values(50000);
  long double reference = 0.0;
  for (auto& v : values) {
    v = rng.normal();
    reference += v;
  }
  CHECK(pairwise_sum(values) ==
        doctest::Approx(static_cast<double>(reference)).epsilon(1e-12));
}

TEST_CASE("log_sum_exp: correctness and edge cases") {
  const std::vector<double> values{0.0, std::log(2.0), std::log(3.0)};
  CHECK(log_sum_exp(values) == doctest::Approx(std::log(6.0)).epsilon(1e-14));

  const std::vector<double> empty;
  CHECK(log_sum_exp(empty) == -std::numeric_limits<double>::infinity());

  const std::vector<double> all_negative_inf(4, -std::numeric_limits<double>::infinity());
  CHECK(log_sum_exp(all_negative_inf) == -std::numeric_limits<double>::infinity());

  // huge offsets do not overflow
  const std::vector<double> shifted{1000.0, 1000.0 + std::log(2.0)};
  CHECK(log_sum_exp(shifted) == doctest::Approx(1000.0 + std::log(3.0)).epsilon(1e-14));

  Rng rng(3);
  std::vector<double> random(20000);
  for (auto& v : random) v = rng.uniform(-700, 700);
  CHECK(log_sum_exp(random, Exec::serial) == log_sum_exp(random, Exec::parallel));
}

TEST_CASE("indexed_map: slot order is index order in both modes") {
  const auto square = [](std::size_t i) { return static_cast<double>(i * i); };
  const auto serial = indexed_map(257, square, Exec::serial);
  const auto parallel = indexed_map(257, square, Exec::parallel);
  CHECK(serial == parallel);
  CHECK(serial[11] == 121.0);
}

TEST_CASE("reductions do not depend on the OpenMP thread count") {
  Rng rng(4);
  std::vector<double> values(30000);
  for (auto& v : values) v = rng.normal(0, 100);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double one_thread = pairwise_sum(values, Exec::parallel);
  const double lse_one = log_sum_exp(values, Exec::parallel);
  omp_set_num_threads(saved > 1 ? saved : 4);
  const double many_threads = pairwise_sum(values, Exec::parallel);
  const double lse_many = log_sum_exp(values, Exec::parallel);
  omp_set_num_threads(saved);
  CHECK(one_thread == many_threads);
  CHECK(lse_one == lse_many);
}
