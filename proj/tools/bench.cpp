// Times the OpenMP kernels against their serial reference implementations on
// representative workloads. Both paths produce bit-identical results (the
// reductions share one chunked-pairwise tree); this reports the speedup.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lml/density_model.hpp"
#include "lml/gp.hpp"
#include "lml/parallel.hpp"
#include "lml/sampling.hpp"
#include "lml/selection.hpp"

using namespace lml;

namespace {
double time_seconds(const std::function<void()>& fn, int repeats) {
  // one warm-up, then best of `repeats`
  fn();
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    best = std::min(best, elapsed.count());
  }
  return best;
}

void report(const std::string& name, double serial_result, double parallel_result,
            double serial_time, double parallel_time) {
  const bool identical = serial_result == parallel_result;
  std::printf("%-28s serial %8.3f ms   omp %8.3f ms   speedup %5.2fx   results %s\n", name.c_str(),
              serial_time * 1e3, parallel_time * 1e3, serial_time / parallel_time,
              identical ? "identical" : "DIFFER");
}
}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  {
    Rng rng(1);
    std::vector<double> values(1 << 24);
    for (auto& v : values) v = rng.uniform(-700.0, 10.0);
    double serial_result = 0.0, parallel_result = 0.0;
    const double serial_time =
        time_seconds([&] { serial_result = log_sum_exp(values, Exec::serial); }, 3);
    const double parallel_time =
        time_seconds([&] { parallel_result = log_sum_exp(values, Exec::parallel); }, 3);
    report("log_sum_exp (16M)", serial_result, parallel_result, serial_time, parallel_time);
  }

  {
    const GaussianDensityModel model{0.0, 1.0};
    Rng rng(2);
    std::vector<double> xs(5);
    for (auto& x : xs) x = rng.normal(0.5, 1.0);
    const DensityParamModel param(model);
    const OrderedDataset data = OrderedDataset::from_scalars(xs);
    double serial_result = 0.0, parallel_result = 0.0;
    const double serial_time = time_seconds(
        [&] {
          serial_result =
              likelihood_weighting(param, data, 400000, SeedSpec{7}, Exec::serial).log_value;
        },
        3);
    const double parallel_time = time_seconds(
        [&] {
          parallel_result =
              likelihood_weighting(param, data, 400000, SeedSpec{7}, Exec::parallel).log_value;
        },
        3);
    report("likelihood_weighting (4e5)", serial_result, parallel_result, serial_time,
           parallel_time);
  }

  {
    GPModel model;
    model.kernel = {KernelKind::rbf, 2.0, 1.0, 1.0};
    model.noise_std = 0.2;
    std::vector<double> positions(64);
    for (int i = 0; i < 64; ++i) positions[i] = i * 0.5;
    const OrderedDataset data = gp_generate(model, positions, SeedSpec{3});
    const GPEvidenceModel evidence(model, "gp");
    double serial_result = 0.0, parallel_result = 0.0;
    const double serial_time = time_seconds(
        [&] { serial_result = clml(evidence, data, 52, 64, SeedSpec{11}, Exec::serial).log_value; },
        2);
    const double parallel_time = time_seconds(
        [&] {
          parallel_result = clml(evidence, data, 52, 64, SeedSpec{11}, Exec::parallel).log_value;
        },
        2);
    report("gp clml (64 orderings)", serial_result, parallel_result, serial_time, parallel_time);
  }

  {
    const DensityEvidenceModel evidence(GaussianDensityModel{0.0, 1.0}, "density");
    Rng rng(4);
    std::vector<double> values(1500);
    for (auto& v : values) v = rng.normal(1.0, 1.0);
    const OrderedDataset data = OrderedDataset::from_scalars(values);
    double serial_result = 0.0, parallel_result = 0.0;
    const double serial_time = time_seconds(
        [&] {
          serial_result =
              learning_curve(evidence, data, 32, SeedSpec{5}, Exec::serial).mean_log_pred.back();
        },
        2);
    const double parallel_time = time_seconds(
        [&] {
          parallel_result =
              learning_curve(evidence, data, 32, SeedSpec{5}, Exec::parallel).mean_log_pred.back();
        },
        2);
    report("learning_curve (n=1500)", serial_result, parallel_result, serial_time, parallel_time);
  }

  return 0;
}
