#include "lml/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

namespace lml {

namespace {
std::atomic<Exec> g_default_exec{Exec::parallel};

constexpr std::size_t kChunk = 1024;

// Pairwise sum of a small range, fixed recursion structure.
double pairwise_range(const double* data, std::size_t n) {
  if (n <= 8) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += data[i];
    return total;
  }
  const std::size_t half = n / 2;
  return pairwise_range(data, half) + pairwise_range(data + half, n - half);
}
}  // namespace

Exec default_exec() { return g_default_exec.load(); }
void set_default_exec(Exec mode) { g_default_exec.store(mode); }

namespace detail {
void run_indexed(std::size_t n, Exec mode, void (*trampoline)(void*, std::size_t), void* ctx) {
  if (mode == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) trampoline(ctx, i);
    return;
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    trampoline(ctx, static_cast<std::size_t>(i));
  }
}
}  // namespace detail

double pairwise_sum(std::span<const double> values, Exec mode) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(n_chunks);
  indexed_for(
      n_chunks,
      [&](std::size_t c) {
        const std::size_t begin = c * kChunk;
        partial[c] = pairwise_range(values.data() + begin, std::min(kChunk, n - begin));
      },
      mode);
  return pairwise_range(partial.data(), partial.size());
}

double log_sum_exp(std::span<const double> log_values, Exec mode) {
  if (log_values.empty()) return -std::numeric_limits<double>::infinity();
  double max_value = -std::numeric_limits<double>::infinity();
  for (double v : log_values) max_value = std::max(max_value, v);
  if (!std::isfinite(max_value)) return max_value;  // all -inf (or a nan/inf input)
  std::vector<double> scaled(log_values.size());
  indexed_for(
      log_values.size(), [&](std::size_t i) { scaled[i] = std::exp(log_values[i] - max_value); },
      mode);
  return max_value + std::log(pairwise_sum(scaled, mode));
}

}  // namespace lml
