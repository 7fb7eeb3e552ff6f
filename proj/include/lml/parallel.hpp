#ifndef LMLKIT_PARALLEL_HPP
#define LMLKIT_PARALLEL_HPP

#include <cstddef>
#include <memory>
#include <type_traits>
#include <span>
#include <vector>

namespace lml {

/// Execution mode for the replicate-level kernels. Results are identical in
/// both modes: parallel loops write into index-addressed slots and every
/// floating-point reduction follows the same fixed chunked-pairwise tree, so
/// the thread count never changes the output. The serial path is kept as the
/// reference implementation for tests and benchmarks.
enum class Exec { serial, parallel };

/// Process-wide default used by the experiment harness.
Exec default_exec();
void set_default_exec(Exec mode);

namespace detail {
void run_indexed(std::size_t n, Exec mode, void (*trampoline)(void*, std::size_t), void* ctx);
}

/// fn(i) for i in 0..n-1, results assembled in index order.
template <class F>
auto indexed_map(std::size_t n, F&& fn, Exec mode = default_exec())
    -> std::vector<decltype(fn(std::size_t{0}))> {
  using Result = decltype(fn(std::size_t{0}));
  using Fn = std::remove_reference_t<F>;
  std::vector<Result> out(n);
  struct Ctx {
    Fn* fn;
    std::vector<Result>* out;
  } ctx{std::addressof(fn), &out};
  detail::run_indexed(
      n, mode,
      [](void* raw, std::size_t i) {
        auto* c = static_cast<Ctx*>(raw);
        (*c->out)[i] = (*c->fn)(i);
      },
      &ctx);
  return out;
}

template <class F>
void indexed_for(std::size_t n, F&& fn, Exec mode = default_exec()) {
  using Fn = std::remove_reference_t<F>;
  struct Ctx {
    Fn* fn;
  } ctx{std::addressof(fn)};
  detail::run_indexed(
      n, mode,
      [](void* raw, std::size_t i) { (*static_cast<Ctx*>(raw)->fn)(i); }, &ctx);
}

/// Sum with a fixed chunked-pairwise tree (chunk = 1024 elements). The
/// parallel version distributes chunks over threads but combines them in the
/// identical order, so serial and parallel results are bit-equal.
double pairwise_sum(std::span<const double> values, Exec mode = Exec::serial);

/// log(sum(exp(v))) stabilized by the max, reduced with pairwise_sum.
double log_sum_exp(std::span<const double> log_values, Exec mode = Exec::serial);

}  // namespace lml

#endif  // LMLKIT_PARALLEL_HPP
