#ifndef CYBEFORGE_PARALLEL_HPP
#define CYBEFORGE_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <vector>

#include <omp.h>

namespace cybeforge {

/// Every checker that loops over basis pairs or triples takes one of these.
/// The serial path is the reference implementation; the parallel path must
/// return the identical result (same first witness).
enum class Exec { serial, parallel };

/// Returns the witness produced for the smallest index i in [0, count) whose
/// probe reports a failure, or nullopt if every probe passes.
///
/// `probe(i)` must be thread-safe and return std::optional<W>.
template <class W, class Probe>
std::optional<W> first_failure(std::size_t count, Exec exec, Probe &&probe) {
  if (exec == Exec::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) {
      if (auto w = probe(i)) {
        return w;
      }
    }
    return std::nullopt;
  }

  std::vector<std::optional<W>> found(count);
  std::atomic<std::size_t> best{count};
  std::exception_ptr error;
  const auto n = static_cast<std::ptrdiff_t>(count);

#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (i > best.load(std::memory_order_relaxed)) {
      continue;
    }
    try {
      if (auto w = probe(i)) {
        found[i] = std::move(w);
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    } catch (...) {
#pragma omp critical(cybeforge_first_failure)
      if (!error) {
        error = std::current_exception();
      }
    }
  }

  if (error) {
    std::rethrow_exception(error);
  }
  std::size_t b = best.load();
  if (b == count) {
    return std::nullopt;
  }
  return std::move(found[b]);
}

/// Map fn over [0, count) into a vector, preserving order.
template <class T, class Fn>
std::vector<T> indexed_map(std::size_t count, Exec exec, Fn &&fn) {
  std::vector<T> out(count);
  if (exec == Exec::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = fn(i);
    }
    return out;
  }
  std::exception_ptr error;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = fn(static_cast<std::size_t>(k));
    } catch (...) {
#pragma omp critical(cybeforge_indexed_map)
      if (!error) {
        error = std::current_exception();
      }
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
  return out;
}

} // namespace cybeforge

#endif
