#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>

#include <Eigen/Core>

namespace symratio {

/// Selects between the OpenMP kernel and its serial reference. Both paths
/// produce bit-identical results: every index owns its own RNG stream and
/// writes only its own output slot.
enum class Execution { serial, parallel };

/// Counter-based seed splitting. The stream for (seed, index) does not depend
/// on how many workers run or in which order indices are visited.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream);
std::mt19937_64 stream_rng(std::uint64_t master, std::uint64_t stream);

/// Uniformly distributed unit vector in R^n.
Eigen::VectorXd random_unit_vector(std::mt19937_64& rng, int n);
Eigen::VectorXd random_gaussian_vector(std::mt19937_64& rng, int n);

/// Number of OpenMP workers used by Execution::parallel (0 = runtime default).
void set_worker_count(int workers);
int worker_count();

/// Calls fn(i) for i in [0, count). The first exception thrown by any index is
/// rethrown after the loop finishes.
template <class Fn>
void for_each_index(std::size_t count, Execution exec, Fn&& fn) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace symratio
