#include "symratio/parallel.hpp"

#include <cmath>

#include <omp.h>

#include "symratio/error.hpp"

namespace symratio {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::zero_tensor: return "zero_tensor";
    case ErrorKind::degenerate_input: return "degenerate_input";
    case ErrorKind::not_differentiable: return "not_differentiable";
    case ErrorKind::parse_error: return "parse_error";
  }
  return "unknown";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

std::mt19937_64 stream_rng(std::uint64_t master, std::uint64_t stream) {
  return std::mt19937_64(split_seed(master, stream));
}

Eigen::VectorXd random_gaussian_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

Eigen::VectorXd random_unit_vector(std::mt19937_64& rng, int n) {
  for (;;) {
    Eigen::VectorXd v = random_gaussian_vector(rng, n);
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

void set_worker_count(int workers) {
  if (workers > 0) omp_set_num_threads(workers);
}

int worker_count() { return omp_get_max_threads(); }

}  // namespace symratio
