#include "symratio/roots.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace symratio {

namespace {

constexpr double kImagTolerance = 1e-8;
constexpr double kResidualTolerance = 1e-13;
constexpr double kMergeTolerance = 1e-8;

// Parlett-Reinsch balancing restricted to powers of two.
void balance(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  bool changed = true;
  while (changed) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      double row = 0.0;
      double col = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        row += std::abs(a(i, j));
        col += std::abs(a(j, i));
      }
      if (row == 0.0 || col == 0.0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double scaled_col = std::ldexp(col, exponent);
      const double scaled_row = std::ldexp(row, -exponent);
      if (scaled_col + scaled_row < 0.9 * (row + col)) {
        changed = true;
        a.row(i) *= std::ldexp(1.0, -exponent);
        a.col(i) *= std::ldexp(1.0, exponent);
      }
    }
  }
}

std::span<const double> strip_leading_zeros(std::span<const double> coeffs) {
  std::size_t first = 0;
  while (first < coeffs.size() && coeffs[first] == 0.0) ++first;
  return coeffs.subspan(first);
}

// |p(x)| relative to sum |c_i| |x|^{N-i}
double relative_residual(std::span<const double> coeffs, double x) {
  double value = 0.0;
  double scale = 0.0;
  const double ax = std::abs(x);
  for (double c : coeffs) {
    value = value * x + c;
    scale = scale * ax + std::abs(c);
  }
  return scale > 0.0 ? std::abs(value) / scale : 0.0;
}

double derivative(std::span<const double> coeffs, double x) {
  double value = 0.0;
  const std::size_t degree = coeffs.size() - 1;
  for (std::size_t i = 0; i < degree; ++i) {
    value = value * x + coeffs[i] * static_cast<double>(degree - i);
  }
  return value;
}

double polish(std::span<const double> coeffs, double x) {
  double residual = relative_residual(coeffs, x);
  for (int iter = 0; iter < 100 && residual > kResidualTolerance; ++iter) {
    const double slope = derivative(coeffs, x);
    if (slope == 0.0) break;
    double step = horner(coeffs, x) / slope;
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving) {
      const double candidate = x - step;
      const double r = relative_residual(coeffs, candidate);
      if (r < residual) {
        x = candidate;
        residual = r;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return x;
}

}  // namespace

double horner(std::span<const double> coeffs, double x) {
  double value = 0.0;
  for (double c : coeffs) value = value * x + c;
  return value;
}

std::vector<ComplexRoot> companion_roots(std::span<const double> coeffs_in) {
  const auto coeffs = strip_leading_zeros(coeffs_in);
  if (coeffs.size() <= 1) return {};
  const Eigen::Index degree = static_cast<Eigen::Index>(coeffs.size()) - 1;
  if (degree == 1) return {{-coeffs[1] / coeffs[0], 0.0}};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  companion.diagonal(-1).setOnes();
  for (Eigen::Index i = 0; i < degree; ++i) {
    companion(degree - 1 - i, degree - 1) = -coeffs[static_cast<std::size_t>(i + 1)] / coeffs[0];
  }
  balance(companion);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<ComplexRoot> out;
  out.reserve(static_cast<std::size_t>(degree));
  for (Eigen::Index i = 0; i < degree; ++i) {
    const auto ev = solver.eigenvalues()(i);
    out.push_back({ev.real(), ev.imag()});
  }
  return out;
}

RootSet real_roots(std::span<const double> coeffs_in) {
  const auto coeffs = strip_leading_zeros(coeffs_in);
  RootSet result;
  std::vector<double> candidates;
  for (const auto& root : companion_roots(coeffs)) {
    if (std::abs(root.im) <= kImagTolerance * (1.0 + std::abs(root.re))) {
      candidates.push_back(polish(coeffs, root.re));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  for (double x : candidates) {
    if (!result.roots.empty() &&
        std::abs(x - result.roots.back()) <= kMergeTolerance * (1.0 + std::abs(x))) {
      result.degenerate = true;
      continue;
    }
    result.roots.push_back(x);
  }
  return result;
}

}  // namespace symratio
