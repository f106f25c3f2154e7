#pragma once

#include <span>
#include <vector>

namespace symratio {

/// Real roots of a univariate polynomial.
struct RootSet {
  std::vector<double> roots;  // ascending, each distinct root once
  bool degenerate = false;    // two roots merged by the proximity rule
};

/// Polynomial sum_i coeffs[i] x^{N-i} (highest degree first) at x.
double horner(std::span<const double> coeffs, double x);

/// Eigenvalues of the balanced companion matrix. Leading zeros are stripped;
/// a constant polynomial has no roots.
struct ComplexRoot {
  double re;
  double im;
};
std::vector<ComplexRoot> companion_roots(std::span<const double> coeffs);

/// Real roots: companion eigenvalues with |im| <= 1e-8 (1 + |re|), polished by
/// safeguarded Newton steps to a relative residual below 1e-13, then merged
/// when closer than 1e-8 (1 + |x|).
RootSet real_roots(std::span<const double> coeffs);

}  // namespace symratio
