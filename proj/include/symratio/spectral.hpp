#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "symratio/parallel.hpp"
#include "symratio/symtensor.hpp"

namespace symratio {

/// Relative slack under which a critical value counts as the global maximum.
inline constexpr double kGlobalMaxTolerance = 1e-9;
/// Two unit maximizers are the same class when min(|w1 - w2|, |w1 + w2|) is
/// below this.
inline constexpr double kAntipodalDedup = 1e-6;

struct IterConfig {
  int starts = 16;
  int max_iters = 10000;
  double tol = 1e-12;
  std::uint64_t seed = 0;
  Execution exec = Execution::parallel;
};

/// Spectral norm together with one representative per antipodal class of
/// maximizers of |p_A| on the unit sphere.
struct MaximizerSet {
  double value = 0.0;
  std::vector<Vector> points;
  bool is_exact = false;
  bool converged = true;
};

struct RankOneApprox {
  double lambda = 0.0;
  Vector w;
};

enum class SolverMethod { automatic, exact_binary, power };

/// Flips w so that its first nonzero coordinate is positive.
Vector canonical_sign(Vector w);

/// Exact spectral norm of a binary form (dim = 2) from the real roots of the
/// tangential derivative x dp/dy - y dp/dx.
MaximizerSet spectral_norm_binary(const SymTensor& a, double tol = kGlobalMaxTolerance);

int count_global_maximizers(const SymTensor& a, double tol = kGlobalMaxTolerance);

/// One run of the shifted symmetric power iteration
///   w <- normalize(sign * grad p_A(w) + shift * w)
/// where sign = sign(p_A(start)). |p_A(w_k)| is nondecreasing whenever
/// shift >= d(d-1) |A|_sigma.
struct PowerRun {
  Vector w;
  double value = 0.0;  // |p_A(w)|
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // |p_A(w_k)|, filled when requested
};

double power_shift(const SymTensor& a);

PowerRun power_iterate(const SymTensor& a, const Vector& start, double shift, int max_iters,
                       double tol, bool record_history = false);

/// Multistart power iteration from cfg.starts random unit vectors plus the
/// coordinate directions. `converged` reports the run that attained the value.
MaximizerSet spectral_norm_power(const SymTensor& a, const IterConfig& cfg = {});

MaximizerSet spectral_maximizers(const SymTensor& a, SolverMethod method = SolverMethod::automatic,
                                 const IterConfig& cfg = {});

double spectral_norm(const SymTensor& a, SolverMethod method = SolverMethod::automatic,
                     const IterConfig& cfg = {});

/// lambda w^d with lambda = p_A(w) is a best symmetric rank-one approximation.
RankOneApprox best_rank_one(const SymTensor& a, SolverMethod method = SolverMethod::automatic,
                            const IterConfig& cfg = {});

/// |A|_sigma / |A|_F.
double ratio(const SymTensor& a, SolverMethod method = SolverMethod::automatic,
             const IterConfig& cfg = {});

/// min over rank-one B of |A - B|_F / |A|_F = sqrt(1 - ratio^2).
double relative_distance(const SymTensor& a, SolverMethod method = SolverMethod::automatic,
                         const IterConfig& cfg = {});

double relative_distance_from_ratio(double ratio);

/// Brute-force max of |p_A| over `points` equally spaced angles in [0, pi).
double circle_grid_max(const SymTensor& a, std::size_t points,
                       Execution exec = Execution::parallel);

/// p at (x, y) for binary-form polynomial coefficients c_j of x^{d-j} y^j.
double eval_binary_form(std::span<const double> poly, double x, double y);

}  // namespace symratio
