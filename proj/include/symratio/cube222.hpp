#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "symratio/parallel.hpp"
#include "symratio/spectral.hpp"
#include "symratio/symtensor.hpp"

namespace symratio {

/// Dense real tensor of any order, entries in row-major order (last index
/// fastest).
class DenseTensor {
 public:
  DenseTensor() = default;
  explicit DenseTensor(std::vector<int> dims);
  DenseTensor(std::vector<int> dims, std::vector<double> entries);

  int order() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<double>& entries() const { return entries_; }
  std::vector<double>& entries() { return entries_; }

  double& at(std::span<const int> index);
  double at(std::span<const int> index) const;
  double& operator()(int i, int j, int k);
  double operator()(int i, int j, int k) const;

  bool is_zero() const;

 private:
  std::size_t offset(std::span<const int> index) const;

  std::vector<int> dims_;
  std::vector<double> entries_;
};

/// Third-order tensors are DenseTensor with three dims.
using Tensor3 = DenseTensor;

double frob_norm(const DenseTensor& t);

/// <T, u_1 x ... x u_k>.
double multilinear_form(const DenseTensor& t, const std::vector<Vector>& factors);

/// T contracted with every factor except `mode`.
Vector contract_except(const DenseTensor& t, const std::vector<Vector>& factors, int mode);

DenseTensor outer(const std::vector<Vector>& factors);

/// Alternating maximization defaults: 32 starts, stop when a sweep changes the
/// objective by less than 1e-14 or after 10^4 sweeps.
IterConfig als_defaults();

struct SpectralResult3 {
  double value = 0.0;
  std::vector<Vector> factors;
  bool converged = false;
  int sweeps = 0;
};

/// One alternating-maximization run. Each step replaces one factor by the
/// normalized contraction of T with the others, so the objective never
/// decreases; `history` receives the objective after every step when given.
SpectralResult3 als_run(const DenseTensor& t, std::vector<Vector> start, int max_sweeps,
                        double tol, std::vector<double>* history = nullptr);

/// Max of <T, u_1 x ... x u_k> over unit vectors, by multistart alternating
/// maximization (cfg.starts random starts plus the all-e1 start).
SpectralResult3 spectral_norm_3(const DenseTensor& t, const IterConfig& cfg = als_defaults());

double ratio_3(const DenseTensor& t, const IterConfig& cfg = als_defaults());

/// Cayley's hyperdeterminant of a 2x2x2 tensor.
double hyperdet(const Tensor3& t);

/// Slices along the third index: T(:,:,0) = [[1,0],[0,b]], T(:,:,1) = [[0,a],[c,d]].
struct NormalForm222 {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  double constraint() const { return a * a + b * b + c * c + d * d + 2.0 * a * b * c; }
  double rank_indicator() const { return d * d + 4.0 * a * b * c; }
  double objective() const { return 1.0 + a * a + b * b + c * c + d * d; }
};

bool is_feasible(const NormalForm222& nf, double slack = 1e-12);

/// Throws invalid_argument when the constraints are violated.
Tensor3 embed_normal_form(const NormalForm222& nf);

struct FeasibleScanConfig {
  std::size_t samples = 1000000;
  std::size_t polish = 100;   // best samples refined by Nelder-Mead
  double margin = 0.0;        // require d^2 + 4abc >= margin
  std::uint64_t seed = 0;
  Execution exec = Execution::parallel;
};

struct FeasibleScanResult {
  double max_objective = 0.0;
  NormalForm222 argmax;
  bool boundary = false;   // d^2 + 4abc at the argmax is within 1e-4 of the margin
  std::size_t accepted = 0;
};

/// Max of 1 + a^2 + b^2 + c^2 + d^2 over feasible normal forms with
/// d^2 + 4abc >= margin.
FeasibleScanResult feasible_max_scan(const FeasibleScanConfig& cfg = {});

/// u1 x u2 x u3 + v1 x v2 x v3.
Tensor3 make_rank_two_3(const Vector& u1, const Vector& u2, const Vector& u3, const Vector& v1,
                        const Vector& v2, const Vector& v3);

/// Random u_1 x ... x u_d + v_1 x ... x v_d with Gaussian factors in R^n.
DenseTensor random_rank_two(std::mt19937_64& rng, int order, int n);

/// The full array of a symmetric tensor.
DenseTensor to_dense(const SymTensor& a);

/// W_3 = e1 x e1 x e2 + e1 x e2 x e1 + e2 x e1 x e1.
Tensor3 make_w3();

}  // namespace symratio
