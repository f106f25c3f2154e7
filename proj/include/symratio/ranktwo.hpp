#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symratio/parallel.hpp"
#include "symratio/roots.hpp"
#include "symratio/spectral.hpp"
#include "symratio/symtensor.hpp"

namespace symratio {

/// A = alpha u^d - beta v^d.
struct RankTwoParams {
  double alpha = 1.0;
  double beta = 1.0;
  Vector u;
  Vector v;
};

/// A = a u^d + b d u^{d-1} v with u, v orthonormal: the tensors in the closure
/// of rank two that are not themselves of rank two.
struct BorderParams {
  double a = 0.0;
  double b = 1.0;
  Vector u;
  Vector v;
};

enum class CaseTag { sum, equal, generic, border };

const char* to_string(CaseTag tag);

/// (1 - 1/d)^{(d-1)/2}: the smallest spectral-to-Frobenius ratio over
/// symmetric tensors of border rank at most two.
double rank_two_ratio_bound(int d);

/// Unit u, v with <u, v> >= 0, alpha > 0 and, when beta > 0, alpha >= beta.
/// Sign flips use (-v)^d = (-1)^d v^d; F is invariant under A -> -A.
RankTwoParams canonicalize(RankTwoParams p, int d);

CaseTag classify_case(const RankTwoParams& canonical);

/// Rejects alpha = 0, beta = 0 and (nearly) dependent u, v.
SymTensor make_rank_two(const RankTwoParams& p, int d);

/// u = (cos(theta/2), sin(theta/2)), v = (cos(theta/2), -sin(theta/2)), so
/// <u, v> = cos(theta).
RankTwoParams planar_params(double alpha, double beta, double theta);

/// Same tensor as make_rank_two(planar_params(...)), assembled coefficient by
/// coefficient so that small theta and alpha close to beta lose no accuracy.
SymTensor make_rank_two_planar(double alpha, double beta, double theta, int d);

/// W_d = d e1^{d-1} e2 on R^2.
SymTensor make_w(int d);
double w_frob_norm(int d);
double w_spectral_norm(int d);

SymTensor make_border(const BorderParams& p, int d);

/// F = |A|_sigma^2 / |A|_F^2 for A = alpha u^d - beta v^d, computed exactly on
/// span{u, v}.
double ratio_F(const RankTwoParams& p, int d);

/// Gradient of F over (alpha, beta, u, v) at a point where A has a unique best
/// rank-one approximation.
struct RatioGradient {
  double d_alpha = 0.0;
  double d_beta = 0.0;
  Vector d_u;
  Vector d_v;
  Vector tangent_u;  // d_u minus its component along u
  Vector tangent_v;

  /// Norm of the gradient restricted to |u| = |v| = const.
  double riemannian_norm() const;
};

RatioGradient grad_F(const RankTwoParams& p, int d);

/// Frobenius-orthogonal projection of w^d onto {u^{d-1} x + v^{d-1} y}, by
/// Householder least squares. u_part, v_part is the minimum-norm solution.
struct PairProjection {
  Vector u_part;  // x
  Vector v_part;  // y
  SymTensor tensor;
};

PairProjection project_pair(const Vector& u, const Vector& v, const Vector& w, int d);

/// Closed-form coefficients a, b of the candidate a u^{d-1} w + b v^{d-1} w
/// with denominator 1 - <u,v>^{2d-2}. This is not the orthogonal projection in
/// general; it agrees with project_pair when w is parallel to u or v or
/// orthogonal to both.
struct LemmaCoefficients {
  double a = 0.0;
  double b = 0.0;
};
LemmaCoefficients lemma_projection_coefficients(const Vector& u, const Vector& v,
                                                const Vector& w, int d);
SymTensor lemma_projection(const Vector& u, const Vector& v, const Vector& w, int d);

/// Real roots of gamma (x - a)(x + b)^{d-1} - x for a, gamma > 0, b >= 0.
RootSet critical_eq_roots(double a, double b, double gamma, int d);

/// For unit u, v with alpha > beta > 0 and <u,v> >= 0: every global maximizer w of |p_A|
/// satisfies |<u,w>| >= |<v,w>| - 1e-10.
bool maximizer_side_check(const RankTwoParams& p, int d);

/// Equal-norm difference family u = (1, t), v = (1, -t).
double g_of_t(int d, double t);  // |u^d - v^d|_F^2
double h_of_t(int d, double t);  // <u^d - v^d, (sqrt((d-1)/d), 1/sqrt(d))^d>

struct BoundValue {
  double value = 0.0;
  bool is_limit = false;  // t = 0: the t -> 0 limit (1 - 1/d)^{d-1}
};
BoundValue diff_bound(int d, double t);
double diff_bound_limit(int d);

/// Exact squared ratio of u^d - v^d with u = (1, t), v = (1, -t).
double equal_family_ratio_sq(int d, double t);

struct SearchConfig {
  int starts = 64;
  int budget = 10000;  // evaluations of F, shared evenly by the starts
  std::uint64_t seed = 0;
  double tol = 1e-10;  // step size below which a start stops
  Execution exec = Execution::parallel;
};

struct SearchTraceEntry {
  int start = 0;
  int step = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double theta = 0.0;
  double F = 0.0;
  std::string mode;  // "init", "gradient", "coordinate"
};

struct MinRatioResult {
  double best_F = 0.0;
  double best_ratio = 0.0;
  double alpha = 0.0;  // planar parameters of the best point, alpha^2 + beta^2 = 1
  double beta = 0.0;
  double theta = 0.0;
  double alpha_unit_frob = 0.0;  // alpha, beta rescaled to |A|_F = 1
  double beta_unit_frob = 0.0;
  CaseTag best_case = CaseTag::generic;
  int evaluations = 0;
  bool budget_exhausted = false;  // some start ran out of budget before its steps shrank
  bool no_decrease = false;       // no start improved on its initial point
  std::vector<SearchTraceEntry> trace;
};

/// Multistart descent of F over planar rank-two tensors: projected gradient
/// with Armijo backtracking where F is differentiable, coordinate search in
/// (beta/alpha, theta) where the best rank-one approximation is not unique.
MinRatioResult min_ratio_search(int d, const SearchConfig& cfg = {});

struct BorderScanRow {
  double a = 0.0;
  double b = 0.0;
  double ratio = 0.0;
  double lb_interior = 0.0;  // <A, (sqrt(d-1), 1)^d / sqrt(d)^d>
  double lb_axis = 0.0;      // <A, e1^d> = a
};

/// a in [0, 1] on `steps` points, b = sqrt((1 - a^2)/d) so |A|_F = 1.
std::vector<BorderScanRow> border_ratio_scan(int d, int steps);

}  // namespace symratio
