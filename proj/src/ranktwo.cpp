#include "symratio/ranktwo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "symratio/error.hpp"

namespace symratio {

namespace {

constexpr double kEqualTolerance = 1e-12;
constexpr double kOrthonormalTolerance = 1e-12;
constexpr double kSideSlack = 1e-10;

void check_order_at_least(int d, int minimum) {
  if (d < minimum) {
    throw Error(ErrorKind::invalid_argument,
                "order must be at least " + std::to_string(minimum) + ", got " + std::to_string(d));
  }
}

double ipow(double x, int k) { return std::pow(x, static_cast<double>(k)); }

// (1 + x)^d - (1 - x)^d without cancellation for small x
double pow_difference(double x, int d) {
  if (x == 0.0) return 0.0;
  if (std::abs(x) >= 0.5) return ipow(1.0 + x, d) - ipow(1.0 - x, d);
  const double a = d * std::log1p(x);
  const double b = d * std::log1p(-x);
  return std::exp(b) * std::expm1(a - b);
}

void check_unit(const Vector& x, const char* name) {
  if (std::abs(x.norm() - 1.0) > kOrthonormalTolerance) {
    throw Error(ErrorKind::invalid_argument, std::string(name) + " must be a unit vector");
  }
}

// Unique unit maximizer of |p_A| on the sphere of span{u, v}, lifted to R^n.
Vector unique_maximizer(const SymTensor& a, const Vector& u, const Vector& v) {
  if (a.dim() == 2) {
    const MaximizerSet set = spectral_norm_binary(a);
    if (set.points.size() != 1) {
      throw Error(ErrorKind::not_differentiable,
                  "best rank-one approximation is not unique (" +
                      std::to_string(set.points.size()) + " classes)");
    }
    return set.points.front();
  }
  const PlaneRestriction plane = restrict_to_plane(a, u, v);
  const MaximizerSet set = spectral_norm_binary(plane.tensor);
  if (set.points.size() != 1) {
    throw Error(ErrorKind::not_differentiable,
                "best rank-one approximation is not unique (" +
                    std::to_string(set.points.size()) + " classes)");
  }
  return plane.lift(set.points.front());
}

std::vector<Vector> all_maximizers(const SymTensor& a, const Vector& u, const Vector& v) {
  std::vector<Vector> out;
  if (a.dim() == 2) return spectral_norm_binary(a).points;
  const PlaneRestriction plane = restrict_to_plane(a, u, v);
  for (const auto& p : spectral_norm_binary(plane.tensor).points) out.push_back(plane.lift(p));
  return out;
}

}  // namespace

const char* to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::sum: return "SUM";
    case CaseTag::equal: return "EQUAL";
    case CaseTag::generic: return "GENERIC";
    case CaseTag::border: return "BORDER";
  }
  return "UNKNOWN";
}

double rank_two_ratio_bound(int d) {
  return std::pow(1.0 - 1.0 / d, 0.5 * (d - 1));
}

RankTwoParams canonicalize(RankTwoParams p, int d) {
  const double nu = p.u.norm();
  const double nv = p.v.norm();
  if (nu == 0.0 || nv == 0.0) throw Error(ErrorKind::invalid_argument, "zero factor vector");
  p.alpha *= ipow(nu, d);
  p.beta *= ipow(nv, d);
  p.u /= nu;
  p.v /= nv;
  if (p.u.dot(p.v) < 0.0) {
    p.v = -p.v;
    if (d % 2 == 1) p.beta = -p.beta;
  }
  if (p.alpha < 0.0) {
    p.alpha = -p.alpha;
    p.beta = -p.beta;
  }
  if (p.beta > p.alpha) {
    std::swap(p.alpha, p.beta);
    std::swap(p.u, p.v);
  }
  return p;
}

CaseTag classify_case(const RankTwoParams& p) {
  if (p.beta <= 0.0) return CaseTag::sum;
  if (std::abs(p.alpha - p.beta) <= kEqualTolerance * std::max(std::abs(p.alpha), std::abs(p.beta))) {
    return CaseTag::equal;
  }
  return CaseTag::generic;
}

SymTensor make_rank_two(const RankTwoParams& p, int d) {
  if (p.alpha == 0.0 || p.beta == 0.0) {
    throw Error(ErrorKind::invalid_argument, "rank-two tensor needs nonzero alpha and beta");
  }
  if (p.u.size() != p.v.size()) {
    throw Error(ErrorKind::dimension_mismatch, "u and v differ in length");
  }
  if (nearly_dependent(p.u, p.v)) {
    throw Error(ErrorKind::degenerate_input, "u and v are linearly dependent (rank < 2)");
  }
  return p.alpha * sym_rank_one(p.u, d) - p.beta * sym_rank_one(p.v, d);
}

RankTwoParams planar_params(double alpha, double beta, double theta) {
  RankTwoParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.u = Vector(2);
  p.v = Vector(2);
  p.u << std::cos(0.5 * theta), std::sin(0.5 * theta);
  p.v << std::cos(0.5 * theta), -std::sin(0.5 * theta);
  return p;
}

SymTensor make_rank_two_planar(double alpha, double beta, double theta, int d) {
  check_order_at_least(d, 1);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const double diff = alpha - beta;
  const double sum = alpha + beta;
  std::vector<double> coeffs(static_cast<std::size_t>(d + 1));
  for (int j = 0; j <= d; ++j) {
    coeffs[static_cast<std::size_t>(j)] = ipow(c, d - j) * ipow(s, j) * (j % 2 == 0 ? diff : sum);
  }
  return SymTensor(2, d, std::move(coeffs));
}

SymTensor make_w(int d) {
  check_order_at_least(d, 2);
  std::vector<double> coeffs(static_cast<std::size_t>(d + 1), 0.0);
  coeffs[1] = 1.0;
  return SymTensor(2, d, std::move(coeffs));
}

double w_frob_norm(int d) { return std::sqrt(static_cast<double>(d)); }

double w_spectral_norm(int d) {
  return d * std::pow((d - 1.0) / d, 0.5 * (d - 1)) / std::sqrt(static_cast<double>(d));
}

SymTensor make_border(const BorderParams& p, int d) {
  check_order_at_least(d, 2);
  if (p.a < 0.0 || p.b < 0.0 || (p.a == 0.0 && p.b == 0.0)) {
    throw Error(ErrorKind::invalid_argument, "border parameters need a, b >= 0, not both zero");
  }
  if (p.u.size() != p.v.size()) throw Error(ErrorKind::dimension_mismatch, "u and v differ in length");
  check_unit(p.u, "u");
  check_unit(p.v, "v");
  if (std::abs(p.u.dot(p.v)) > kOrthonormalTolerance) {
    throw Error(ErrorKind::invalid_argument, "border tensor needs orthogonal u and v");
  }
  return p.a * sym_rank_one(p.u, d) + (p.b * d) * sym_outer(p.u, d - 1, p.v, 1);
}

double ratio_F(const RankTwoParams& p, int d) {
  const SymTensor a = make_rank_two(p, d);
  const double frob_sq = frob_inner(a, a);
  const double sigma = a.dim() == 2 ? spectral_norm_binary(a).value
                                    : spectral_norm_binary(restrict_to_plane(a, p.u, p.v).tensor).value;
  return sigma * sigma / frob_sq;
}

double RatioGradient::riemannian_norm() const {
  return std::sqrt(d_alpha * d_alpha + d_beta * d_beta + tangent_u.squaredNorm() +
                   tangent_v.squaredNorm());
}

RatioGradient grad_F(const RankTwoParams& p, int d) {
  const SymTensor a = make_rank_two(p, d);
  const Vector w = unique_maximizer(a, p.u, p.v);
  const double alpha = p.alpha;
  const double beta = p.beta;
  const double uu = p.u.squaredNorm();
  const double vv = p.v.squaredNorm();
  const double uv = p.u.dot(p.v);
  const double uw = p.u.dot(w);
  const double vw = p.v.dot(w);

  const double lambda = alpha * ipow(uw, d) - beta * ipow(vw, d);
  const double frob_sq = frob_inner(a, a);
  // dF = 2 lambda <dA, w^d> / N - 2 lambda^2 <A, dA> / N^2
  const double c1 = 2.0 * lambda / frob_sq;
  const double c2 = 2.0 * lambda * lambda / (frob_sq * frob_sq);

  RatioGradient g;
  g.d_alpha = c1 * ipow(uw, d) - c2 * (alpha * ipow(uu, d) - beta * ipow(uv, d));
  g.d_beta = -c1 * ipow(vw, d) + c2 * (alpha * ipow(uv, d) - beta * ipow(vv, d));
  // <u^{d-1} du, w^d> = <u,w>^{d-1} <du,w>;  <u^{d-1} du, v^d> = <u,v>^{d-1} <du,v>
  g.d_u = c1 * alpha * d * ipow(uw, d - 1) * w -
          c2 * alpha * d * (alpha * ipow(uu, d - 1) * p.u - beta * ipow(uv, d - 1) * p.v);
  g.d_v = -c1 * beta * d * ipow(vw, d - 1) * w +
          c2 * beta * d * (alpha * ipow(uv, d - 1) * p.u - beta * ipow(vv, d - 1) * p.v);
  const Vector uhat = p.u / std::sqrt(uu);
  const Vector vhat = p.v / std::sqrt(vv);
  g.tangent_u = g.d_u - g.d_u.dot(uhat) * uhat;
  g.tangent_v = g.d_v - g.d_v.dot(vhat) * vhat;
  return g;
}

PairProjection project_pair(const Vector& u, const Vector& v, const Vector& w, int d) {
  check_order_at_least(d, 2);
  if (u.size() != v.size() || u.size() != w.size()) {
    throw Error(ErrorKind::dimension_mismatch, "project_pair vectors differ in length");
  }
  check_unit(u, "u");
  check_unit(v, "v");
  const double c = u.dot(v);
  if (std::abs(1.0 - c * c) <= 1e-14) {
    throw Error(ErrorKind::degenerate_input, "project_pair needs <u,v>^2 < 1");
  }
  const Eigen::Index n = u.size();
  // Least squares in coordinates where the Frobenius inner product is the
  // Euclidean one (coefficient times sqrt(weight)). QR keeps the error at
  // cond(B) rather than the cond(B)^2 of the Gram system.
  const SymTensor target = sym_rank_one(w, d);
  const auto m = static_cast<Eigen::Index>(target.size());
  Vector scale(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    scale(k) = std::sqrt(target.basis().weight(static_cast<std::size_t>(k)));
  }
  Matrix design(m, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const SymTensor bu = sym_outer(u, d - 1, Vector::Unit(n, i), 1);
    const SymTensor bv = sym_outer(v, d - 1, Vector::Unit(n, i), 1);
    for (Eigen::Index k = 0; k < m; ++k) {
      design(k, i) = scale(k) * bu.coeff(static_cast<std::size_t>(k));
      design(k, n + i) = scale(k) * bv.coeff(static_cast<std::size_t>(k));
    }
  }
  Vector rhs(m);
  for (Eigen::Index k = 0; k < m; ++k) rhs(k) = scale(k) * target.coeff(static_cast<std::size_t>(k));
  const Eigen::CompleteOrthogonalDecomposition<Matrix> cod(design);
  const Vector sol = cod.solve(rhs);

  // The coefficients can be large and cancel when u and v are close, so the
  // projected tensor is taken from the orthonormal range basis instead.
  const Matrix q = Matrix(cod.householderQ()).leftCols(cod.rank());
  const Vector projected = q * (q.transpose() * rhs);
  std::vector<double> coeffs(static_cast<std::size_t>(m));
  for (Eigen::Index k = 0; k < m; ++k) coeffs[static_cast<std::size_t>(k)] = projected(k) / scale(k);
  return {sol.head(n), sol.tail(n), SymTensor(static_cast<int>(n), d, std::move(coeffs))};
}

LemmaCoefficients lemma_projection_coefficients(const Vector& u, const Vector& v, const Vector& w,
                                                int d) {
  check_order_at_least(d, 2);
  const double c = u.dot(v);
  const double denom = 1.0 - ipow(c, 2 * d - 2);
  if (std::abs(denom) <= 1e-14) {
    throw Error(ErrorKind::degenerate_input, "closed-form projection needs <u,v>^2 < 1");
  }
  const double uw = ipow(u.dot(w), d - 1);
  const double vw = ipow(v.dot(w), d - 1);
  const double cd = ipow(c, d - 1);
  return {(uw - cd * vw) / denom, (vw - cd * uw) / denom};
}

SymTensor lemma_projection(const Vector& u, const Vector& v, const Vector& w, int d) {
  const LemmaCoefficients k = lemma_projection_coefficients(u, v, w, d);
  return k.a * sym_outer(u, d - 1, w, 1) + k.b * sym_outer(v, d - 1, w, 1);
}

RootSet critical_eq_roots(double a, double b, double gamma, int d) {
  check_order_at_least(d, 2);
  if (!(a > 0.0) || !(b >= 0.0) || !(gamma > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "critical equation needs a > 0, b >= 0, gamma > 0");
  }
  // (x + b)^{d-1}, highest degree first
  std::vector<double> binom(static_cast<std::size_t>(d), 0.0);
  for (int k = 0; k < d; ++k) binom[static_cast<std::size_t>(k)] = binomial(d - 1, k) * ipow(b, k);
  std::vector<double> poly(static_cast<std::size_t>(d + 1), 0.0);
  for (int k = 0; k < d; ++k) {
    poly[static_cast<std::size_t>(k)] += gamma * binom[static_cast<std::size_t>(k)];
    poly[static_cast<std::size_t>(k + 1)] -= gamma * a * binom[static_cast<std::size_t>(k)];
  }
  poly[static_cast<std::size_t>(d - 1)] -= 1.0;
  return real_roots(poly);
}

bool maximizer_side_check(const RankTwoParams& p, int d) {
  if (!(p.alpha > p.beta && p.beta > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "maximizer_side_check needs alpha > beta > 0");
  }
  if (p.u.dot(p.v) < 0.0) throw Error(ErrorKind::invalid_argument, "needs <u,v> >= 0");
  check_unit(p.u, "u");
  check_unit(p.v, "v");
  const SymTensor a = make_rank_two(p, d);
  for (const auto& w : all_maximizers(a, p.u, p.v)) {
    if (std::abs(p.u.dot(w)) < std::abs(p.v.dot(w)) - kSideSlack) return false;
  }
  return true;
}

double g_of_t(int d, double t) { return 2.0 * pow_difference(t * t, d); }

double h_of_t(int d, double t) {
  const double s = std::sqrt(d - 1.0);
  // (s + t)^d - (s - t)^d = s^d ((1 + t/s)^d - (1 - t/s)^d)
  return std::pow(s / std::sqrt(static_cast<double>(d)), d) * pow_difference(t / s, d);
}

double diff_bound_limit(int d) { return std::pow(1.0 - 1.0 / d, d - 1); }

BoundValue diff_bound(int d, double t) {
  check_order_at_least(d, 2);
  if (t == 0.0) return {diff_bound_limit(d), true};
  if (!(t > 0.0 && t <= 1.0)) throw Error(ErrorKind::invalid_argument, "diff_bound needs t in (0, 1]");
  const double h = h_of_t(d, t);
  return {h * h / g_of_t(d, t), false};
}

double equal_family_ratio_sq(int d, double t) {
  std::vector<double> coeffs(static_cast<std::size_t>(d + 1), 0.0);
  for (int j = 1; j <= d; j += 2) coeffs[static_cast<std::size_t>(j)] = 2.0 * ipow(t, j);
  const SymTensor a(2, d, std::move(coeffs));
  const double sigma = spectral_norm_binary(a).value;
  return sigma * sigma / frob_inner(a, a);
}

namespace {

struct SearchPoint {
  double alpha;
  double beta;
  double theta;
};

constexpr double kThetaMin = 1e-6;
constexpr double kThetaMax = std::numbers::pi / 2;

SearchPoint project(SearchPoint x) {
  double r = std::hypot(x.alpha, x.beta);
  if (r == 0.0) r = 1.0;
  x.alpha /= r;
  x.beta /= r;
  if (x.alpha < 0.0) {
    x.alpha = -x.alpha;
    x.beta = -x.beta;
  }
  if (x.alpha == 0.0) x.alpha = 1e-12;
  x.theta = std::clamp(x.theta, kThetaMin, kThetaMax);
  return x;
}

struct Evaluation {
  double F;
  int classes;
};

Evaluation evaluate(const SearchPoint& x, int d) {
  const SymTensor a = make_rank_two_planar(x.alpha, x.beta, x.theta, d);
  const MaximizerSet set = spectral_norm_binary(a);
  return {set.value * set.value / frob_inner(a, a), static_cast<int>(set.points.size())};
}

struct StartResult {
  SearchPoint best{};
  double best_F = 0.0;
  double initial_F = 0.0;
  int evaluations = 0;
  bool exhausted = false;
  std::vector<SearchTraceEntry> trace;
};

StartResult run_start(int d, int start, int budget, const SearchConfig& cfg) {
  auto rng = stream_rng(cfg.seed, static_cast<std::uint64_t>(start));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SearchPoint x = project({unit(rng) + 1e-3, 2.0 * unit(rng) - 1.0,
                           kThetaMin + (kThetaMax - kThetaMin) * unit(rng)});
  StartResult out;
  Evaluation fx = evaluate(x, d);
  out.evaluations = 1;
  out.initial_F = fx.F;
  out.trace.push_back({start, 0, x.alpha, x.beta, x.theta, fx.F, "init"});

  double grad_step = 1.0;
  double step_rho = 0.1;
  double step_theta = 0.1;
  int step = 0;
  auto spend = [&](const SearchPoint& y) {
    ++out.evaluations;
    return evaluate(y, d);
  };

  while (out.evaluations < budget) {
    ++step;
    bool moved = false;
    std::string mode;
    if (fx.classes == 1) {
      mode = "gradient";
      try {
        const RankTwoParams p = planar_params(x.alpha, x.beta, x.theta);
        const RatioGradient g = grad_F(p, d);
        ++out.evaluations;
        Vector du(2), dv(2);
        du << -0.5 * std::sin(0.5 * x.theta), 0.5 * std::cos(0.5 * x.theta);
        dv << -0.5 * std::sin(0.5 * x.theta), -0.5 * std::cos(0.5 * x.theta);
        const double g_theta = g.d_u.dot(du) + g.d_v.dot(dv);
        double t = std::min(grad_step * 2.0, 1e3);
        while (out.evaluations < budget) {
          const SearchPoint y =
              project({x.alpha - t * g.d_alpha, x.beta - t * g.d_beta, x.theta - t * g_theta});
          const double dist_sq = (y.alpha - x.alpha) * (y.alpha - x.alpha) +
                                 (y.beta - x.beta) * (y.beta - x.beta) +
                                 (y.theta - x.theta) * (y.theta - x.theta);
          if (dist_sq < cfg.tol * cfg.tol) break;
          const Evaluation fy = spend(y);
          if (fy.F <= fx.F - 1e-4 * dist_sq / t) {
            x = y;
            fx = fy;
            grad_step = t;
            moved = true;
            break;
          }
          t *= 0.5;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::not_differentiable) throw;
      }
    }
    if (!moved) {
      // pattern search in (rho = beta/alpha, theta)
      mode = "coordinate";
      if (step_rho < cfg.tol && step_theta < cfg.tol) break;
      const double rho = x.beta / x.alpha;
      const SearchPoint trial[4] = {
          project({1.0, rho + step_rho, x.theta}), project({1.0, rho - step_rho, x.theta}),
          project({x.alpha, x.beta, x.theta - step_theta}),
          project({x.alpha, x.beta, x.theta + step_theta})};
      int best_k = -1;
      Evaluation best_eval = fx;
      for (int k = 0; k < 4 && out.evaluations < budget; ++k) {
        const Evaluation fy = spend(trial[k]);
        if (fy.F < best_eval.F) {
          best_eval = fy;
          best_k = k;
        }
      }
      if (best_k >= 0) {
        x = trial[best_k];
        fx = best_eval;
        moved = true;
        if (best_k < 2) step_rho *= 2.0; else step_theta *= 2.0;
      } else {
        step_rho *= 0.5;
        step_theta *= 0.5;
      }
    }
    out.trace.push_back({start, step, x.alpha, x.beta, x.theta, fx.F, mode});
  }
  out.exhausted = out.evaluations >= budget;
  out.best = x;
  out.best_F = fx.F;
  return out;
}

}  // namespace

MinRatioResult min_ratio_search(int d, const SearchConfig& cfg) {
  check_order_at_least(d, 3);
  if (cfg.starts < 1 || cfg.budget < cfg.starts) {
    throw Error(ErrorKind::invalid_argument, "search needs starts >= 1 and budget >= starts");
  }
  const int per_start = cfg.budget / cfg.starts;
  std::vector<StartResult> results(static_cast<std::size_t>(cfg.starts));
  for_each_index(results.size(), cfg.exec, [&](std::size_t i) {
    results[i] = run_start(d, static_cast<int>(i), per_start, cfg);
  });

  MinRatioResult out;
  std::size_t best = 0;
  bool any_decrease = false;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].best_F < results[best].best_F) best = i;
    out.evaluations += results[i].evaluations;
    out.budget_exhausted = out.budget_exhausted || results[i].exhausted;
    any_decrease = any_decrease || results[i].best_F < results[i].initial_F;
    out.trace.insert(out.trace.end(), results[i].trace.begin(), results[i].trace.end());
  }
  const SearchPoint x = results[best].best;
  out.best_F = results[best].best_F;
  out.best_ratio = std::sqrt(out.best_F);
  out.alpha = x.alpha;
  out.beta = x.beta;
  out.theta = x.theta;
  const double frob = frob_norm(make_rank_two_planar(x.alpha, x.beta, x.theta, d));
  out.alpha_unit_frob = x.alpha / frob;
  out.beta_unit_frob = x.beta / frob;
  out.best_case = classify_case(planar_params(x.alpha, x.beta, x.theta));
  out.no_decrease = !any_decrease;
  return out;
}

std::vector<BorderScanRow> border_ratio_scan(int d, int steps) {
  check_order_at_least(d, 2);
  if (steps < 2) throw Error(ErrorKind::invalid_argument, "border scan needs at least 2 steps");
  const double s = std::sqrt(d - 1.0);
  const double norm = std::pow(std::sqrt(static_cast<double>(d)), d);
  std::vector<BorderScanRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    BorderScanRow row;
    row.a = static_cast<double>(k) / (steps - 1);
    row.b = std::sqrt(std::max(0.0, (1.0 - row.a * row.a) / d));
    std::vector<double> coeffs(static_cast<std::size_t>(d + 1), 0.0);
    coeffs[0] = row.a;
    coeffs[1] = row.b;
    const SymTensor a(2, d, std::move(coeffs));
    row.ratio = spectral_norm_binary(a).value / frob_norm(a);
    row.lb_interior = (row.a * std::pow(s, d) + row.b * d * std::pow(s, d - 1)) / norm;
    row.lb_axis = row.a;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace symratio
