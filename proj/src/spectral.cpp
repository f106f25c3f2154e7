#include "symratio/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "symratio/error.hpp"
#include "symratio/roots.hpp"

namespace symratio {

namespace {

// Extra polish seeds per degree, equally spaced in angle.
constexpr int kGridPerDegree = 4;

void require_nonzero(const SymTensor& a) {
  if (a.is_zero()) throw Error(ErrorKind::zero_tensor, "tensor is zero");
}

std::vector<double> binary_poly(const SymTensor& a) {
  std::vector<double> c(a.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = a.poly_coeff(j);
  return c;
}

// Coefficients of x dp/dy - y dp/dx for p = sum_j c_j x^{d-j} y^j.
std::vector<double> tangential(const std::vector<double>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  std::vector<double> q(c.size(), 0.0);
  for (int m = 0; m <= d; ++m) {
    double v = 0.0;
    if (m + 1 <= d) v += (m + 1) * c[static_cast<std::size_t>(m + 1)];
    if (m - 1 >= 0) v -= (d - m + 1) * c[static_cast<std::size_t>(m - 1)];
    q[static_cast<std::size_t>(m)] = v;
  }
  return q;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Newton on g(phi) = q(cos phi, sin phi) with g' = (Tq)(cos phi, sin phi).
double polish_angle(const std::vector<double>& q, const std::vector<double>& dq, double phi) {
  double g = eval_binary_form(q, std::cos(phi), std::sin(phi));
  for (int iter = 0; iter < 100; ++iter) {
    const double slope = eval_binary_form(dq, std::cos(phi), std::sin(phi));
    if (slope == 0.0 || g == 0.0) break;
    double step = std::clamp(g / slope, -0.1, 0.1);
    bool improved = false;
    for (int halving = 0; halving < 50; ++halving) {
      const double candidate = phi - step;
      const double gc = eval_binary_form(q, std::cos(candidate), std::sin(candidate));
      if (std::abs(gc) < std::abs(g)) {
        phi = candidate;
        g = gc;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved || std::abs(step) < 1e-16) break;
  }
  return phi;
}

double antipodal_distance(const Vector& a, const Vector& b) {
  return std::min((a - b).norm(), (a + b).norm());
}

struct Candidate {
  Vector w;
  double value;
};

// Keeps the candidates within tol of the best value, one per antipodal class,
// in a deterministic order.
std::vector<Vector> global_classes(const std::vector<Candidate>& candidates, double best,
                                   double tol) {
  std::vector<Vector> classes;
  for (const auto& c : candidates) {
    if (c.value < best * (1.0 - tol)) continue;
    bool seen = false;
    for (const auto& k : classes) {
      if (antipodal_distance(k, c.w) < kAntipodalDedup) {
        seen = true;
        break;
      }
    }
    if (!seen) classes.push_back(canonical_sign(c.w));
  }
  std::sort(classes.begin(), classes.end(), [](const Vector& x, const Vector& y) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x(i) != y(i)) return x(i) > y(i);
    }
    return false;
  });
  return classes;
}

}  // namespace

double eval_binary_form(std::span<const double> poly, double x, double y) {
  // sum_j c_j x^{d-j} y^j by Horner in the ratio that keeps |t| <= 1
  const std::size_t d = poly.size() - 1;
  if (std::abs(x) >= std::abs(y)) {
    if (x == 0.0) return 0.0;
    const double t = y / x;
    double acc = 0.0;
    for (std::size_t j = d + 1; j-- > 0;) acc = acc * t + poly[j];
    return acc * std::pow(x, static_cast<double>(d));
  }
  const double t = x / y;
  double acc = 0.0;
  for (std::size_t j = 0; j <= d; ++j) acc = acc * t + poly[j];
  return acc * std::pow(y, static_cast<double>(d));
}

Vector canonical_sign(Vector w) {
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) > 0.0) return w;
    if (w(i) < 0.0) return -w;
  }
  return w;
}

MaximizerSet spectral_norm_binary(const SymTensor& a, double tol) {
  if (a.dim() != 2) {
    throw Error(ErrorKind::invalid_argument,
                "spectral_norm_binary needs dim 2, got " + std::to_string(a.dim()));
  }
  require_nonzero(a);
  const std::vector<double> c = binary_poly(a);
  const std::vector<double> q = tangential(c);
  const int d = a.order();
  if (max_abs(q) <= 1e-12 * d * max_abs(c)) {
    throw Error(ErrorKind::degenerate_input,
                "|p_A| is constant on the circle; maximizers form a continuum");
  }
  const std::vector<double> dq = tangential(q);

  // Roots of q(x, 1) = sum_m q_m x^{d-m} and the direction (1, 0). Clustered
  // roots come back from the companion matrix with large imaginary parts, so
  // every eigenvalue's real part and a coarse angle grid also seed the polish.
  std::vector<double> angles{0.0};
  for (const auto& root : companion_roots(q)) angles.push_back(std::atan2(1.0, root.re));
  for (const double x : real_roots(q).roots) angles.push_back(std::atan2(1.0, x));
  const int grid = kGridPerDegree * (d + 1);
  for (int k = 1; k < grid; ++k) angles.push_back(std::numbers::pi * k / grid);

  std::vector<Candidate> candidates;
  double best = 0.0;
  for (double phi : angles) {
    phi = polish_angle(q, dq, phi);
    Vector w(2);
    w << std::cos(phi), std::sin(phi);
    const double value = std::abs(eval_binary_form(c, w(0), w(1)));
    best = std::max(best, value);
    candidates.push_back({std::move(w), value});
  }
  MaximizerSet out;
  out.value = best;
  out.points = global_classes(candidates, best, tol);
  out.is_exact = true;
  out.converged = true;
  return out;
}

int count_global_maximizers(const SymTensor& a, double tol) {
  return static_cast<int>(spectral_norm_binary(a, tol).points.size());
}

double power_shift(const SymTensor& a) {
  const int d = a.order();
  return d * (d - 1) * frob_norm(a);
}

PowerRun power_iterate(const SymTensor& a, const Vector& start, double shift, int max_iters,
                       double tol, bool record_history) {
  PowerRun run;
  run.w = start / start.norm();
  const double sign = poly_eval(a, run.w) < 0.0 ? -1.0 : 1.0;
  if (record_history) run.history.push_back(std::abs(poly_eval(a, run.w)));
  for (int k = 0; k < max_iters; ++k) {
    Vector next = sign * poly_grad(a, run.w) + shift * run.w;
    const double norm = next.norm();
    if (norm == 0.0) break;
    next /= norm;
    const double step = (next - run.w).norm();
    run.w = std::move(next);
    run.iterations = k + 1;
    if (record_history) run.history.push_back(std::abs(poly_eval(a, run.w)));
    if (step < tol) {
      run.converged = true;
      break;
    }
  }
  run.value = std::abs(poly_eval(a, run.w));
  return run;
}

MaximizerSet spectral_norm_power(const SymTensor& a, const IterConfig& cfg) {
  require_nonzero(a);
  const int n = a.dim();
  const double shift = power_shift(a);
  const std::size_t random_starts = static_cast<std::size_t>(std::max(cfg.starts, 0));
  const std::size_t total = random_starts + static_cast<std::size_t>(n);
  std::vector<PowerRun> runs(total);
  for_each_index(total, cfg.exec, [&](std::size_t i) {
    Vector start;
    if (i < random_starts) {
      auto rng = stream_rng(cfg.seed, i);
      start = random_unit_vector(rng, n);
    } else {
      start = Vector::Unit(n, static_cast<Eigen::Index>(i - random_starts));
    }
    runs[i] = power_iterate(a, start, shift, cfg.max_iters, cfg.tol);
  });

  std::size_t best_index = 0;
  for (std::size_t i = 1; i < total; ++i) {
    if (runs[i].value > runs[best_index].value) best_index = i;
  }
  std::vector<Candidate> candidates;
  candidates.reserve(total);
  for (const auto& r : runs) candidates.push_back({r.w, r.value});

  MaximizerSet out;
  out.value = runs[best_index].value;
  out.points = global_classes(candidates, out.value, 1e-8);
  out.is_exact = false;
  out.converged = runs[best_index].converged;
  return out;
}

MaximizerSet spectral_maximizers(const SymTensor& a, SolverMethod method, const IterConfig& cfg) {
  switch (method) {
    case SolverMethod::exact_binary: return spectral_norm_binary(a);
    case SolverMethod::power: return spectral_norm_power(a, cfg);
    case SolverMethod::automatic: break;
  }
  return a.dim() == 2 ? spectral_norm_binary(a) : spectral_norm_power(a, cfg);
}

double spectral_norm(const SymTensor& a, SolverMethod method, const IterConfig& cfg) {
  return spectral_maximizers(a, method, cfg).value;
}

RankOneApprox best_rank_one(const SymTensor& a, SolverMethod method, const IterConfig& cfg) {
  const MaximizerSet set = spectral_maximizers(a, method, cfg);
  RankOneApprox out;
  out.w = set.points.front();
  out.lambda = poly_eval(a, out.w);
  return out;
}

double ratio(const SymTensor& a, SolverMethod method, const IterConfig& cfg) {
  require_nonzero(a);
  return spectral_norm(a, method, cfg) / frob_norm(a);
}

double relative_distance_from_ratio(double r) { return std::sqrt(std::max(0.0, 1.0 - r * r)); }

double relative_distance(const SymTensor& a, SolverMethod method, const IterConfig& cfg) {
  return relative_distance_from_ratio(ratio(a, method, cfg));
}

double circle_grid_max(const SymTensor& a, std::size_t points, Execution exec) {
  if (a.dim() != 2) throw Error(ErrorKind::invalid_argument, "circle_grid_max needs dim 2");
  const std::vector<double> c = binary_poly(a);
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (points + kBlock - 1) / kBlock;
  std::vector<double> block_max(blocks, 0.0);
  for_each_index(blocks, exec, [&](std::size_t b) {
    double m = 0.0;
    const std::size_t end = std::min(points, (b + 1) * kBlock);
    for (std::size_t k = b * kBlock; k < end; ++k) {
      const double phi = std::numbers::pi * static_cast<double>(k) / static_cast<double>(points);
      m = std::max(m, std::abs(eval_binary_form(c, std::cos(phi), std::sin(phi))));
    }
    block_max[b] = m;
  });
  return blocks == 0 ? 0.0 : *std::max_element(block_max.begin(), block_max.end());
}

}  // namespace symratio
