#include "symratio/cube222.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "symratio/error.hpp"

namespace symratio {

namespace {

std::size_t product(const std::vector<int>& dims) {
  std::size_t n = 1;
  for (int d : dims) {
    if (d < 1) throw Error(ErrorKind::invalid_argument, "tensor dims must be >= 1");
    n *= static_cast<std::size_t>(d);
  }
  return n;
}

void require_order(const DenseTensor& t, const std::vector<Vector>& factors) {
  if (static_cast<int>(factors.size()) != t.order()) {
    throw Error(ErrorKind::dimension_mismatch, "number of factors differs from tensor order");
  }
  for (int k = 0; k < t.order(); ++k) {
    if (factors[static_cast<std::size_t>(k)].size() != t.dims()[static_cast<std::size_t>(k)]) {
      throw Error(ErrorKind::dimension_mismatch, "factor length differs from tensor dim");
    }
  }
}

// Visits every multi-index in row-major order.
template <class Fn>
void for_each_entry(const std::vector<int>& dims, Fn&& fn) {
  std::vector<int> idx(dims.size(), 0);
  const std::size_t total = product(dims);
  for (std::size_t flat = 0; flat < total; ++flat) {
    fn(flat, idx);
    for (std::size_t k = dims.size(); k-- > 0;) {
      if (++idx[k] < dims[k]) break;
      idx[k] = 0;
    }
  }
}

}  // namespace

DenseTensor::DenseTensor(std::vector<int> dims)
    : dims_(std::move(dims)), entries_(product(dims_), 0.0) {
  if (dims_.empty()) throw Error(ErrorKind::invalid_argument, "tensor needs at least one mode");
}

DenseTensor::DenseTensor(std::vector<int> dims, std::vector<double> entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
  if (dims_.empty()) throw Error(ErrorKind::invalid_argument, "tensor needs at least one mode");
  if (entries_.size() != product(dims_)) {
    throw Error(ErrorKind::dimension_mismatch,
                "expected " + std::to_string(product(dims_)) + " entries, got " +
                    std::to_string(entries_.size()));
  }
  for (double x : entries_) {
    if (!std::isfinite(x)) throw Error(ErrorKind::invalid_argument, "non-finite tensor entry");
  }
}

std::size_t DenseTensor::offset(std::span<const int> index) const {
  if (index.size() != dims_.size()) throw Error(ErrorKind::dimension_mismatch, "index arity");
  std::size_t off = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (index[k] < 0 || index[k] >= dims_[k]) {
      throw Error(ErrorKind::invalid_argument, "index out of range");
    }
    off = off * static_cast<std::size_t>(dims_[k]) + static_cast<std::size_t>(index[k]);
  }
  return off;
}

double& DenseTensor::at(std::span<const int> index) { return entries_[offset(index)]; }
double DenseTensor::at(std::span<const int> index) const { return entries_[offset(index)]; }

double& DenseTensor::operator()(int i, int j, int k) {
  const std::array<int, 3> idx{i, j, k};
  return at(idx);
}

double DenseTensor::operator()(int i, int j, int k) const {
  const std::array<int, 3> idx{i, j, k};
  return at(idx);
}

bool DenseTensor::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](double x) { return x == 0.0; });
}

double frob_norm(const DenseTensor& t) {
  double s = 0.0;
  for (double x : t.entries()) s += x * x;
  return std::sqrt(s);
}

double multilinear_form(const DenseTensor& t, const std::vector<Vector>& factors) {
  require_order(t, factors);
  double total = 0.0;
  for_each_entry(t.dims(), [&](std::size_t flat, const std::vector<int>& idx) {
    double term = t.entries()[flat];
    for (std::size_t k = 0; k < idx.size() && term != 0.0; ++k) term *= factors[k](idx[k]);
    total += term;
  });
  return total;
}

Vector contract_except(const DenseTensor& t, const std::vector<Vector>& factors, int mode) {
  require_order(t, factors);
  Vector out = Vector::Zero(t.dims()[static_cast<std::size_t>(mode)]);
  for_each_entry(t.dims(), [&](std::size_t flat, const std::vector<int>& idx) {
    double term = t.entries()[flat];
    for (std::size_t k = 0; k < idx.size() && term != 0.0; ++k) {
      if (static_cast<int>(k) != mode) term *= factors[k](idx[k]);
    }
    out(idx[static_cast<std::size_t>(mode)]) += term;
  });
  return out;
}

DenseTensor outer(const std::vector<Vector>& factors) {
  std::vector<int> dims;
  for (const auto& f : factors) dims.push_back(static_cast<int>(f.size()));
  DenseTensor t(dims);
  for_each_entry(dims, [&](std::size_t flat, const std::vector<int>& idx) {
    double v = 1.0;
    for (std::size_t k = 0; k < idx.size(); ++k) v *= factors[k](idx[k]);
    t.entries()[flat] = v;
  });
  return t;
}

IterConfig als_defaults() {
  IterConfig cfg;
  cfg.starts = 32;
  cfg.max_iters = 10000;
  cfg.tol = 1e-14;
  return cfg;
}

SpectralResult3 als_run(const DenseTensor& t, std::vector<Vector> start, int max_sweeps,
                        double tol, std::vector<double>* history) {
  require_order(t, start);
  for (auto& f : start) f.normalize();
  SpectralResult3 run;
  run.factors = std::move(start);
  double value = multilinear_form(t, run.factors);
  if (history) history->push_back(value);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double before = value;
    for (int k = 0; k < t.order(); ++k) {
      Vector g = contract_except(t, run.factors, k);
      const double norm = g.norm();
      // a zero contraction leaves the factor alone: the objective is 0 either way
      if (norm > 0.0) {
        run.factors[static_cast<std::size_t>(k)] = g / norm;
        value = norm;
      }
      if (history) history->push_back(value);
    }
    run.sweeps = sweep + 1;
    if (std::abs(value - before) < tol) {
      run.converged = true;
      break;
    }
  }
  run.value = multilinear_form(t, run.factors);
  return run;
}

SpectralResult3 spectral_norm_3(const DenseTensor& t, const IterConfig& cfg) {
  if (t.is_zero()) throw Error(ErrorKind::zero_tensor, "tensor is zero");
  const std::size_t random_starts = static_cast<std::size_t>(std::max(cfg.starts, 0));
  const std::size_t total = random_starts + 1;
  std::vector<SpectralResult3> runs(total);
  for_each_index(total, cfg.exec, [&](std::size_t i) {
    std::vector<Vector> start;
    auto rng = stream_rng(cfg.seed, i);
    for (int d : t.dims()) {
      start.push_back(i < random_starts ? random_unit_vector(rng, d) : Vector::Unit(d, 0));
    }
    runs[i] = als_run(t, std::move(start), cfg.max_iters, cfg.tol);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < total; ++i) {
    if (runs[i].value > runs[best].value) best = i;
  }
  return runs[best];
}

double ratio_3(const DenseTensor& t, const IterConfig& cfg) {
  return spectral_norm_3(t, cfg).value / frob_norm(t);
}

double hyperdet(const Tensor3& t) {
  if (t.dims() != std::vector<int>{2, 2, 2}) {
    throw Error(ErrorKind::dimension_mismatch, "hyperdet needs a 2x2x2 tensor");
  }
  const double a000 = t(0, 0, 0), a001 = t(0, 0, 1), a010 = t(0, 1, 0), a011 = t(0, 1, 1);
  const double a100 = t(1, 0, 0), a101 = t(1, 0, 1), a110 = t(1, 1, 0), a111 = t(1, 1, 1);
  return a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 +
         a100 * a100 * a011 * a011 -
         2.0 * (a000 * a001 * a110 * a111 + a000 * a010 * a101 * a111 +
                a000 * a100 * a011 * a111 + a001 * a010 * a101 * a110 +
                a001 * a100 * a011 * a110 + a010 * a100 * a011 * a101) +
         4.0 * (a000 * a011 * a101 * a110 + a001 * a010 * a100 * a111);
}

bool is_feasible(const NormalForm222& nf, double slack) {
  return std::abs(nf.a) <= 1.0 + slack && std::abs(nf.b) <= 1.0 + slack &&
         std::abs(nf.c) <= 1.0 + slack && nf.constraint() <= 1.0 + slack;
}

Tensor3 embed_normal_form(const NormalForm222& nf) {
  if (!is_feasible(nf)) {
    throw Error(ErrorKind::invalid_argument, "normal form violates a^2+b^2+c^2+d^2+2abc <= 1");
  }
  Tensor3 t({2, 2, 2});
  t(0, 0, 0) = 1.0;
  t(1, 1, 0) = nf.b;
  t(0, 1, 1) = nf.a;
  t(1, 0, 1) = nf.c;
  t(1, 1, 1) = nf.d;
  return t;
}

namespace {

using Point4 = std::array<double, 4>;

NormalForm222 to_nf(const Point4& p) { return {p[0], p[1], p[2], p[3]}; }

// Negated objective with an extreme barrier outside the region.
double scan_cost(const Point4& p, double margin) {
  const NormalForm222 nf = to_nf(p);
  if (!is_feasible(nf, 0.0) || nf.rank_indicator() < margin) {
    return std::numeric_limits<double>::infinity();
  }
  return -nf.objective();
}

Point4 nelder_mead(Point4 x0, double margin, double step, int max_iters) {
  std::array<Point4, 5> s;
  std::array<double, 5> f;
  s[0] = x0;
  for (int i = 0; i < 4; ++i) {
    s[static_cast<std::size_t>(i + 1)] = x0;
    s[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] += step;
  }
  for (std::size_t i = 0; i < 5; ++i) f[i] = scan_cost(s[i], margin);
  auto blend = [](const Point4& a, const Point4& b, double t) {
    Point4 r;
    for (std::size_t k = 0; k < 4; ++k) r[k] = a[k] + t * (b[k] - a[k]);
    return r;
  };
  for (int iter = 0; iter < max_iters; ++iter) {
    std::array<std::size_t, 5> order;
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return f[i] < f[j]; });
    std::array<Point4, 5> ss;
    std::array<double, 5> ff;
    for (std::size_t i = 0; i < 5; ++i) {
      ss[i] = s[order[i]];
      ff[i] = f[order[i]];
    }
    s = ss;
    f = ff;
    double size = 0.0;
    for (std::size_t i = 1; i < 5; ++i) {
      for (std::size_t k = 0; k < 4; ++k) size = std::max(size, std::abs(s[i][k] - s[0][k]));
    }
    if (size < 1e-13) break;

    Point4 centroid{0, 0, 0, 0};
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t k = 0; k < 4; ++k) centroid[k] += s[i][k] / 4.0;
    }
    const Point4 reflected = blend(centroid, s[4], -1.0);
    const double fr = scan_cost(reflected, margin);
    if (fr < f[0]) {
      const Point4 expanded = blend(centroid, s[4], -2.0);
      const double fe = scan_cost(expanded, margin);
      if (fe < fr) {
        s[4] = expanded;
        f[4] = fe;
      } else {
        s[4] = reflected;
        f[4] = fr;
      }
      continue;
    }
    if (fr < f[3]) {
      s[4] = reflected;
      f[4] = fr;
      continue;
    }
    const Point4 contracted = fr < f[4] ? blend(centroid, reflected, 0.5) : blend(centroid, s[4], 0.5);
    const double fc = scan_cost(contracted, margin);
    if (fc < std::min(fr, f[4])) {
      s[4] = contracted;
      f[4] = fc;
      continue;
    }
    for (std::size_t i = 1; i < 5; ++i) {
      s[i] = blend(s[0], s[i], 0.5);
      f[i] = scan_cost(s[i], margin);
    }
  }
  const auto best = std::min_element(f.begin(), f.end()) - f.begin();
  return s[static_cast<std::size_t>(best)];
}

// Newton on the KKT system with the constraints that are nearly active at p
// treated as equalities. Nelder-Mead with a barrier stalls where two
// constraints meet, which is where the maximum sits. Returns p unchanged when
// the refinement fails to land on a feasible, better point.
Point4 kkt_refine(const Point4& p, double margin) {
  using Eigen::Matrix4d;
  using Eigen::Vector4d;
  const NormalForm222 start = to_nf(p);
  std::vector<int> active;
  if (1.0 - start.constraint() <= 1e-2) active.push_back(0);
  if (start.rank_indicator() - margin <= 1e-2) active.push_back(1);
  if (active.empty()) return p;

  auto grad = [](int which, const Vector4d& x) {
    const double a = x(0), b = x(1), c = x(2), d = x(3);
    return which == 0 ? Vector4d(2 * a + 2 * b * c, 2 * b + 2 * a * c, 2 * c + 2 * a * b, 2 * d)
                      : Vector4d(-4 * b * c, -4 * a * c, -4 * a * b, -2 * d);
  };
  auto hess = [](int which, const Vector4d& x) {
    const double a = x(0), b = x(1), c = x(2);
    Matrix4d h;
    if (which == 0) {
      h << 2, 2 * c, 2 * b, 0, 2 * c, 2, 2 * a, 0, 2 * b, 2 * a, 2, 0, 0, 0, 0, 2;
    } else {
      h << 0, -4 * c, -4 * b, 0, -4 * c, 0, -4 * a, 0, -4 * b, -4 * a, 0, 0, 0, 0, 0, -2;
    }
    return h;
  };
  auto value = [&](int which, const Vector4d& x) {
    const NormalForm222 nf{x(0), x(1), x(2), x(3)};
    return which == 0 ? nf.constraint() - 1.0 : margin - nf.rank_indicator();
  };

  const auto k = static_cast<Eigen::Index>(active.size());
  Vector4d x(p[0], p[1], p[2], p[3]);
  Matrix g(k, 4);
  for (Eigen::Index i = 0; i < k; ++i) g.row(i) = grad(active[static_cast<std::size_t>(i)], x);
  // grad f = G^T lambda
  Vector lambda = g.transpose().completeOrthogonalDecomposition().solve(Vector(2.0 * x));
  for (int iter = 0; iter < 50; ++iter) {
    Matrix jac = Matrix::Zero(4 + k, 4 + k);
    Vector rhs(4 + k);
    Matrix4d hl = 2.0 * Matrix4d::Identity();
    Vector4d r = 2.0 * x;
    for (Eigen::Index i = 0; i < k; ++i) {
      const int which = active[static_cast<std::size_t>(i)];
      const Vector4d gi = grad(which, x);
      hl -= lambda(i) * hess(which, x);
      r -= lambda(i) * gi;
      jac.block(0, 4 + i, 4, 1) = -gi;
      jac.block(4 + i, 0, 1, 4) = gi.transpose();
      rhs(4 + i) = -value(which, x);
    }
    jac.topLeftCorner(4, 4) = hl;
    rhs.head(4) = -r;
    const Vector step = jac.colPivHouseholderQr().solve(rhs);
    if (!step.allFinite()) return p;
    x += step.head(4);
    lambda += step.tail(k);
    if (step.norm() < 1e-15) break;
  }
  const NormalForm222 nf{x(0), x(1), x(2), x(3)};
  const bool ok = (x - Vector4d(p[0], p[1], p[2], p[3])).norm() <= 0.05 && (lambda.array() >= 0.0).all() &&
                  is_feasible(nf, 1e-12) && nf.rank_indicator() >= margin - 1e-12 &&
                  nf.objective() >= start.objective();
  return ok ? Point4{x(0), x(1), x(2), x(3)} : p;
}

struct Scored {
  double objective;
  std::size_t id;
  Point4 p;
};

bool better(const Scored& x, const Scored& y) {
  return x.objective != y.objective ? x.objective > y.objective : x.id < y.id;
}

}  // namespace

FeasibleScanResult feasible_max_scan(const FeasibleScanConfig& cfg) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (cfg.samples + kBlock - 1) / kBlock;
  const std::size_t keep = std::max<std::size_t>(cfg.polish, 1);
  std::vector<std::vector<Scored>> tops(blocks);
  std::vector<std::size_t> accepted(blocks, 0);
  for_each_index(blocks, cfg.exec, [&](std::size_t b) {
    auto rng = stream_rng(cfg.seed, b);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    std::vector<Scored>& top = tops[b];
    const std::size_t end = std::min(cfg.samples, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      Point4 p;
      for (auto& x : p) x = box(rng);
      const NormalForm222 nf = to_nf(p);
      if (!is_feasible(nf, 0.0) || nf.rank_indicator() < cfg.margin) continue;
      ++accepted[b];
      top.push_back({nf.objective(), i, p});
      if (top.size() > 2 * keep) {
        std::nth_element(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(keep), top.end(), better);
        top.resize(keep);
      }
    }
  });

  FeasibleScanResult out;
  std::vector<Scored> pool;
  for (std::size_t b = 0; b < blocks; ++b) {
    out.accepted += accepted[b];
    pool.insert(pool.end(), tops[b].begin(), tops[b].end());
  }
  std::sort(pool.begin(), pool.end(), better);
  if (pool.size() > keep) pool.resize(keep);
  if (pool.empty()) return out;

  std::vector<Scored> polished(pool.size());
  for_each_index(pool.size(), cfg.exec, [&](std::size_t i) {
    Point4 p = pool[i].p;
    double step = 0.05;
    for (int round = 0; round < 6; ++round) {
      p = nelder_mead(p, cfg.margin, step, 4000);
      step *= 0.2;
    }
    p = kkt_refine(p, cfg.margin);
    polished[i] = {to_nf(p).objective(), pool[i].id, p};
  });
  const Scored best = *std::min_element(polished.begin(), polished.end(), better);
  out.max_objective = best.objective;
  out.argmax = to_nf(best.p);
  out.boundary = std::abs(out.argmax.rank_indicator() - cfg.margin) <= 1e-4;
  return out;
}

Tensor3 make_rank_two_3(const Vector& u1, const Vector& u2, const Vector& u3, const Vector& v1,
                        const Vector& v2, const Vector& v3) {
  if (u1.size() != v1.size() || u2.size() != v2.size() || u3.size() != v3.size()) {
    throw Error(ErrorKind::dimension_mismatch, "u and v factors differ in length");
  }
  DenseTensor t = outer({u1, u2, u3});
  const DenseTensor s = outer({v1, v2, v3});
  for (std::size_t i = 0; i < t.size(); ++i) t.entries()[i] += s.entries()[i];
  return t;
}

DenseTensor random_rank_two(std::mt19937_64& rng, int order, int n) {
  if (order < 1 || n < 1) throw Error(ErrorKind::invalid_argument, "order and n must be >= 1");
  std::vector<Vector> u, v;
  for (int k = 0; k < order; ++k) u.push_back(random_gaussian_vector(rng, n));
  for (int k = 0; k < order; ++k) v.push_back(random_gaussian_vector(rng, n));
  DenseTensor t = outer(u);
  const DenseTensor s = outer(v);
  for (std::size_t i = 0; i < t.size(); ++i) t.entries()[i] += s.entries()[i];
  return t;
}

DenseTensor to_dense(const SymTensor& a) {
  DenseTensor t(std::vector<int>(static_cast<std::size_t>(a.order()), a.dim()));
  std::vector<int> exps(static_cast<std::size_t>(a.dim()));
  for_each_entry(t.dims(), [&](std::size_t flat, const std::vector<int>& idx) {
    std::fill(exps.begin(), exps.end(), 0);
    for (int i : idx) ++exps[static_cast<std::size_t>(i)];
    t.entries()[flat] = a.coeff(exps);
  });
  return t;
}

Tensor3 make_w3() {
  Tensor3 t({2, 2, 2});
  t(0, 0, 1) = 1.0;
  t(0, 1, 0) = 1.0;
  t(1, 0, 0) = 1.0;
  return t;
}

}  // namespace symratio
