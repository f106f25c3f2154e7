#include "symratio/symtensor.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>

#include "symratio/error.hpp"

namespace symratio {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return std::round(result);
}

double multinomial(std::span<const int> exponents) {
  double result = 1.0;
  int total = 0;
  for (int e : exponents) {
    total += e;
    result *= binomial(total, e);
  }
  return result;
}

int MultiIndex::degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0);
}

namespace {

void enumerate(int dim, int remaining, int slot, std::vector<int>& current,
               std::vector<int>& out) {
  if (slot == dim - 1) {
    current[slot] = remaining;
    out.insert(out.end(), current.begin(), current.end());
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[slot] = e;
    enumerate(dim, remaining - e, slot + 1, current, out);
  }
}

void check_order(int order) {
  if (order < 1) {
    throw Error(ErrorKind::invalid_argument,
                "tensor order must be positive, got " + std::to_string(order));
  }
}

void check_dim(int dim) {
  if (dim < 1) {
    throw Error(ErrorKind::invalid_argument,
                "tensor dimension must be positive, got " + std::to_string(dim));
  }
}

void check_same_shape(const SymTensor& a, const SymTensor& b) {
  if (a.dim() != b.dim() || a.order() != b.order()) {
    throw Error(ErrorKind::dimension_mismatch, "symmetric tensors differ in shape");
  }
}

void check_vector(const SymTensor& a, const Vector& u) {
  if (u.size() != a.dim()) {
    throw Error(ErrorKind::dimension_mismatch,
                "vector of length " + std::to_string(u.size()) +
                    " against tensor of dimension " + std::to_string(a.dim()));
  }
}

// powers(i, k) = u_i^k for k = 0..d
Matrix power_table(const Vector& u, int d) {
  Matrix powers(u.size(), d + 1);
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    powers(i, 0) = 1.0;
    for (int k = 1; k <= d; ++k) powers(i, k) = powers(i, k - 1) * u(i);
  }
  return powers;
}

}  // namespace

MonomialBasis::MonomialBasis(int dim, int order) : dim_(dim), order_(order) {
  check_dim(dim);
  if (order < 0) {
    throw Error(ErrorKind::invalid_argument, "negative monomial degree");
  }
  std::vector<int> current(static_cast<std::size_t>(dim));
  enumerate(dim, order, 0, current, exponents_);
  const std::size_t count = exponents_.size() / static_cast<std::size_t>(dim);
  weights_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) weights_.push_back(multinomial(exponents(i)));
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(int dim, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{dim, order}];
  if (!slot) slot = std::make_shared<const MonomialBasis>(dim, order);
  return slot;
}

std::size_t MonomialBasis::index_of(std::span<const int> exponents) const {
  if (static_cast<int>(exponents.size()) != dim_) {
    throw Error(ErrorKind::dimension_mismatch, "exponent vector has wrong length");
  }
  int remaining = order_;
  double rank = 0.0;
  for (int i = 0; i < dim_; ++i) {
    const int e = exponents[static_cast<std::size_t>(i)];
    if (e < 0 || e > remaining) {
      throw Error(ErrorKind::invalid_argument, "exponents do not sum to the tensor order");
    }
    const int parts_left = dim_ - i - 1;
    if (parts_left > 0 && remaining > e) {
      // compositions sharing the prefix whose slot i exceeds e (hockey stick)
      rank += binomial(remaining - e - 1 + parts_left, parts_left);
    }
    remaining -= e;
  }
  if (remaining != 0) {
    throw Error(ErrorKind::invalid_argument, "exponents do not sum to the tensor order");
  }
  return static_cast<std::size_t>(rank);
}

SymTensor::SymTensor(int dim, int order)
    : basis_((check_order(order), MonomialBasis::get(dim, order))),
      coeffs_(basis_->size(), 0.0) {}

SymTensor::SymTensor(int dim, int order, std::vector<double> coeffs)
    : basis_((check_order(order), MonomialBasis::get(dim, order))),
      coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != basis_->size()) {
    throw Error(ErrorKind::dimension_mismatch,
                "expected " + std::to_string(basis_->size()) + " coefficients, got " +
                    std::to_string(coeffs_.size()));
  }
}

bool SymTensor::is_zero() const {
  for (double c : coeffs_) {
    if (c != 0.0) return false;
  }
  return true;
}

SymTensor& SymTensor::operator+=(const SymTensor& other) {
  check_same_shape(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& other) {
  check_same_shape(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SymTensor& SymTensor::operator*=(double scale) {
  for (double& c : coeffs_) c *= scale;
  return *this;
}

SymTensor from_polynomial(int dim, int order, std::span<const double> poly_coeffs) {
  const auto basis = MonomialBasis::get(dim, order);
  if (poly_coeffs.size() != basis->size()) {
    throw Error(ErrorKind::dimension_mismatch, "polynomial coefficient count mismatch");
  }
  std::vector<double> coeffs(basis->size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = poly_coeffs[i] / basis->weight(i);
  return SymTensor(dim, order, std::move(coeffs));
}

SymTensor sym_rank_one(const Vector& u, int d) {
  check_order(d);
  if (u.size() < 1) throw Error(ErrorKind::invalid_argument, "empty vector");
  const int n = static_cast<int>(u.size());
  SymTensor tmp(n, d);
  const Matrix powers = power_table(u, d);
  std::vector<double> coeffs(tmp.size());
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    const auto e = tmp.basis().exponents(m);
    double value = 1.0;
    for (int i = 0; i < n; ++i) value *= powers(i, e[static_cast<std::size_t>(i)]);
    coeffs[m] = value;
  }
  return SymTensor(n, d, std::move(coeffs));
}

SymTensor sym_outer(const Vector& u, int k, const Vector& v, int l) {
  if (k < 0 || l < 0) throw Error(ErrorKind::invalid_argument, "negative power in sym_outer");
  const int d = k + l;
  check_order(d);
  if (u.size() != v.size()) {
    throw Error(ErrorKind::dimension_mismatch, "sym_outer factors differ in length");
  }
  const int n = static_cast<int>(u.size());
  const auto basis = MonomialBasis::get(n, d);
  const auto basis_u = MonomialBasis::get(n, k);
  const Matrix pu = power_table(u, k);
  const Matrix pv = power_table(v, l);

  // poly coeff of <u,x>^k <v,x>^l at x^e is sum over f + g = e of
  // mult(f) u^f mult(g) v^g
  std::vector<double> poly(basis->size(), 0.0);
  std::vector<int> g(static_cast<std::size_t>(n));
  for (std::size_t fi = 0; fi < basis_u->size(); ++fi) {
    const auto f = basis_u->exponents(fi);
    double uf = basis_u->weight(fi);
    for (int i = 0; i < n; ++i) uf *= pu(i, f[static_cast<std::size_t>(i)]);
    if (uf == 0.0) continue;
    for (std::size_t ei = 0; ei < basis->size(); ++ei) {
      const auto e = basis->exponents(ei);
      bool fits = true;
      double vg = 1.0;
      for (int i = 0; i < n; ++i) {
        const auto s = static_cast<std::size_t>(i);
        g[s] = e[s] - f[s];
        if (g[s] < 0) {
          fits = false;
          break;
        }
        vg *= pv(i, g[s]);
      }
      if (!fits) continue;
      poly[ei] += uf * multinomial(g) * vg;
    }
  }
  return from_polynomial(n, d, poly);
}

double frob_inner(const SymTensor& a, const SymTensor& b) {
  check_same_shape(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a.basis().weight(i) * a.coeff(i) * b.coeff(i);
  return sum;
}

double frob_norm(const SymTensor& a) { return std::sqrt(frob_inner(a, a)); }

double poly_eval(const SymTensor& a, const Vector& u) {
  check_vector(a, u);
  const int n = a.dim();
  const Matrix powers = power_table(u, a.order());
  double sum = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double c = a.poly_coeff(m);
    if (c == 0.0) continue;
    const auto e = a.basis().exponents(m);
    double term = c;
    for (int i = 0; i < n; ++i) term *= powers(i, e[static_cast<std::size_t>(i)]);
    sum += term;
  }
  return sum;
}

Vector poly_grad(const SymTensor& a, const Vector& u) {
  check_vector(a, u);
  const int n = a.dim();
  const Matrix powers = power_table(u, a.order());
  Vector grad = Vector::Zero(n);
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double c = a.poly_coeff(m);
    if (c == 0.0) continue;
    const auto e = a.basis().exponents(m);
    for (int j = 0; j < n; ++j) {
      const int ej = e[static_cast<std::size_t>(j)];
      if (ej == 0) continue;
      double term = c * ej * powers(j, ej - 1);
      for (int i = 0; i < n; ++i) {
        if (i != j) term *= powers(i, e[static_cast<std::size_t>(i)]);
      }
      grad(j) += term;
    }
  }
  return grad;
}

SymTensor compose_linear(const SymTensor& a, const Matrix& m) {
  if (m.rows() != a.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "change of variables has wrong row count");
  }
  const int n = a.dim();
  const int target = static_cast<int>(m.cols());
  const int d = a.order();

  // linear_powers[i][k] = polynomial coefficients of (sum_j m_ij y_j)^k
  std::vector<std::vector<std::vector<double>>> linear_powers(static_cast<std::size_t>(n));
  std::vector<int> shifted(static_cast<std::size_t>(target));
  for (int i = 0; i < n; ++i) {
    auto& table = linear_powers[static_cast<std::size_t>(i)];
    table.push_back({1.0});
    for (int k = 1; k <= d; ++k) {
      const auto prev_basis = MonomialBasis::get(target, k - 1);
      const auto next_basis = MonomialBasis::get(target, k);
      std::vector<double> next(next_basis->size(), 0.0);
      const auto& prev = table.back();
      for (std::size_t p = 0; p < prev.size(); ++p) {
        if (prev[p] == 0.0) continue;
        const auto e = prev_basis->exponents(p);
        for (int j = 0; j < target; ++j) {
          if (m(i, j) == 0.0) continue;
          std::copy(e.begin(), e.end(), shifted.begin());
          ++shifted[static_cast<std::size_t>(j)];
          next[next_basis->index_of(shifted)] += prev[p] * m(i, j);
        }
      }
      table.push_back(std::move(next));
    }
  }

  const auto out_basis = MonomialBasis::get(target, d);
  std::vector<double> out(out_basis->size(), 0.0);
  std::vector<int> sum_exp(static_cast<std::size_t>(target));
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    const double c = a.poly_coeff(idx);
    if (c == 0.0) continue;
    const auto e = a.basis().exponents(idx);
    // product over i of (row_i . y)^{e_i}
    std::vector<double> acc{c};
    int acc_degree = 0;
    for (int i = 0; i < n; ++i) {
      const int ei = e[static_cast<std::size_t>(i)];
      if (ei == 0) continue;
      const auto& factor = linear_powers[static_cast<std::size_t>(i)][static_cast<std::size_t>(ei)];
      const auto acc_basis = MonomialBasis::get(target, acc_degree);
      const auto factor_basis = MonomialBasis::get(target, ei);
      const auto prod_basis = MonomialBasis::get(target, acc_degree + ei);
      std::vector<double> prod(prod_basis->size(), 0.0);
      for (std::size_t p = 0; p < acc.size(); ++p) {
        if (acc[p] == 0.0) continue;
        const auto ep = acc_basis->exponents(p);
        for (std::size_t q = 0; q < factor.size(); ++q) {
          if (factor[q] == 0.0) continue;
          const auto eq = factor_basis->exponents(q);
          for (int j = 0; j < target; ++j) {
            const auto s = static_cast<std::size_t>(j);
            sum_exp[s] = ep[s] + eq[s];
          }
          prod[prod_basis->index_of(sum_exp)] += acc[p] * factor[q];
        }
      }
      acc = std::move(prod);
      acc_degree += ei;
    }
    for (std::size_t p = 0; p < acc.size(); ++p) out[p] += acc[p];
  }
  return from_polynomial(target, d, out);
}

bool nearly_dependent(const Vector& u, const Vector& v) {
  const double uu = u.squaredNorm();
  const double vv = v.squaredNorm();
  const double uv = u.dot(v);
  return uu * vv - uv * uv <= 1e-14 * uu * vv;
}

PlaneRestriction restrict_to_plane(const SymTensor& a, const Vector& u, const Vector& v) {
  check_vector(a, u);
  check_vector(a, v);
  if (nearly_dependent(u, v)) {
    throw Error(ErrorKind::degenerate_input, "restrict_to_plane: u and v span less than a plane");
  }
  Vector q1 = u / u.norm();
  Vector r = v - v.dot(q1) * q1;
  Vector q2 = r / r.norm();
  Matrix frame(a.dim(), 2);
  frame.col(0) = q1;
  frame.col(1) = q2;
  return PlaneRestriction{compose_linear(a, frame), std::move(q1), std::move(q2)};
}

}  // namespace symratio
