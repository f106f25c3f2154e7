#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace symratio {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Multinomial coefficient d!/(e_1!...e_n!) with d = sum(e).
double multinomial(std::span<const int> exponents);
double binomial(int n, int k);

/// Exponent vector of one monomial x_1^{e_1}...x_n^{e_n}. Each monomial stands
/// for the d!/(e_1!...e_n!) entries a_{i_1...i_d} of a symmetric array whose
/// index multiset has these counts.
struct MultiIndex {
  std::vector<int> exponents;

  int degree() const;
  double weight() const { return multinomial(exponents); }
};

/// All exponent vectors of total degree `order` in `dim` variables, in
/// lexicographically decreasing order. For dim = 2 the monomial x^{d-j} y^j
/// sits at index j.
class MonomialBasis {
 public:
  MonomialBasis(int dim, int order);

  /// Shared, immutable instance (thread-safe cache).
  static std::shared_ptr<const MonomialBasis> get(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  std::size_t size() const { return weights_.size(); }

  std::span<const int> exponents(std::size_t i) const {
    return {exponents_.data() + i * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  double weight(std::size_t i) const { return weights_[i]; }

  /// Position of an exponent vector (combinatorial rank, no lookup table).
  std::size_t index_of(std::span<const int> exponents) const;

 private:
  int dim_;
  int order_;
  std::vector<int> exponents_;
  std::vector<double> weights_;
};

/// Real symmetric tensor of order d on R^n, stored by monomial. Each stored
/// value is a representative entry a_{i_1...i_d}; multinomial weights enter
/// only through inner products and polynomial evaluation.
class SymTensor {
 public:
  SymTensor(int dim, int order);
  SymTensor(int dim, int order, std::vector<double> coeffs);

  int dim() const { return basis_->dim(); }
  int order() const { return basis_->order(); }
  std::size_t size() const { return coeffs_.size(); }
  const MonomialBasis& basis() const { return *basis_; }

  std::span<const double> coeffs() const { return coeffs_; }
  double coeff(std::size_t i) const { return coeffs_[i]; }
  double coeff(std::span<const int> exponents) const {
    return coeffs_[basis_->index_of(exponents)];
  }
  /// Coefficient of x^e in p_A, i.e. weight(e) * a_e.
  double poly_coeff(std::size_t i) const { return basis_->weight(i) * coeffs_[i]; }

  bool is_zero() const;

  SymTensor& operator+=(const SymTensor& other);
  SymTensor& operator-=(const SymTensor& other);
  SymTensor& operator*=(double scale);

  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  friend SymTensor operator*(double s, SymTensor a) { return a *= s; }
  friend SymTensor operator*(SymTensor a, double s) { return a *= s; }

 private:
  std::shared_ptr<const MonomialBasis> basis_;
  std::vector<double> coeffs_;
};

/// Builds the tensor whose polynomial p_A has the given coefficients
/// (indexed by MonomialBasis(dim, order)).
SymTensor from_polynomial(int dim, int order, std::span<const double> poly_coeffs);

/// u^d = u ⊗ ... ⊗ u.
SymTensor sym_rank_one(const Vector& u, int d);

/// u^k v^l: symmetrization of u^{⊗k} ⊗ v^{⊗l}.
SymTensor sym_outer(const Vector& u, int k, const Vector& v, int l);

double frob_inner(const SymTensor& a, const SymTensor& b);
double frob_norm(const SymTensor& a);

/// p_A(u) = <A, u^d>_F.
double poly_eval(const SymTensor& a, const Vector& u);
Vector poly_grad(const SymTensor& a, const Vector& u);

/// Tensor B on R^m with p_B(y) = p_A(M y), M of size n x m.
SymTensor compose_linear(const SymTensor& a, const Matrix& m);

struct PlaneRestriction {
  SymTensor tensor;  // coordinates in the frame (q1, q2)
  Vector q1;
  Vector q2;

  Vector lift(const Vector& planar) const { return planar(0) * q1 + planar(1) * q2; }
};

/// Coordinates of A in the orthonormal frame q1 = u/|u|, q2 = Gram-Schmidt(v)
/// with <v, q2> > 0. Exact when A lies in Sym_d(span{u, v}).
PlaneRestriction restrict_to_plane(const SymTensor& a, const Vector& u, const Vector& v);

/// True when the Gram determinant of (u, v) is at most 1e-14 |u|^2 |v|^2.
bool nearly_dependent(const Vector& u, const Vector& v);

}  // namespace symratio
