#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "symratio/error.hpp"
#include "symratio/ranktwo.hpp"

using namespace symratio;

namespace {

Vector vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

RankTwoParams random_generic(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> uni(0.2, 2.0);
  double a = uni(rng), b = uni(rng);
  if (a < b) std::swap(a, b);
  if (a - b < 0.05) a += 0.1;
  RankTwoParams p{a, b, random_unit_vector(rng, n), random_unit_vector(rng, n)};
  while (std::abs(p.u.dot(p.v)) > 0.99) p.v = random_unit_vector(rng, n);
  if (p.u.dot(p.v) < 0.0) p.v = -p.v;
  return p;
}

double max_coeff_diff(const SymTensor& a, const SymTensor& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.coeff(i) - b.coeff(i)));
  return m;
}

}  // namespace

TEST(RankTwo, BoundValues) {
  EXPECT_NEAR(rank_two_ratio_bound(3), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(rank_two_ratio_bound(4), std::pow(0.75, 1.5), 1e-15);
  EXPECT_NEAR(diff_bound_limit(4), std::pow(0.75, 3), 1e-15);
}

TEST(RankTwo, WdNorms) {
  for (int d = 2; d <= 10; ++d) {
    const SymTensor w = make_w(d);
    EXPECT_NEAR(frob_norm(w), w_frob_norm(d), 1e-12);
    EXPECT_NEAR(frob_norm(w), std::sqrt(static_cast<double>(d)), 1e-12);
  }
  EXPECT_THROW(make_w(1), Error);
}

TEST(RankTwo, PlanarMatchesGenericConstruction) {
  for (int d = 2; d <= 7; ++d) {
    const SymTensor a = make_rank_two_planar(1.3, 0.4, 0.9, d);
    const SymTensor b = make_rank_two(planar_params(1.3, 0.4, 0.9), d);
    EXPECT_LT(max_coeff_diff(a, b), 1e-14);
  }
  EXPECT_NEAR(planar_params(1, 1, 0.7).u.dot(planar_params(1, 1, 0.7).v), std::cos(0.7), 1e-15);
}

TEST(RankTwo, ConstructionErrors) {
  RankTwoParams p{1.0, 0.0, vec2(1, 0), vec2(0, 1)};
  EXPECT_THROW(make_rank_two(p, 3), Error);
  p.beta = 1.0;
  p.v = vec2(2, 0);
  try {
    make_rank_two(p, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::degenerate_input);
  }
}

TEST(RankTwo, CanonicalizePreservesTensorUpToSign) {
  std::mt19937_64 rng(1);
  for (int d = 3; d <= 6; ++d) {
    for (int trial = 0; trial < 20; ++trial) {
      std::normal_distribution<double> normal;
      RankTwoParams p{normal(rng), normal(rng), random_gaussian_vector(rng, 3), random_gaussian_vector(rng, 3)};
      const RankTwoParams c = canonicalize(p, d);
      EXPECT_NEAR(c.u.norm(), 1.0, 1e-14);
      EXPECT_GE(c.u.dot(c.v), 0.0);
      EXPECT_GT(c.alpha, 0.0);
      if (c.beta > 0.0) EXPECT_GE(c.alpha, c.beta);
      const SymTensor a = make_rank_two(p, d), b = make_rank_two(c, d);
      EXPECT_LT(std::min(max_coeff_diff(a, b), max_coeff_diff(a, -1.0 * b)), 1e-10);
      EXPECT_NEAR(ratio_F(p, d), ratio_F(c, d), 1e-12);
    }
  }
}

TEST(RankTwo, ClassifyCase) {
  EXPECT_EQ(classify_case({1.0, -0.5, vec2(1, 0), vec2(0, 1)}), CaseTag::sum);
  EXPECT_EQ(classify_case({1.0, 1.0, vec2(1, 0), vec2(0, 1)}), CaseTag::equal);
  EXPECT_EQ(classify_case({1.0, 0.5, vec2(1, 0), vec2(0, 1)}), CaseTag::generic);
  EXPECT_STREQ(to_string(CaseTag::border), "BORDER");
}

TEST(RankTwo, RatioIsAtLeastBoundOnSamples) {
  std::mt19937_64 rng(3);
  for (int d = 3; d <= 6; ++d) {
    for (int trial = 0; trial < 200; ++trial) {
      const RankTwoParams p = random_generic(rng, 3);
      EXPECT_GT(std::sqrt(ratio_F(p, d)), rank_two_ratio_bound(d));
    }
  }
}

TEST(RankTwo, BorderTensor) {
  const BorderParams p{0.0, 1.0, vec2(1, 0), vec2(0, 1)};
  const SymTensor w = make_border(p, 5);
  const SymTensor expected = make_w(5);
  EXPECT_LT(max_coeff_diff(w, expected), 1e-15);
  EXPECT_THROW(make_border({-1.0, 1.0, vec2(1, 0), vec2(0, 1)}, 3), Error);
  EXPECT_THROW(make_border({1.0, 1.0, vec2(1, 0), vec2(1, 1).normalized()}, 3), Error);
  EXPECT_THROW(make_border({1.0, 1.0, vec2(2, 0), vec2(0, 1)}, 3), Error);
}

// Oracle: central finite differences of ratio_F in every ambient coordinate.
TEST(RankTwo, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 3 + trial % 4;
    const int n = 2 + trial % 2;
    const RankTwoParams p = random_generic(rng, n);
    const RatioGradient g = grad_F(p, d);
    const double h = 1e-6;
    auto fd = [&](auto perturb) {
      RankTwoParams plus = p, minus = p;
      perturb(plus, h);
      perturb(minus, -h);
      return (ratio_F(plus, d) - ratio_F(minus, d)) / (2 * h);
    };
    Eigen::VectorXd ours(2 + 2 * n), numeric(2 + 2 * n);
    ours(0) = g.d_alpha;
    ours(1) = g.d_beta;
    ours.segment(2, n) = g.d_u;
    ours.segment(2 + n, n) = g.d_v;
    numeric(0) = fd([](RankTwoParams& q, double s) { q.alpha += s; });
    numeric(1) = fd([](RankTwoParams& q, double s) { q.beta += s; });
    for (int i = 0; i < n; ++i) {
      numeric(2 + i) = fd([i](RankTwoParams& q, double s) { q.u(i) += s; });
      numeric(2 + n + i) = fd([i](RankTwoParams& q, double s) { q.v(i) += s; });
    }
    EXPECT_LT((ours - numeric).norm(), 1e-6 * numeric.norm()) << "trial " << trial;
    EXPECT_GT(g.riemannian_norm(), 0.0);
    EXPECT_NEAR(g.tangent_u.dot(p.u), 0.0, 1e-12);
  }
}

TEST(RankTwo, GradientUndefinedWithTwoMaximizerClasses) {
  // alpha = beta planar: the reflection y -> -y maps A to -A, so maximizers pair up
  try {
    grad_F(planar_params(1.0, 1.0, 0.8), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_differentiable);
  }
}

TEST(RankTwo, ProjectionMatchesNormalEquations) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + trial % 5;
    const int n = 2 + trial % 3;
    const Vector u = random_unit_vector(rng, n), w = random_unit_vector(rng, n);
    Vector v = random_unit_vector(rng, n);
    while (std::abs(u.dot(v)) > 0.99) v = random_unit_vector(rng, n);
    const PairProjection ours = project_pair(u, v, w, d);
    const SymTensor expected = oracle::projection(u, v, w, d);
    EXPECT_LT(max_coeff_diff(ours.tensor, expected), 1e-10) << "d=" << d << " n=" << n;
    // the residual is orthogonal to the subspace
    const SymTensor residual = sym_rank_one(w, d) - ours.tensor;
    EXPECT_NEAR(frob_inner(residual, sym_outer(u, d - 1, w, 1)), 0.0, 1e-10);
  }
}

TEST(RankTwo, ProjectionResidualOrthogonalForNearlyParallelPair) {
  const Vector u = vec2(1, 0);
  const Vector v = vec2(std::cos(1e-4), std::sin(1e-4));
  const Vector w = vec2(0.3, 0.9).normalized();
  for (int d = 2; d <= 6; ++d) {
    const PairProjection p = project_pair(u, v, w, d);
    const SymTensor residual = sym_rank_one(w, d) - p.tensor;
    for (int i = 0; i < 2; ++i) {
      EXPECT_NEAR(frob_inner(residual, sym_outer(u, d - 1, Vector::Unit(2, i), 1)), 0.0, 1e-12);
      EXPECT_NEAR(frob_inner(residual, sym_outer(v, d - 1, Vector::Unit(2, i), 1)), 0.0, 1e-12);
    }
  }
}

TEST(RankTwo, ProjectionErrors) {
  EXPECT_THROW(project_pair(vec2(1, 0), vec2(1, 0), vec2(0, 1), 3), Error);
  EXPECT_THROW(project_pair(vec2(2, 0), vec2(0, 1), vec2(0, 1), 3), Error);
}

TEST(RankTwo, ClosedFormProjectionAgreesWhenWParallelToU) {
  const Vector u = vec2(1, 0);
  const Vector v = vec2(0.6, 0.8);
  const LemmaCoefficients k = lemma_projection_coefficients(u, v, u, 4);
  EXPECT_NEAR(k.a, 1.0, 1e-14);
  EXPECT_NEAR(k.b, 0.0, 1e-14);
  EXPECT_LT(max_coeff_diff(lemma_projection(u, v, u, 4), project_pair(u, v, u, 4).tensor), 1e-12);
}

TEST(RankTwo, ClosedFormProjectionIsNotTheProjectionInGeneral) {
  // u = e1, v = e2 in R^2, d = 3: the subspace is all of Sym_3(R^2)
  const Vector u = vec2(1, 0), v = vec2(0, 1), w = vec2(0.6, 0.8);
  const SymTensor exact = project_pair(u, v, w, 3).tensor;
  EXPECT_LT(max_coeff_diff(exact, sym_rank_one(w, 3)), 1e-13);
  EXPECT_GT(frob_norm(lemma_projection(u, v, w, 3) - exact), 0.1);
}

TEST(RankTwo, CriticalEquationRootCountByParity) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> pos(0.05, 3.0), nonneg(0.0, 3.0);
  for (int d = 2; d <= 8; ++d) {
    for (int trial = 0; trial < 100; ++trial) {
      const double a = pos(rng), b = nonneg(rng), gamma = pos(rng);
      const RootSet r = critical_eq_roots(a, b, gamma, d);
      EXPECT_EQ(r.roots.size(), static_cast<std::size_t>(2 + d % 2)) << a << " " << b << " " << gamma;
      for (double x : r.roots) {
        EXPECT_NEAR(gamma * (x - a) * std::pow(x + b, d - 1), x, 1e-8 * (1 + std::abs(x)));
      }
    }
  }
  EXPECT_THROW(critical_eq_roots(0.0, 1.0, 1.0, 3), Error);
  EXPECT_THROW(critical_eq_roots(1.0, -1.0, 1.0, 3), Error);
}

TEST(RankTwo, MaximizerLiesOnTheLargerSide) {
  std::mt19937_64 rng(11);
  for (int d = 3; d <= 7; ++d) {
    for (int trial = 0; trial < 50; ++trial) EXPECT_TRUE(maximizer_side_check(random_generic(rng, 3), d));
  }
  EXPECT_THROW(maximizer_side_check({0.5, 1.0, vec2(1, 0), vec2(0, 1)}, 3), Error);
}

TEST(RankTwo, EqualFamilyBounds) {
  for (int d = 3; d <= 8; ++d) {
    const double limit = diff_bound_limit(d);
    const BoundValue at0 = diff_bound(d, 0.0);
    EXPECT_TRUE(at0.is_limit);
    EXPECT_EQ(at0.value, limit);
    EXPECT_NEAR(diff_bound(d, 1e-4).value, limit, 1e-6);
    double prev = limit;
    for (double t = 1e-3; t < 1.0 / std::sqrt(d - 1.0); t += 1e-3) {
      const double cur = diff_bound(d, t).value;
      EXPECT_GT(cur, prev);
      prev = cur;
      EXPECT_GE(equal_family_ratio_sq(d, t), cur - 1e-12);
    }
  }
  EXPECT_THROW(diff_bound(3, -0.1), Error);
}

TEST(RankTwo, EqualFamilyMatchesDirectConstruction) {
  const double t = 0.3;
  const int d = 5;
  RankTwoParams p{1.0, 1.0, vec2(1, t), vec2(1, -t)};
  EXPECT_NEAR(equal_family_ratio_sq(d, t), ratio_F(p, d), 1e-12);
  const SymTensor diff = sym_rank_one(p.u, d) - sym_rank_one(p.v, d);
  EXPECT_NEAR(frob_inner(diff, diff), g_of_t(d, t), 1e-12);
  Vector z = vec2(std::sqrt((d - 1.0) / d), 1.0 / std::sqrt(static_cast<double>(d)));
  EXPECT_NEAR(poly_eval(diff, z), h_of_t(d, t), 1e-12);
}

TEST(RankTwo, BorderScanMinimumAtAxisFreeEnd) {
  for (int d = 3; d <= 6; ++d) {
    const auto rows = border_ratio_scan(d, 101);
    EXPECT_NEAR(rows.front().ratio, rank_two_ratio_bound(d), 1e-12);
    EXPECT_NEAR(rows.back().ratio, 1.0, 1e-12);
    for (const auto& r : rows) {
      EXPECT_GE(r.ratio, rows.front().ratio);
      EXPECT_LE(r.lb_interior, r.ratio + 1e-12);
      EXPECT_LE(r.lb_axis, r.ratio + 1e-12);
    }
  }
}

TEST(RankTwo, MinRatioSearchStaysAboveBound) {
  SearchConfig cfg;
  cfg.starts = 8;
  cfg.budget = 2000;
  for (int d = 3; d <= 4; ++d) {
    const MinRatioResult r = min_ratio_search(d, cfg);
    EXPECT_GT(r.best_ratio, rank_two_ratio_bound(d));
    EXPECT_LT(r.best_ratio, rank_two_ratio_bound(d) + 0.02);
    EXPECT_FALSE(r.no_decrease);
    EXPECT_FALSE(r.trace.empty());
    EXPECT_LE(r.evaluations, cfg.budget);
  }
}

TEST(RankTwo, MinRatioSearchSerialParallelIdentical) {
  SearchConfig s;
  s.starts = 6;
  s.budget = 600;
  s.exec = Execution::serial;
  SearchConfig p = s;
  p.exec = Execution::parallel;
  const MinRatioResult a = min_ratio_search(3, s), b = min_ratio_search(3, p);
  EXPECT_EQ(a.best_F, b.best_F);
  EXPECT_EQ(a.theta, b.theta);
  EXPECT_EQ(a.trace.size(), b.trace.size());
}

TEST(RankTwo, MinRatioSearchConfigErrors) {
  SearchConfig cfg;
  cfg.starts = 10;
  cfg.budget = 5;
  EXPECT_THROW(min_ratio_search(3, cfg), Error);
  EXPECT_THROW(min_ratio_search(2), Error);
}
