#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "truncshift/kms.hpp"

using namespace truncshift;
using namespace truncshift::kms;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> alpha_grid(double step, double last) {
  std::vector<double> out;
  for (int i = 0; i * step <= last + 1e-12; ++i) out.push_back(i * step);
  return out;
}

}  // namespace

TEST(KmsParams, RejectsInvalid) {
  EXPECT_THROW(KmsParams(0, 0.5), Error);
  EXPECT_THROW(KmsParams(3, 1.0), Error);
  EXPECT_THROW(KmsParams(3, -0.1), Error);
}

TEST(KmsMatrix, Entries) {
  EXPECT_EQ(kms_matrix({3, 0.0}), ComplexMatrix::identity(3));
  EXPECT_EQ(kms_matrix({2, 0.5}), ComplexMatrix(2, {1.0, 0.5, 0.5, 1.0}));
  const auto k3 = kms_matrix({3, 0.5});
  EXPECT_EQ(k3(0, 0), cplx(1.0));
  EXPECT_EQ(k3(0, 1), cplx(0.5));
  EXPECT_EQ(k3(0, 2), cplx(0.25));
}

TEST(JMatrix, EntriesAndSplitting) {
  EXPECT_EQ(j_matrix({2, 0.5}), ComplexMatrix(2, {0.0, 0.5, 0.0, 0.0}));
  EXPECT_EQ(j_matrix({4, 0.0}), ComplexMatrix(4));
  const auto j3 = j_matrix({3, 0.3});
  EXPECT_DOUBLE_EQ(j3(0, 1).real(), 0.3);
  EXPECT_DOUBLE_EQ(j3(1, 2).real(), 0.3);
  EXPECT_NEAR(j3(0, 2).real(), 0.09, 1e-17);
  for (double a : {0.0, 0.2, 0.7})
    for (std::size_t n : {1u, 2u, 5u}) {
      const KmsParams p{n, a};
      const auto j = j_matrix(p);
      EXPECT_EQ(j + j.transpose() + ComplexMatrix::identity(n), kms_matrix(p));
    }
}

TEST(PoissonKernel, Values) {
  EXPECT_DOUBLE_EQ(poisson_kernel(0.0, 1.234), 1.0);
  EXPECT_NEAR(poisson_kernel(0.3, 0.0), 1.3 / 0.7, 1e-15);
  EXPECT_NEAR(poisson_kernel(0.5, std::acos(0.75)), 1.5, 1e-15);
}

TEST(PoissonKernel, StrictlyDecreasingOnHalfPeriod) {
  for (double a : {0.05, 0.3, 0.6, 0.95}) {
    double prev = poisson_kernel(a, 0.0);
    for (int i = 1; i < 1000; ++i) {
      const double cur = poisson_kernel(a, pi * i / 999.0);
      EXPECT_LT(cur, prev);
      prev = cur;
    }
  }
}

TEST(CharacteristicFunction, QuadraticCaseMatchesClosedForm) {
  for (double a : {0.0, 0.3, 0.5, 0.9})
    for (double t : {0.1, 0.7, 1.5, 2.9}) {
      const double c = std::cos(t);
      EXPECT_NEAR(p_n({2, a}, t), 4 * c * c - 4 * a * c + a * a - 1, 1e-13);
    }
}

TEST(CharacteristicFunction, VanishesAtNodesWhenAlphaZero) {
  for (std::size_t n : {1u, 2u, 7u}) {
    const KmsParams p{n, 0.0};
    EXPECT_NEAR(p_n(p, p.node(1)), 0.0, 1e-13);
  }
}

TEST(CharacteristicFunction, SignedValueAtNodes) {
  for (std::size_t n : {2u, 5u, 12u})
    for (double a : {0.1, 0.4, 0.85}) {
      const KmsParams p{n, a};
      for (std::size_t k = 1; k <= n; ++k) {
        const double xk = p.node(k);
        const double expected = (k % 2 == 0 ? 1.0 : -1.0) * 2 * a * (1 - a * std::cos(xk));
        EXPECT_NEAR(p_n(p, xk), expected, 1e-10);
      }
    }
  const KmsParams p{5, 0.4};
  EXPECT_GT(p_n(p, p.node(2)), 0.0);
}

TEST(CharacteristicFunction, RatioAndFactoredFormsAgree) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> nd(1, 60);
  std::uniform_real_distribution<double> ad(0.0, 0.99), td(1e-3, pi - 1e-3);
  for (int i = 0; i < 1000; ++i) {
    const KmsParams p{static_cast<std::size_t>(nd(rng)), ad(rng)};
    const double t = td(rng);
    const double f = p_n(p, t);
    const double r = p_n_ratio_form(p, t);
    EXPECT_LE(std::abs(f - r), 1e-10 * std::max(1.0, std::abs(f)));
  }
}

TEST(CharacteristicFunction, DomainError) {
  EXPECT_THROW(p_n({3, 0.5}, 0.0), Error);
  EXPECT_THROW(p_n({3, 0.5}, pi), Error);
  EXPECT_THROW(p_n({3, 0.5}, -1.0), Error);
}

TEST(KmsRoots, AlphaZeroGivesNodes) {
  const auto sp = kms_roots({4, 0.0});
  ASSERT_EQ(sp.t.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(sp.t[k], (k + 1) * pi / 5.0);
}

TEST(KmsRoots, ClosedFormsForSmallN) {
  const auto two = kms_roots({2, 0.5});
  EXPECT_NEAR(two.t[0], std::acos(0.75), 1e-12);
  EXPECT_NEAR(two.t[1], std::acos(-0.25), 1e-12);
  const auto three = kms_roots({3, 0.5});
  EXPECT_NEAR(std::cos(three.t[0]), (0.5 + std::sqrt(8.25)) / 4.0, 1e-12);
  EXPECT_NEAR(std::cos(three.t[0]), 0.843070, 1e-6);
  EXPECT_NEAR(std::cos(three.t[1]), 0.25, 1e-12);
  EXPECT_NEAR(std::cos(three.t[2]), (0.5 - std::sqrt(8.25)) / 4.0, 1e-12);
}

TEST(KmsRoots, InterlaceWithNodes) {
  for (std::size_t n = 1; n <= 50; ++n)
    for (double a : alpha_grid(0.05, 0.95)) {
      const KmsParams p{n, a};
      const auto sp = kms_roots(p);
      for (std::size_t k = 1; k <= n; ++k) {
        const double t = sp.t[k - 1];
        EXPECT_GT(t, p.node(k - 1));
        if (a == 0.0) EXPECT_EQ(t, p.node(k));
        else EXPECT_LT(t, p.node(k));
        EXPECT_LE(std::abs(p_n(p, t)), 1e-9 * (n + 1) * (n + 1));
      }
    }
}

TEST(KmsEigenvalues, TrivialAndSmallCases) {
  const auto zero = kms_eigenvalues({6, 0.0});
  for (double l : zero.lambda) EXPECT_DOUBLE_EQ(l, 1.0);
  const auto two = kms_eigenvalues({2, 0.5});
  EXPECT_NEAR(two.lambda[0], 1.5, 1e-12);
  EXPECT_NEAR(two.lambda_prime[0], 0.25, 1e-12);
  const auto three = kms_eigenvalues({3, 0.5});
  const double r = std::sqrt(8.25);
  EXPECT_NEAR(three.lambda_prime[0], 0.5 * (r - 1.5) / (4.5 - r), 1e-12);
  EXPECT_NEAR(three.lambda_prime[0], 0.421535, 1e-6);
}

TEST(KmsEigenvalues, MatchJacobiSpectrum) {
  for (std::size_t n = 1; n <= 30; ++n)
    for (double a : alpha_grid(0.1, 0.9)) {
      const KmsParams p{n, a};
      const auto sp = kms_eigenvalues(p);
      const auto jac = hermitian_eigenvalues(kms_matrix(p));
      for (std::size_t k = 0; k < n; ++k) {
        EXPECT_NEAR(sp.lambda[k], jac[k], 1e-9) << "n=" << n << " a=" << a;
        EXPECT_EQ(sp.lambda_prime[k], (sp.lambda[k] - 1.0) / 2.0);
      }
      if (a > 0.0) {
        EXPECT_LT(sp.lambda.front(), (1 + a) / (1 - a));
        EXPECT_GT(sp.lambda.back(), (1 - a) / (1 + a));
        for (std::size_t k = 1; k < n; ++k) EXPECT_LT(sp.lambda[k], sp.lambda[k - 1]);
      }
    }
}

TEST(KmsEigenvalues, ShiftedSpectrumIsTraceless) {
  for (std::size_t n : {2u, 9u, 30u})
    for (double a : {0.2, 0.75}) {
      double sum = 0.0;
      for (double l : kms_eigenvalues({n, a}).lambda_prime) sum += l;
      EXPECT_NEAR(sum, 0.0, 1e-10);
    }
}

TEST(T1Bounds, Examples) {
  const auto b0 = t1_bounds({3, 0.0});
  EXPECT_NEAR(b0.lower, pi / 4, 1e-15);
  EXPECT_NEAR(b0.upper, pi / 2, 1e-15);
  EXPECT_NEAR(kms_roots({3, 0.0}).t[0], b0.lower, 1e-15);

  const auto b = t1_bounds({2, 0.5});
  EXPECT_NEAR(b.lower, 2 * pi / 9, 1e-15);
  EXPECT_NEAR(b.upper, pi / 3, 1e-15);
  EXPECT_TRUE(b.contains(std::acos(0.75)));
  EXPECT_NEAR(std::acos(0.75), 0.722734, 1e-6);

  const KmsParams hard{10, 0.99};
  const auto bh = t1_bounds(hard);
  EXPECT_LT(bh.lower, bh.upper);
  EXPECT_TRUE(bh.contains(kms_roots(hard).t[0]));
  EXPECT_THROW(t1_bounds({1, 0.5}), Error);
}

TEST(Lambda1Bounds, Examples) {
  const auto b0 = lambda1_bounds({4, 0.0});
  EXPECT_DOUBLE_EQ(b0.lower, 1.0);
  EXPECT_DOUBLE_EQ(b0.upper, 1.0);

  const auto b = lambda1_bounds({2, 0.5});
  const double upper = 0.75 / (1.0 - std::cos(2 * pi / 9) + 0.25);
  EXPECT_NEAR(b.upper, upper, 1e-14);
  EXPECT_TRUE(b.contains(1.5));
}

TEST(Lambda1Bounds, HoldAcrossGrid) {
  for (std::size_t n = 2; n <= 50; ++n)
    for (double a : alpha_grid(0.05, 0.95)) {
      const KmsParams p{n, a};
      const auto sp = kms_eigenvalues(p);
      EXPECT_TRUE(t1_bounds(p).contains(sp.t[0], 1e-12)) << n << " " << a;
      EXPECT_TRUE(lambda1_bounds(p).contains(sp.lambda[0], 1e-12)) << n << " " << a;
    }
}

TEST(BoundQuantities, AlphaZero) {
  for (std::size_t n : {2u, 3u, 8u}) {
    const auto b = bound_quantities({n, 0.0});
    EXPECT_DOUBLE_EQ(b.s, 0.0);
    EXPECT_NEAR(b.m, std::cos(pi / (n + 1)), 1e-15);
    EXPECT_NEAR(b.M, std::cos(pi / (n + 1)), 1e-15);
  }
}

TEST(BoundQuantities, TwoByTwo) {
  const auto b = bound_quantities({2, 0.5});
  EXPECT_NEAR(b.s, 0.25, 1e-12);
  EXPECT_NEAR(b.m, 0.875, 1e-12);
  EXPECT_NEAR(b.M, 0.875, 1e-12);
}

TEST(BoundQuantities, UpperBranchIsAffineInS) {
  for (std::size_t n = 2; n <= 20; ++n)
    for (double a : alpha_grid(0.05, 0.95)) {
      if (a == 0.0) continue;
      const KmsParams p{n, a};
      const auto sp = kms_roots(p);
      const double g1 = symbol_g(a, sp.t[0]);
      EXPECT_NEAR(upper_branch(a, sp.t[0]), a + (1 - a * a) / a * g1, 1e-10);
      const auto b = bound_quantities(p);
      EXPECT_LE(b.m, b.M + 1e-15);
    }
}

TEST(JRadiusClosedForm, Cases) {
  EXPECT_DOUBLE_EQ(*j_radius_closed_form({2, 0.8}), 0.4);
  EXPECT_NEAR(*j_radius_closed_form({3, 0.5}), 0.421535, 1e-6);
  EXPECT_FALSE(j_radius_closed_form({5, 0.9}).has_value());
  const auto c = j_radius_closed_form({5, 0.5});
  ASSERT_TRUE(c.has_value());
  EXPECT_NEAR(*c, bound_quantities({5, 0.5}).s, 1e-14);
}
