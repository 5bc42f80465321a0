#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "truncshift/blaschke.hpp"
#include "truncshift/kms.hpp"
#include "truncshift/numrange.hpp"

using namespace truncshift;
using namespace truncshift::numrange;

namespace {

constexpr double pi = std::numbers::pi;

ComplexMatrix adjoint_shift(std::size_t n) {
  ComplexMatrix s(n);
  for (std::size_t i = 0; i + 1 < n; ++i) s(i, i + 1) = 1.0;
  return s;
}

ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  return random_gaussian_matrix(n, rng);
}

}  // namespace

TEST(RealPart, Examples) {
  std::mt19937_64 rng(1);
  const ComplexMatrix g = random_matrix(4, rng);
  const ComplexMatrix h = (g + g.adjoint()) * cplx(0.5);
  EXPECT_LE(max_abs_diff(real_part(h), h), 1e-15);
  EXPECT_EQ(real_part(adjoint_shift(2)), ComplexMatrix(2, {0.0, 0.5, 0.5, 0.0}));
  const auto j = kms::j_matrix({2, 0.5});
  EXPECT_LE(max_abs_diff(real_part(j), (j + j.transpose()) * cplx(0.5)), 0.0);
  const ComplexMatrix r = real_part(g);
  EXPECT_LE(max_abs_diff(real_part(r), r), 0.0);
  EXPECT_EQ(hermitian_defect(r), 0.0);
}

TEST(NumericalRadius, ZeroMatrix) {
  const auto r = numerical_radius(ComplexMatrix(3));
  EXPECT_EQ(r.radius, 0.0);
}

TEST(NumericalRadius, AdjointShifts) {
  EXPECT_NEAR(numerical_radius(adjoint_shift(3)).radius, std::sqrt(2.0) / 2, 1e-12);
  for (std::size_t n = 2; n <= 12; ++n)
    EXPECT_NEAR(numerical_radius(adjoint_shift(n)).radius, std::cos(pi / (n + 1)), 1e-10);
}

TEST(NumericalRadius, ClosedFormExamples) {
  EXPECT_NEAR(numerical_radius(kms::j_matrix({2, 0.5})).radius, 0.25, 1e-12);
  const auto m = blaschke::model_matrix(blaschke::single_zero_product(0.5, 2)).matrix;
  const auto r = numerical_radius(m);
  EXPECT_NEAR(r.radius, 0.875, 1e-12);
  EXPECT_NEAR(std::abs(r.maximizer), r.radius, 1e-9);
  EXPECT_GE(r.theta_star, 0.0);
  EXPECT_LT(r.theta_star, 2 * pi);
}

TEST(NumericalRadius, RejectsCoarseGrid) {
  EXPECT_THROW(numerical_radius(adjoint_shift(3), 4), Error);
  EXPECT_THROW(numerical_radius(adjoint_shift(3), 64, 0.0), Error);
}

TEST(NumericalRadius, DeterministicAcrossCalls) {
  std::mt19937_64 rng(6);
  const ComplexMatrix t = random_matrix(5, rng);
  const auto a = numerical_radius(t);
  const auto b = numerical_radius(t);
  EXPECT_EQ(a.radius, b.radius);
  EXPECT_EQ(a.theta_star, b.theta_star);
}

TEST(RangeBoundary, ShiftRangeIsADisc) {
  const auto b = range_boundary(adjoint_shift(3), 256);
  ASSERT_EQ(b.boundary.size(), 256u);
  for (auto z : b.boundary) EXPECT_NEAR(std::abs(z), std::cos(pi / 4), 1e-6);
}

TEST(RangeBoundary, HermitianRangeIsSegment) {
  ComplexMatrix d(2);
  d(0, 0) = -1.0;
  d(1, 1) = 2.0;
  const auto b = range_boundary(d, 64);
  double lo = 10, hi = -10;
  for (auto z : b.boundary) {
    EXPECT_NEAR(z.imag(), 0.0, 1e-12);
    EXPECT_GE(z.real(), -1.0 - 1e-12);
    EXPECT_LE(z.real(), 2.0 + 1e-12);
    lo = std::min(lo, z.real());
    hi = std::max(hi, z.real());
  }
  EXPECT_NEAR(lo, -1.0, 1e-12);
  EXPECT_NEAR(hi, 2.0, 1e-12);
}

TEST(RangeBoundary, SingleZeroRangeIsSymmetric) {
  const auto m = blaschke::model_matrix(blaschke::single_zero_product(0.5, 4)).matrix;
  const int g = 256;
  const auto b = range_boundary(m, g);
  for (int i = 1; i < g; ++i) EXPECT_LE(std::abs(b.boundary[i] - std::conj(b.boundary[g - i])), 1e-8);
}

TEST(RangeBoundary, ConvexPosition) {
  std::mt19937_64 rng(9);
  const ComplexMatrix t = random_matrix(5, rng);
  const auto b = range_boundary(t, 128);
  // Each sample maximizes Re(e^{i theta} z) over all other samples.
  for (std::size_t i = 0; i < b.boundary.size(); ++i) {
    const cplx e = std::polar(1.0, b.theta[i]);
    const double own = (e * b.boundary[i]).real();
    for (auto z : b.boundary) EXPECT_LE((e * z).real(), own + 1e-9);
  }
}

TEST(LowerOracle, Examples) {
  EXPECT_NEAR(radius_lower_oracle(ComplexMatrix::identity(3), 1, 0, 1), 1.0, 1e-14);
  EXPECT_NEAR(radius_lower_oracle(adjoint_shift(4), 200, 50, 7), std::cos(pi / 5), 1e-4);
  EXPECT_NEAR(radius_lower_oracle(kms::j_matrix({3, 0.5}), 200, 50, 7), 0.421535, 1e-4);
}

TEST(RotationInvariance, Examples) {
  EXPECT_EQ(rotation_invariance_check(0.0, 4, 8), 0.0);
  EXPECT_LE(rotation_invariance_check(0.5, 3, 8), 1e-8);
  EXPECT_LE(rotation_invariance_check(0.9, 5, 8), 1e-8);
}

TEST(NumericalRadiusProperties, RandomMatrices) {
  std::mt19937_64 rng(2025);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const ComplexMatrix t = random_matrix(n, rng);
    const auto r = numerical_radius(t);
    const double oracle = radius_lower_oracle(t, 8, 20, 100 + trial);
    EXPECT_LE(oracle, r.radius + 1e-9);
    EXPECT_LE(r.radius, operator_norm(t) + 1e-10);
    EXPECT_GE(r.radius, std::abs(t.trace()) / static_cast<double>(n) - 1e-12);
    EXPECT_LE(numerical_radius(real_part(t)).radius, r.radius + 1e-10);
    double boundary_max = 0.0;
    for (auto z : r.boundary) boundary_max = std::max(boundary_max, std::abs(z));
    EXPECT_LE(boundary_max, r.radius + 1e-10);
    EXPECT_NEAR(std::abs(r.maximizer), r.radius, 1e-8);
  }
}

TEST(NumericalRadiusProperties, UnitaryInvariance) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const ComplexMatrix t = random_matrix(n, rng);
    const ComplexMatrix u = random_unitary(n, 500 + trial);
    EXPECT_NEAR(numerical_radius(u.adjoint() * t * u).radius, numerical_radius(t).radius, 1e-9);
  }
}

TEST(NumericalRadiusProperties, HermitianRadiusIsSpectralRadius) {
  std::mt19937_64 rng(78);
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexMatrix t = real_part(random_matrix(1 + trial % 8, rng));
    const auto ev = hermitian_eigenvalues(t);
    const double rho = std::max(std::abs(ev.front()), std::abs(ev.back()));
    EXPECT_NEAR(numerical_radius(t).radius, rho, 1e-10);
  }
}

TEST(NumericalRadiusProperties, TriangularSpectralRadiusIsALowerBound) {
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> zeros(1 + trial % 6);
    for (auto& z : zeros) z = {u(rng) * 0.7, u(rng) * 0.7};
    const auto m = blaschke::model_matrix(blaschke::BlaschkeProduct(zeros)).matrix;
    double rho = 0.0;
    for (auto z : zeros) rho = std::max(rho, std::abs(z));
    EXPECT_GE(numerical_radius(m).radius, rho - 1e-10);
  }
}

TEST(NumericalRadiusProperties, ShiftPowers) {
  for (std::size_t n = 2; n <= 12; ++n) {
    const ComplexMatrix s = adjoint_shift(n);
    for (unsigned k = 1; k < n; ++k) {
      const double expected = std::cos(pi / static_cast<double>((n - 1) / k + 2));
      EXPECT_NEAR(numerical_radius(matrix_power(s, k)).radius, expected, 1e-8) << n << " " << k;
    }
  }
}

TEST(NumericalRadiusProperties, ZeroOrderDoesNotMatter) {
  std::mt19937_64 rng(80);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<cplx> zeros(2 + trial % 5);
    for (auto& z : zeros) z = {u(rng), u(rng)};
    const double r = numerical_radius(blaschke::model_matrix(blaschke::BlaschkeProduct(zeros)).matrix).radius;
    std::reverse(zeros.begin(), zeros.end());
    std::rotate(zeros.begin(), zeros.begin() + 1, zeros.end());
    EXPECT_NEAR(numerical_radius(blaschke::model_matrix(blaschke::BlaschkeProduct(zeros)).matrix).radius, r, 1e-9);
  }
}

TEST(KmsNumericalRadius, JMatrixRadiusEqualsS) {
  for (std::size_t n = 2; n <= 15; ++n)
    for (int i = 1; i <= 19; ++i) {
      const kms::KmsParams p{n, 0.05 * i};
      const double r = numerical_radius(kms::j_matrix(p)).radius;
      EXPECT_NEAR(r, kms::bound_quantities(p).s, 1e-8) << n << " " << p.alpha;
      EXPECT_NEAR(numerical_radius(real_part(kms::j_matrix(p))).radius, r, 1e-9);
    }
}
