#pragma once

// Finite Blaschke products, the Takenaka-Malmquist orthonormal basis of the
// model space H(phi), and the matrix of the compressed adjoint shift S*(phi)
// in that basis.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "truncshift/core_linalg.hpp"
#include "truncshift/error.hpp"

namespace truncshift::blaschke {

/// Zeros closer than this to the unit circle are rejected.
inline constexpr double zero_guard = 1e-10;

class BlaschkeProduct {
 public:
  explicit BlaschkeProduct(std::vector<cplx> zeros) : zeros_(std::move(zeros)) {
    if (zeros_.empty()) throw Error(ErrorKind::InvalidArgument, "Blaschke product needs at least one zero");
    for (const auto& a : zeros_)
      if (!(std::abs(a) <= 1.0 - zero_guard))
        throw Error(ErrorKind::InvalidZero, "Blaschke zeros must satisfy |a| <= 1 - 1e-10");
  }

  std::size_t degree() const noexcept { return zeros_.size(); }
  std::span<const cplx> zeros() const noexcept { return zeros_; }

 private:
  std::vector<cplx> zeros_;
};

inline BlaschkeProduct single_zero_product(cplx alpha, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "degree must be at least 1");
  if (!(std::abs(alpha) < 1.0)) throw Error(ErrorKind::InvalidZero, "zero must lie in the open unit disc");
  return BlaschkeProduct(std::vector<cplx>(n, alpha));
}

/// Zeros uniform in the disc of radius max_modulus.
inline BlaschkeProduct random_product(std::size_t degree, double max_modulus, std::uint64_t seed) {
  if (!(max_modulus >= 0.0 && max_modulus <= 1.0 - zero_guard)) throw Error(ErrorKind::InvalidArgument, "bad zero modulus");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> zeros(degree);
  for (auto& z : zeros) {
    const double r = max_modulus * std::sqrt(u(rng));
    z = std::polar(r, 2.0 * std::numbers::pi * u(rng));
  }
  return BlaschkeProduct(std::move(zeros));
}

namespace detail {

inline cplx factor(cplx a, cplx z) {
  const cplx den = 1.0 - std::conj(a) * z;
  if (std::abs(den) == 0.0) throw Error(ErrorKind::PoleHit, "z is the pole 1/conj(a) of a Blaschke factor");
  return (z - a) / den;
}

}  // namespace detail

inline cplx evaluate_product(const BlaschkeProduct& phi, cplx z) {
  cplx v = 1.0;
  for (const auto& a : phi.zeros()) v *= detail::factor(a, z);
  return v;
}

struct BasisFunction {
  BlaschkeProduct product;
  std::size_t k;  // 1-based

  BasisFunction(BlaschkeProduct p, std::size_t index) : product(std::move(p)), k(index) {
    if (k < 1 || k > product.degree()) throw Error(ErrorKind::InvalidArgument, "basis index out of range");
  }
};

/// e_k(z) = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z) * prod_{j<k} (z - a_j) / (1 - conj(a_j) z)
inline cplx evaluate_basis(const BasisFunction& b, cplx z) {
  const auto zeros = b.product.zeros();
  const cplx ak = zeros[b.k - 1];
  const cplx den = 1.0 - std::conj(ak) * z;
  if (std::abs(den) == 0.0) throw Error(ErrorKind::PoleHit, "z is a pole of the basis function");
  cplx v = std::sqrt(1.0 - std::norm(ak)) / den;
  for (std::size_t j = 0; j + 1 < b.k; ++j) v *= detail::factor(zeros[j], z);
  return v;
}

struct ModelOperator {
  ComplexMatrix matrix;
  BlaschkeProduct product;
};

/// Matrix of S*(phi) in the Takenaka-Malmquist basis: conj(a_l) on the
/// diagonal, s_l s_k prod_{l<j<k} (-a_j) above it, zero below, with
/// s_k = sqrt(1 - |a_k|^2).
inline ModelOperator model_matrix(const BlaschkeProduct& phi) {
  const auto a = phi.zeros();
  const std::size_t n = phi.degree();
  std::vector<double> sigma(n);
  for (std::size_t k = 0; k < n; ++k) sigma[k] = std::sqrt(1.0 - std::norm(a[k]));
  ComplexMatrix m(n);
  for (std::size_t l = 0; l < n; ++l) {
    m(l, l) = std::conj(a[l]);
    cplx chain = 1.0;
    for (std::size_t k = l + 1; k < n; ++k) {
      m(l, k) = sigma[l] * sigma[k] * chain;
      chain *= -a[k];
    }
  }
  return {std::move(m), phi};
}

inline std::vector<cplx> circle_nodes(std::size_t count) {
  std::vector<cplx> z(count);
  for (std::size_t m = 0; m < count; ++m)
    z[m] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(count));
  return z;
}

/// Samples of every basis function on the N circle nodes; row k-1 holds e_k.
inline std::vector<CVector> sample_basis(const BlaschkeProduct& phi, std::span<const cplx> nodes) {
  std::vector<CVector> rows;
  rows.reserve(phi.degree());
  for (std::size_t k = 1; k <= phi.degree(); ++k) {
    const BasisFunction e(phi, k);
    CVector row(nodes.size());
    for (std::size_t m = 0; m < nodes.size(); ++m) row[m] = evaluate_basis(e, nodes[m]);
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Trapezoidal Gram matrix <e_k, e_l> on N circle points.
inline ComplexMatrix gram_matrix_by_quadrature(const BlaschkeProduct& phi, std::size_t points = 4096) {
  const auto nodes = circle_nodes(points);
  const auto e = sample_basis(phi, nodes);
  const std::size_t n = phi.degree();
  ComplexMatrix g(n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t k = 0; k < n; ++k) g(l, k) = inner(e[k], e[l]) / static_cast<double>(points);
  return g;
}

/// Entry (l, k) = <S* e_k, e_l> by N-point circle quadrature, applying
/// (S* f)(z) = (f(z) - f(0)) / z pointwise on the circle.
inline ComplexMatrix model_matrix_by_quadrature(const BlaschkeProduct& phi, std::size_t points = 4096) {
  const std::size_t n = phi.degree();
  if (points < 16 * n) throw Error(ErrorKind::InvalidArgument, "quadrature needs at least 16 points per zero");
  const auto nodes = circle_nodes(points);
  const auto e = sample_basis(phi, nodes);
  std::vector<CVector> backward;
  backward.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const cplx at_origin = evaluate_basis(BasisFunction(phi, k), 0.0);
    CVector row(points);
    for (std::size_t m = 0; m < points; ++m) row[m] = (e[k - 1][m] - at_origin) / nodes[m];
    backward.push_back(std::move(row));
  }
  ComplexMatrix out(n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t k = 0; k < n; ++k) out(l, k) = inner(backward[k], e[l]) / static_cast<double>(points);
  return out;
}

/// phi(X) = prod_j (X - a_j I)(I - conj(a_j) X)^{-1}, the functional
/// calculus of the product at a matrix with spectrum inside the disc.
inline ComplexMatrix evaluate_at_matrix(const BlaschkeProduct& phi, const ComplexMatrix& x) {
  const std::size_t n = x.size();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  ComplexMatrix out = id;
  for (const auto& a : phi.zeros()) {
    const ComplexMatrix num = x - a * id;
    const ComplexMatrix den = id - std::conj(a) * x;
    // den commutes with num, so num * den^{-1} = den^{-1} * num.
    out = out * solve(den, num);
  }
  return out;
}

}  // namespace truncshift::blaschke
