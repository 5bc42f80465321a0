#pragma once

// Kac-Murdock-Szego matrices K_n(alpha) = (alpha^|r-s|), their Poisson-kernel
// symbol, and the spectrum obtained from the roots of the trigonometric
// characteristic function p_n. The roots t_k are separated by the nodes
// x_k = k pi / (n + 1), which gives a guaranteed bisection bracket per root.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "truncshift/core_linalg.hpp"
#include "truncshift/error.hpp"

namespace truncshift::kms {

struct KmsParams {
  std::size_t n;
  double alpha;

  KmsParams(std::size_t n_, double alpha_) : n(n_), alpha(alpha_) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "KMS dimension must be at least 1");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in [0, 1)");
  }

  /// x_k = k pi / (n + 1); x_0 = 0.
  double node(std::size_t k) const {
    return static_cast<double>(k) * std::numbers::pi / static_cast<double>(n + 1);
  }
};

struct KmsSpectrum {
  std::vector<double> t;             // increasing in (0, pi)
  std::vector<double> lambda;        // decreasing
  std::vector<double> lambda_prime;  // (lambda - 1) / 2
};

struct BoundsTriple {
  double s;
  double m;
  double M;
};

struct Interval {
  double lower;
  double upper;

  bool contains(double x, double slack = 0.0) const { return x >= lower - slack && x <= upper + slack; }
};

inline ComplexMatrix kms_matrix(const KmsParams& p) {
  ComplexMatrix k(p.n);
  for (std::size_t r = 0; r < p.n; ++r)
    for (std::size_t c = 0; c < p.n; ++c) k(r, c) = std::pow(p.alpha, static_cast<double>(r > c ? r - c : c - r));
  return k;
}

/// Strict upper triangle of K_n(alpha), so that K = J + J^T + I.
inline ComplexMatrix j_matrix(const KmsParams& p) {
  ComplexMatrix j(p.n);
  for (std::size_t r = 0; r < p.n; ++r)
    for (std::size_t c = r + 1; c < p.n; ++c) j(r, c) = std::pow(p.alpha, static_cast<double>(c - r));
  return j;
}

inline double poisson_kernel(double alpha, double t) {
  return (1.0 - alpha * alpha) / (1.0 - 2.0 * alpha * std::cos(t) + alpha * alpha);
}

/// Symbol of Re J_n(alpha): (P_alpha - 1) / 2.
inline double symbol_g(double alpha, double t) {
  const double c = std::cos(t);
  return alpha * (c - alpha) / (1.0 - 2.0 * alpha * c + alpha * alpha);
}

/// Symbol of Re S*(phi) for the single-zero product of degree n.
inline double symbol_h(double alpha, double t) {
  const double c = std::cos(t);
  return ((1.0 + alpha * alpha) * c - 2.0 * alpha) / (1.0 - 2.0 * alpha * c + alpha * alpha);
}

namespace detail {

inline void check_open_interval(double t) {
  if (!(t > 0.0 && t < std::numbers::pi)) throw Error(ErrorKind::DomainError, "t must lie in (0, pi)");
}

}  // namespace detail

/// p_n as the ratio (sin(n+1)t - 2a sin nt + a^2 sin(n-1)t) / sin t.
inline double p_n_ratio_form(const KmsParams& p, double t) {
  detail::check_open_interval(t);
  const double n = static_cast<double>(p.n);
  const double a = p.alpha;
  return (std::sin((n + 1.0) * t) - 2.0 * a * std::sin(n * t) + a * a * std::sin((n - 1.0) * t)) / std::sin(t);
}

/// p_n in the factored half-angle form; the default evaluation because the
/// first factor vanishes with sin t near t = 0 and the ratio stays accurate.
inline double p_n(const KmsParams& p, double t) {
  detail::check_open_interval(t);
  const double n = static_cast<double>(p.n);
  const double a = p.alpha;
  const double hi = 0.5 * (n + 1.0) * t;
  const double lo = 0.5 * (n - 1.0) * t;
  const double sine_factor = std::sin(hi) - a * std::sin(lo);
  const double cosine_factor = std::cos(hi) - a * std::cos(lo);
  return 2.0 * (sine_factor / std::sin(t)) * cosine_factor;
}

inline KmsSpectrum kms_roots(const KmsParams& p, double tol = 1e-13) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  KmsSpectrum out;
  out.t.resize(p.n);
  if (p.alpha == 0.0) {
    for (std::size_t k = 1; k <= p.n; ++k) out.t[k - 1] = p.node(k);
    return out;
  }
  constexpr double edge = 1e-12;
  for (std::size_t k = 1; k <= p.n; ++k) {
    double right = p.node(k);
    double left = p.node(k - 1) + edge;
    const double f_right = p_n(p, right);
    if (f_right == 0.0) {
      out.t[k - 1] = right;
      continue;
    }
    const double f_left = p_n(p, left);
    if (std::signbit(f_left) == std::signbit(f_right) || f_left == 0.0)
      throw Error(ErrorKind::BracketFailure, "no sign change on bracket " + std::to_string(k));
    const bool left_negative = f_left < 0.0;
    for (int it = 0; it < 200 && right - left > tol; ++it) {
      const double mid = 0.5 * (left + right);
      if (mid <= left || mid >= right) break;
      const double f = p_n(p, mid);
      if (f == 0.0) {
        left = right = mid;
        break;
      }
      if ((f < 0.0) == left_negative) left = mid;
      else right = mid;
    }
    out.t[k - 1] = 0.5 * (left + right);
  }
  return out;
}

inline KmsSpectrum kms_eigenvalues(const KmsParams& p, double tol = 1e-13) {
  KmsSpectrum out = kms_roots(p, tol);
  out.lambda.resize(p.n);
  out.lambda_prime.resize(p.n);
  for (std::size_t k = 0; k < p.n; ++k) {
    out.lambda[k] = poisson_kernel(p.alpha, out.t[k]);
    out.lambda_prime[k] = (out.lambda[k] - 1.0) / 2.0;
  }
  return out;
}

inline Interval t1_bounds(const KmsParams& p) {
  if (p.n < 2) throw Error(ErrorKind::DomainError, "t1 bounds need n >= 2");
  const double ac = std::acos(p.alpha);
  return {2.0 / static_cast<double>(p.n + 1) * ac, ac};
}

inline Interval lambda1_bounds(const KmsParams& p) {
  const Interval t = t1_bounds(p);
  return {1.0, poisson_kernel(p.alpha, t.lower)};
}

/// First branch of M_n: ((1 - 3a^2) cos t + 2a^3) / (1 - 2a cos t + a^2).
inline double upper_branch(double alpha, double t) {
  const double c = std::cos(t);
  const double a2 = alpha * alpha;
  return ((1.0 - 3.0 * a2) * c + 2.0 * a2 * alpha) / (1.0 - 2.0 * alpha * c + a2);
}

inline BoundsTriple bound_quantities(const KmsParams& p, double tol = 1e-13) {
  if (p.n < 2) throw Error(ErrorKind::DomainError, "bound quantities need n >= 2");
  const KmsSpectrum sp = kms_roots(p, tol);
  const double a = p.alpha;
  const double t1 = sp.t.front();
  const double tn = sp.t.back();
  const double second = -symbol_h(a, tn);
  return {
      std::max(symbol_g(a, t1), -symbol_g(a, tn)),
      std::max(std::abs(symbol_h(a, t1)), second),
      std::max(upper_branch(a, t1), second),
  };
}

/// Closed forms for the numerical radius of J_n(alpha) where one is known:
/// n = 2, n = 3, and n >= 4 with alpha <= sqrt(cos(2 pi / (n + 1))).
inline std::optional<double> j_radius_closed_form(const KmsParams& p) {
  if (p.n < 2) throw Error(ErrorKind::DomainError, "closed forms need n >= 2");
  const double a = p.alpha;
  if (p.n == 2) return a / 2.0;
  if (p.n == 3) {
    const double r = std::sqrt(a * a + 8.0);
    return a * (r - 3.0 * a) / (4.0 + 2.0 * a * a - 2.0 * a * r);
  }
  const double limit = std::sqrt(std::cos(2.0 * std::numbers::pi / static_cast<double>(p.n + 1)));
  if (a > limit) return std::nullopt;
  return symbol_g(a, kms_roots(p).t.front());
}

}  // namespace truncshift::kms
