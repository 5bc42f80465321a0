#pragma once

// Numerical range and numerical radius of small complex matrices.
//
// The radius is computed from the support function
//   h(theta) = lambda_max(Re(e^{i theta} T)),   w(T) = max_theta h(theta),
// sampled on a uniform angular grid and refined by golden-section search
// around every grid-local maximum. Boundary points are <Tv, v> for the top
// eigenvector v at each sampled angle.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "truncshift/blaschke.hpp"
#include "truncshift/core_linalg.hpp"
#include "truncshift/error.hpp"

namespace truncshift::numrange {

struct NumericalRangeResult {
  double radius = 0.0;
  double theta_star = 0.0;  // in [0, 2 pi)
  cplx maximizer;           // boundary point at theta_star
  std::vector<double> theta;
  std::vector<cplx> boundary;  // one per theta
};

inline ComplexMatrix real_part(const ComplexMatrix& t) {
  return (t + t.adjoint()) * cplx(0.5);
}

/// Re(e^{i theta} T)
inline ComplexMatrix rotated_real_part(const ComplexMatrix& t, double theta) {
  const cplx e = std::polar(1.0, theta);
  const std::size_t n = t.size();
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r) {
    out(r, r) = (e * t(r, r)).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const cplx v = 0.5 * (e * t(r, c) + std::conj(e * t(c, r)));
      out(r, c) = v;
      out(c, r) = std::conj(v);
    }
  }
  return out;
}

inline double support_value(const ComplexMatrix& t, double theta) {
  return largest_eigenvalue(rotated_real_part(t, theta));
}

namespace detail {

constexpr double two_pi = 2.0 * std::numbers::pi;

inline double wrap_angle(double theta) {
  double w = std::fmod(theta, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w = 0.0;
  return w;
}

inline std::vector<double> angle_grid(int angles) {
  std::vector<double> th(static_cast<std::size_t>(angles));
  for (int i = 0; i < angles; ++i) th[static_cast<std::size_t>(i)] = two_pi * i / angles;
  return th;
}

inline NumericalRangeResult sample_boundary(const ComplexMatrix& t, int angles, std::vector<double>* support) {
  if (angles < 8) throw Error(ErrorKind::InvalidArgument, "at least 8 angles are required");
  NumericalRangeResult out;
  out.theta = angle_grid(angles);
  out.boundary.resize(out.theta.size());
  if (support) support->resize(out.theta.size());
  for (std::size_t i = 0; i < out.theta.size(); ++i) {
    const auto top = top_eigenpair(rotated_real_part(t, out.theta[i]));
    out.boundary[i] = quadratic_form(t, top.vector);
    if (support) (*support)[i] = top.value;
  }
  return out;
}

/// Golden-section search for the maximum of h on [a, b].
inline std::pair<double, double> golden_max(const ComplexMatrix& t, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = support_value(t, x1);
  double f2 = support_value(t, x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = support_value(t, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = support_value(t, x1);
    }
    if (x1 >= x2) break;
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace detail

inline NumericalRangeResult numerical_radius(const ComplexMatrix& t, int angles = 256, double refine_tol = 1e-12) {
  if (!(refine_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "refinement tolerance must be positive");
  std::vector<double> h;
  NumericalRangeResult out = detail::sample_boundary(t, angles, &h);
  const std::size_t g = h.size();
  const double step = detail::two_pi / angles;

  std::size_t arg = 0;
  double scale = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    if (h[i] > h[arg]) arg = i;
    scale = std::max(scale, std::abs(h[i]));
  }
  double best_theta = out.theta[arg];
  double best = h[arg];
  // Points on a flat stretch (a circular arc of the boundary) differ only by
  // rounding and are not refined, except the grid argmax.
  const double flat = 1e-12 * std::max(scale, 1e-300);
  for (std::size_t i = 0; i < g; ++i) {
    const double prev = h[(i + g - 1) % g];
    const double next = h[(i + 1) % g];
    if (h[i] < prev || h[i] < next) continue;
    if (i != arg && h[i] - std::min(prev, next) <= flat) continue;
    const double centre = out.theta[i];
    const auto [theta, value] = detail::golden_max(t, centre - step, centre + step, refine_tol);
    if (value > best) {
      best = value;
      best_theta = theta;
    }
  }
  out.radius = std::max(best, 0.0);
  out.theta_star = detail::wrap_angle(best_theta);
  const auto top = top_eigenpair(rotated_real_part(t, out.theta_star));
  out.maximizer = quadratic_form(t, top.vector);
  return out;
}

/// Boundary samples only; radius and theta_star are taken from the largest
/// sampled boundary point, without refinement.
inline NumericalRangeResult range_boundary(const ComplexMatrix& t, int angles = 256) {
  NumericalRangeResult out = detail::sample_boundary(t, angles, nullptr);
  std::size_t arg = 0;
  for (std::size_t i = 1; i < out.boundary.size(); ++i)
    if (std::abs(out.boundary[i]) > std::abs(out.boundary[arg])) arg = i;
  out.radius = std::abs(out.boundary[arg]);
  out.theta_star = out.theta[arg];
  out.maximizer = out.boundary[arg];
  return out;
}

/// Lower bound for the numerical radius from random unit vectors followed by
/// a shifted fixed-point ascent v <- normalize((e^{-i a} T + e^{i a} T* + c) v)
/// with a = arg <Tv, v> and c = |T|_F / 2. Every candidate is a genuine point of W(T).
inline double radius_lower_oracle(const ComplexMatrix& t, int samples, int ascent_steps, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "at least one sample is required");
  const std::size_t n = t.size();
  const ComplexMatrix ta = t.adjoint();
  const double shift = 0.5 * t.frobenius_norm();
  std::mt19937_64 seeder(seed);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    CVector v = random_unit_vector(n, seeder());
    cplx z = quadratic_form(t, v);
    best = std::max(best, std::abs(z));
    for (int step = 0; step < ascent_steps; ++step) {
      const cplx e = std::abs(z) > 0.0 ? z / std::abs(z) : cplx(1.0);
      const CVector tv = t * v;
      const CVector tav = ta * v;
      CVector w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = std::conj(e) * tv[i] + e * tav[i] + shift * v[i];
      const double wn = norm2(w);
      if (wn == 0.0) break;
      for (auto& x : w) x /= wn;
      v = std::move(w);
      z = quadratic_form(t, v);
      best = std::max(best, std::abs(z));
    }
  }
  return best;
}

/// Largest spread of w(S*(phi)) over the rotated zeros |a| e^{2 pi i k / K}
/// of the single-zero product of degree n.
inline double rotation_invariance_check(double alpha_modulus, std::size_t n, int num_args, int angles = 256) {
  if (!(alpha_modulus >= 0.0 && alpha_modulus < 1.0)) throw Error(ErrorKind::InvalidArgument, "modulus must lie in [0, 1)");
  if (num_args < 2) throw Error(ErrorKind::InvalidArgument, "need at least two arguments");
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  for (int k = 0; k < num_args; ++k) {
    const cplx a = std::polar(alpha_modulus, detail::two_pi * k / num_args);
    const auto m = blaschke::model_matrix(blaschke::single_zero_product(a, n)).matrix;
    const double r = numerical_radius(m, angles).radius;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return hi - lo;
}

}  // namespace truncshift::numrange
