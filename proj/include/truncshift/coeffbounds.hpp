#pragma once

// Taylor coefficients of rational functions that are nonnegative on the
// torus, and the coefficient inequalities tied to the numerical radius of
// powers of the truncated adjoint shift: the rational-function bound
// |c_k| <= c_0 w(S*^k(phi)), Egervary-Szasz, Fejer and Haagerup-de la Harpe.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "truncshift/blaschke.hpp"
#include "truncshift/core_linalg.hpp"
#include "truncshift/error.hpp"
#include "truncshift/numrange.hpp"

namespace truncshift::coeff {

inline constexpr std::size_t torus_grid = 4096;
inline constexpr double coprime_tol = 1e-6;
inline constexpr double circle_tol = 1e-6;
inline constexpr double pairing_tol = 1e-6;
inline constexpr std::size_t max_fft = std::size_t{1} << 20;

namespace detail {

inline std::vector<cplx> unit_roots(std::size_t count) {
  std::vector<cplx> z(count);
  for (std::size_t m = 0; m < count; ++m)
    z[m] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(count));
  return z;
}

inline std::vector<cplx> roots_or_empty(const Polynomial& p) {
  if (p.degree() == 0) return {};
  return polynomial_roots(p);
}

}  // namespace detail

/// F = P / Q, real and nonnegative on the unit circle.
class RationalTorusFunction {
 public:
  RationalTorusFunction(Polynomial p, Polynomial q) : p_(std::move(p)), q_(std::move(q)) { validate(); }

  const Polynomial& numerator() const noexcept { return p_; }
  const Polynomial& denominator() const noexcept { return q_; }

  cplx operator()(cplx z) const {
    const cplx den = q_(z);
    if (std::abs(den) < 1e-10) throw Error(ErrorKind::PoleOnTorus, "denominator vanishes at a sample point");
    return p_(z) / den;
  }

 private:
  void validate() const {
    const auto pr = detail::roots_or_empty(p_);
    const auto qr = detail::roots_or_empty(q_);
    for (const auto& a : pr)
      for (const auto& b : qr)
        if (std::abs(a - b) <= coprime_tol) throw Error(ErrorKind::NotCoprime, "numerator and denominator share a root");
    double lo = std::numeric_limits<double>::max(), hi = 0.0, im = 0.0;
    for (const auto& z : detail::unit_roots(torus_grid)) {
      const cplx f = (*this)(z);
      lo = std::min(lo, f.real());
      hi = std::max(hi, std::abs(f));
      im = std::max(im, std::abs(f.imag()));
    }
    const double scale = std::max(1.0, hi);
    if (im >= 1e-9 * scale) throw Error(ErrorKind::DomainError, "F is not real on the torus");
    if (lo < -1e-9 * scale || hi == 0.0) throw Error(ErrorKind::DomainError, "F is not positive on the torus");
  }

  Polynomial p_;
  Polynomial q_;
};

/// Fourier coefficients c_kmin..c_kmax from an N-point DFT of torus samples.
inline std::vector<cplx> fourier_coefficients_at(const RationalTorusFunction& f, int kmin, int kmax, std::size_t points) {
  const auto z = detail::unit_roots(points);
  std::vector<cplx> samples(points);
  for (std::size_t m = 0; m < points; ++m) samples[m] = f(z[m]);
  std::vector<cplx> c;
  c.reserve(static_cast<std::size_t>(kmax - kmin + 1));
  const auto big = static_cast<long long>(points);
  for (int k = kmin; k <= kmax; ++k) {
    cplx s = 0.0;
    for (std::size_t m = 0; m < points; ++m) {
      long long idx = (-static_cast<long long>(k) * static_cast<long long>(m)) % big;
      if (idx < 0) idx += big;
      s += samples[m] * z[static_cast<std::size_t>(idx)];
    }
    c.push_back(s / static_cast<double>(points));
  }
  return c;
}

/// c_kmin..c_kmax, doubling N until successive estimates agree within 1e-10.
inline std::vector<cplx> fourier_coefficients(const RationalTorusFunction& f, int kmin, int kmax, std::size_t points = 0) {
  if (kmin > kmax) throw Error(ErrorKind::InvalidArgument, "empty coefficient range");
  const std::size_t reach = static_cast<std::size_t>(std::max(std::abs(kmin), std::abs(kmax)));
  const std::size_t need = 8 * (f.numerator().degree() + f.denominator().degree() + reach);
  if (points != 0 && (points & (points - 1)) != 0) throw Error(ErrorKind::InvalidArgument, "DFT size must be a power of two");
  std::size_t n = 16;
  while (n < std::max(need, points)) n *= 2;
  auto c = fourier_coefficients_at(f, kmin, kmax, n);
  while (n < max_fft) {
    n *= 2;
    auto next = fourier_coefficients_at(f, kmin, kmax, n);
    double change = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) change = std::max(change, std::abs(next[i] - c[i]));
    c = std::move(next);
    if (change < 1e-10) return c;
  }
  throw Error(ErrorKind::NoConvergence, "Fourier coefficients did not settle below the DFT size cap");
}

inline std::vector<cplx> taylor_coefficients(const RationalTorusFunction& f, int kmax, std::size_t points = 0) {
  if (kmax < 0) throw Error(ErrorKind::InvalidArgument, "kmax must be nonnegative");
  auto c = fourier_coefficients(f, 0, kmax, points);
  c[0] = c[0].real();
  return c;
}

struct InnerRoot {
  cplx root;
  std::size_t multiplicity;
};

struct FactorizationData {
  std::optional<blaschke::BlaschkeProduct> phi;  // nonzero inner roots of P
  std::optional<blaschke::BlaschkeProduct> psi;  // nonzero inner roots of Q
  std::vector<InnerRoot> inner_disc_zeros_p;
  std::vector<InnerRoot> inner_disc_zeros_q;
  std::size_t circle_roots_p = 0;
  std::size_t m = 0;
  std::size_t d = 0;
  std::size_t r = 0;
  blaschke::BlaschkeProduct phi_var{std::vector<cplx>{0.0}};
};

namespace detail {

struct SplitRoots {
  std::vector<cplx> inner;  // nonzero, inside the disc
  std::vector<cplx> outer;
  std::size_t on_circle = 0;
};

inline SplitRoots split_roots(const std::vector<cplx>& roots) {
  SplitRoots s;
  for (const auto& z : roots) {
    const double a = std::abs(z);
    if (a <= 1e-12) continue;
    if (std::abs(a - 1.0) <= circle_tol) ++s.on_circle;
    else if (a < 1.0) s.inner.push_back(z);
    else s.outer.push_back(z);
  }
  return s;
}

/// Each inner root a must have a partner 1/conj(a) among the outer roots.
inline bool paired(const SplitRoots& s) {
  if (s.inner.size() != s.outer.size()) return false;
  std::vector<bool> used(s.outer.size(), false);
  for (const auto& a : s.inner) {
    const cplx mirror = 1.0 / std::conj(a);
    const double tol = pairing_tol * std::max(1.0, std::abs(mirror));
    bool found = false;
    for (std::size_t j = 0; j < s.outer.size() && !found; ++j)
      if (!used[j] && std::abs(s.outer[j] - mirror) <= tol) {
        used[j] = true;
        found = true;
      }
    if (!found) return false;
  }
  return true;
}

inline std::vector<InnerRoot> grouped(const std::vector<cplx>& inner) {
  std::vector<InnerRoot> out;
  for (const auto& c : cluster_roots(inner, coprime_tol)) out.push_back({c.center, c.multiplicity});
  return out;
}

}  // namespace detail

inline FactorizationData factorize(const RationalTorusFunction& f) {
  const auto p = detail::split_roots(detail::roots_or_empty(f.numerator()));
  const auto q = detail::split_roots(detail::roots_or_empty(f.denominator()));
  if (q.on_circle > 0) throw Error(ErrorKind::ZeroOnTorus, "denominator has a root on the torus");
  if (p.on_circle % 2 != 0) throw Error(ErrorKind::PairingViolation, "numerator has an unpaired root on the torus");
  if (!detail::paired(p) || !detail::paired(q))
    throw Error(ErrorKind::PairingViolation, "roots are not symmetric under reflection in the torus");

  FactorizationData out;
  out.inner_disc_zeros_p = detail::grouped(p.inner);
  out.inner_disc_zeros_q = detail::grouped(q.inner);
  out.circle_roots_p = p.on_circle;
  out.m = p.inner.size() + p.on_circle / 2;
  out.d = q.inner.size();
  out.r = out.m + 1 > out.d ? out.m + 1 - out.d : 0;
  if (!p.inner.empty()) out.phi = blaschke::BlaschkeProduct(p.inner);
  if (!q.inner.empty()) out.psi = blaschke::BlaschkeProduct(q.inner);
  std::vector<cplx> zeros(out.r, cplx{});
  zeros.insert(zeros.end(), q.inner.begin(), q.inner.end());
  out.phi_var = blaschke::BlaschkeProduct(std::move(zeros));
  return out;
}

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Bound for c_k given the factorization and coefficients c_0..c_kmax.
inline BoundCheck theorem21_check(const FactorizationData& data, int k, const std::vector<cplx>& c) {
  if (k < 1 || static_cast<std::size_t>(k) >= c.size()) throw Error(ErrorKind::InvalidArgument, "k out of range");
  const auto model = blaschke::model_matrix(data.phi_var).matrix;
  const double w = numrange::numerical_radius(matrix_power(model, static_cast<unsigned>(k))).radius;
  BoundCheck out;
  out.lhs = std::abs(c[static_cast<std::size_t>(k)]);
  out.rhs = c[0].real() * w;
  out.holds = out.lhs <= out.rhs + 1e-9;
  return out;
}

inline BoundCheck theorem21_check(const RationalTorusFunction& f, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  return theorem21_check(factorize(f), k, taylor_coefficients(f, k));
}

inline double egervary_bound(std::size_t n, std::size_t k) {
  if (n < 2 || k < 1 || k > n - 1) throw Error(ErrorKind::DomainError, "need n >= 2 and 1 <= k <= n-1");
  return std::cos(std::numbers::pi / static_cast<double>((n - 1) / k + 2));
}

/// Trigonometric polynomial sum_{|j|<n} c_j e^{ijt} with c_{-j} = conj(c_j),
/// stored as c_0..c_{n-1}.
class TrigPolynomial {
 public:
  explicit TrigPolynomial(std::vector<cplx> c) : c_(std::move(c)) {
    if (c_.size() < 2) throw Error(ErrorKind::InvalidArgument, "trigonometric polynomial needs n >= 2");
    if (std::abs(c_[0].imag()) > 1e-12 * std::max(1.0, std::abs(c_[0])))
      throw Error(ErrorKind::InvalidArgument, "c_0 must be real");
    c_[0] = c_[0].real();
  }

  std::size_t n() const noexcept { return c_.size(); }
  std::span<const cplx> coefficients() const noexcept { return c_; }

  cplx coefficient(int j) const {
    const auto a = static_cast<std::size_t>(std::abs(j));
    if (a >= c_.size()) return 0.0;
    return j >= 0 ? c_[a] : std::conj(c_[a]);
  }

  double operator()(double t) const {
    double s = c_[0].real();
    for (std::size_t j = 1; j < c_.size(); ++j) s += 2.0 * (c_[j] * std::polar(1.0, static_cast<double>(j) * t)).real();
    return s;
  }

  /// P / Q with P(z) = sum_i c_{i-n+1} z^i and Q(z) = z^{n-1}, common powers of z removed.
  RationalTorusFunction to_rational() const {
    const int top = static_cast<int>(c_.size()) - 1;
    std::vector<cplx> p;
    for (int i = 0; i <= 2 * top; ++i) p.push_back(coefficient(i - top));
    std::size_t lead = 0;
    while (lead < p.size() && p[lead] == cplx{}) ++lead;
    const std::size_t strip = std::min(lead, static_cast<std::size_t>(top));
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(strip));
    std::vector<cplx> q(static_cast<std::size_t>(top) - strip + 1, cplx{});
    q.back() = 1.0;
    return RationalTorusFunction(Polynomial(std::move(p)), Polynomial(std::move(q)));
  }

 private:
  std::vector<cplx> c_;
};

/// Coefficients of |sum_j h_j e^{ijt}|^2.
inline TrigPolynomial squared_modulus(std::span<const cplx> h) {
  std::vector<cplx> c(h.size());
  for (std::size_t k = 0; k < h.size(); ++k)
    for (std::size_t i = 0; i + k < h.size(); ++i) c[k] += h[i + k] * std::conj(h[i]);
  return TrigPolynomial(std::move(c));
}

inline TrigPolynomial fejer_extremal(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::DomainError, "n must be at least 2");
  std::vector<cplx> h(n);
  for (std::size_t j = 0; j < n; ++j)
    h[j] = std::sin(static_cast<double>(j + 1) * std::numbers::pi / static_cast<double>(n + 1));
  return squared_modulus(h);
}

/// |h|^2 for a complex Gaussian h of degree n-1, normalized to c_0 = 1.
inline TrigPolynomial random_positive_trig(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::DomainError, "n must be at least 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<cplx> h(n);
  for (auto& v : h) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v = {re, im};
  }
  const auto raw = squared_modulus(h);
  std::vector<cplx> c(raw.coefficients().begin(), raw.coefficients().end());
  const double c0 = c[0].real();
  for (auto& v : c) v /= c0;
  return TrigPolynomial(std::move(c));
}

inline double haagerup_ratio(const ComplexMatrix& t) {
  const double norm = operator_norm(t);
  if (norm == 0.0) return 0.0;
  const double bound = norm * std::cos(std::numbers::pi / static_cast<double>(t.size() + 1));
  return numrange::numerical_radius(t).radius / bound;
}

/// Strictly upper triangular complex Gaussian matrix scaled to unit norm.
inline ComplexMatrix random_nilpotent_contraction(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  ComplexMatrix t(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      t(r, c) = {re, im};
    }
  const double norm = operator_norm(t);
  return norm > 0.0 ? t * cplx(1.0 / norm) : t;
}

/// Largest w(T) / (|T| cos(pi/(n+1))) over random nilpotent contractions.
inline double haagerup_check(std::size_t n, int trials, std::uint64_t seed) {
  if (n < 2 || trials < 1) throw Error(ErrorKind::InvalidArgument, "need n >= 2 and trials >= 1");
  double worst = 0.0;
  for (int i = 0; i < trials; ++i)
    worst = std::max(worst, haagerup_ratio(random_nilpotent_contraction(n, derive_seed(seed, static_cast<std::uint64_t>(i)))));
  return worst;
}

/// P / Q for |p|^2 / |q|^2 on the torus: P = z^a p p#, Q = z^b q q#.
inline RationalTorusFunction squared_modulus_rational(const Polynomial& p, const Polynomial& q) {
  const std::size_t dp = p.degree(), dq = q.degree();
  const Polynomial num = p * p.reversed_conjugate();
  const Polynomial den = q * q.reversed_conjugate();
  return RationalTorusFunction(dq > dp ? num.shifted(dq - dp) : num, dp > dq ? den.shifted(dp - dq) : den);
}

/// Roots with modulus in [0.2, 0.85] or its reciprocal, uniform argument.
inline RationalTorusFunction random_positive_rational(std::size_t deg_p, std::size_t deg_q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> modulus(0.2, 0.85), angle(0.0, 2.0 * std::numbers::pi);
  std::bernoulli_distribution flip(0.5);
  std::normal_distribution<double> gauss;
  auto draw = [&](std::size_t degree) {
    std::vector<cplx> roots(degree);
    for (auto& z : roots) {
      double r = modulus(rng);
      if (flip(rng)) r = 1.0 / r;
      z = std::polar(r, angle(rng));
    }
    const double re = gauss(rng);
    const double im = gauss(rng);
    return Polynomial::from_roots(roots, cplx(re, im) + cplx(re == 0.0 && im == 0.0 ? 1.0 : 0.0));
  };
  for (int attempt = 0; attempt < 100; ++attempt) {
    const Polynomial p = draw(deg_p);
    const Polynomial q = draw(deg_q);
    try {
      return squared_modulus_rational(p, q);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotCoprime) throw;
    }
  }
  throw Error(ErrorKind::RetryExhausted, "no coprime instance after 100 draws");
}

}  // namespace truncshift::coeff
