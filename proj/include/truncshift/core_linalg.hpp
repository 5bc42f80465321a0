#pragma once

// Dense complex kernel: matrices, Hermitian eigensolvers, polynomial roots and
// seeded random sampling. Sizes here are small (n up to a few hundred), so
// everything is plain row-major storage and O(n^3) algorithms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "truncshift/error.hpp"

namespace truncshift {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "matrix dimension must be positive");
  }

  ComplexMatrix(std::size_t n, std::vector<cplx> row_major) : n_(n), data_(std::move(row_major)) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "matrix dimension must be positive");
    if (data_.size() != n * n) throw Error(ErrorKind::InvalidArgument, "entry count is not n*n");
    for (const auto& v : data_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(ErrorKind::InvalidArgument, "matrix entries must be finite");
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const noexcept { return n_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  std::span<const cplx> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix out(n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.check_same(b);
    const std::size_t n = a.n_;
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend CVector operator*(const ComplexMatrix& a, std::span<const cplx> v) {
    if (v.size() != a.n_) throw Error(ErrorKind::InvalidArgument, "vector length mismatch");
    CVector out(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < a.n_; ++j) s += a(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void check_same(const ComplexMatrix& o) const {
    if (o.n_ != n_) throw Error(ErrorKind::InvalidArgument, "matrix dimension mismatch");
  }

  std::size_t n_ = 0;
  std::vector<cplx> data_;
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).max_abs();
}

inline cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
  // <x, y> = sum x_i conj(y_i)
  cplx s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

inline double norm2(std::span<const cplx> x) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

/// <Tv, v> for a unit vector v: a point of the numerical range.
inline cplx quadratic_form(const ComplexMatrix& t, std::span<const cplx> v) {
  const CVector tv = t * v;
  return inner(tv, v);
}

inline ComplexMatrix matrix_power(const ComplexMatrix& m, unsigned k) {
  ComplexMatrix out = ComplexMatrix::identity(m.size());
  for (unsigned i = 0; i < k; ++i) out = out * m;
  return out;
}

inline double hermitian_defect(const ComplexMatrix& m) {
  double d = 0.0;
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = r; c < m.size(); ++c) d = std::max(d, std::abs(m(r, c) - std::conj(m(c, r))));
  return d;
}

struct HermitianEigen {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column j pairs with values[j]
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for a Hermitian matrix. Each rotation is a phase
/// fix that makes the (p,q) pivot real followed by a real Givens rotation.
inline HermitianEigen hermitian_eigen(const ComplexMatrix& m, double tol = 1e-12, int max_sweeps = 100) {
  if (hermitian_defect(m) > tol) throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian within tolerance");
  const std::size_t n = m.size();
  ComplexMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = a.frobenius_norm();
  const double threshold = tol * scale;
  int sweep = 0;
  while (scale > 0.0 && detail::off_diagonal_norm(a) > threshold) {
    if (sweep++ >= max_sweeps) throw Error(ErrorKind::NoConvergence, "Jacobi sweep cap reached");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx b = a(p, q);
        const double r = std::abs(b);
        if (r == 0.0) continue;
        const cplx phase = b / r;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on columns (p, q).
        const cplx em = std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp - s * em * akq;
          a(k, q) = s * akp + c * em * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp - s * em * vkq;
          v(k, q) = s * vkp + c * em * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol = 1e-12) {
  return hermitian_eigen(m, tol).values;
}

/// Hermitian matrix reduced to a real symmetric tridiagonal T with
/// m = Q D T D* Q*, Q a product of Householder reflectors and D a diagonal
/// phase matrix.
class HermitianTridiagonal {
 public:
  explicit HermitianTridiagonal(const ComplexMatrix& m) : n_(m.size()), diag_(n_), off_(n_ > 0 ? n_ - 1 : 0), phase_(n_, 1.0) {
    ComplexMatrix a = m;
    const std::size_t n = n_;
    CVector p(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
      const std::size_t len = n - k - 1;
      CVector v(len);
      double xnorm = 0.0;
      for (std::size_t i = 0; i < len; ++i) {
        v[i] = a(k + 1 + i, k);
        xnorm += std::norm(v[i]);
      }
      xnorm = std::sqrt(xnorm);
      const double tail = xnorm * xnorm - std::norm(v[0]);
      if (xnorm == 0.0 || tail <= 0.0) {
        reflectors_.emplace_back();
        continue;
      }
      const double x0abs = std::abs(v[0]);
      const cplx unit = x0abs > 0.0 ? v[0] / x0abs : cplx(1.0);
      const cplx alpha = -unit * xnorm;
      v[0] -= alpha;
      const double vnorm = norm2(v);
      for (auto& x : v) x /= vnorm;

      // a <- H a H on the trailing block, H = I - 2 v v*
      const std::size_t off = k + 1;
      for (std::size_t i = 0; i < len; ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < len; ++j) s += a(off + i, off + j) * v[j];
        p[i] = s;
      }
      cplx kk = 0.0;
      for (std::size_t i = 0; i < len; ++i) kk += std::conj(v[i]) * p[i];
      const double kr = kk.real();
      for (std::size_t i = 0; i < len; ++i) p[i] -= kr * v[i];  // w = p - K v
      for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = 0; j < len; ++j)
          a(off + i, off + j) -= 2.0 * (v[i] * std::conj(p[j]) + p[i] * std::conj(v[j]));
      a(k + 1, k) = alpha;
      a(k, k + 1) = std::conj(alpha);
      for (std::size_t i = 1; i < len; ++i) {
        a(k + 1 + i, k) = 0.0;
        a(k, k + 1 + i) = 0.0;
      }
      reflectors_.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < n; ++i) diag_[i] = a(i, i).real();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const cplx e = a(i + 1, i);
      const double ea = std::abs(e);
      off_[i] = ea;
      phase_[i + 1] = ea > 0.0 ? phase_[i] * (e / ea) : phase_[i];
    }
  }

  std::span<const double> diagonal() const noexcept { return diag_; }
  std::span<const double> off_diagonal() const noexcept { return off_; }

  /// Number of eigenvalues strictly less than x (Sturm sequence count).
  std::size_t count_below(double x) const {
    std::size_t count = 0;
    double d = 1.0;
    const double tiny = std::numeric_limits<double>::min();
    for (std::size_t i = 0; i < n_; ++i) {
      const double e2 = i == 0 ? 0.0 : off_[i - 1] * off_[i - 1];
      d = diag_[i] - x - (i == 0 ? 0.0 : e2 / d);
      if (d == 0.0) d = -tiny;
      if (d < 0.0) ++count;
    }
    return count;
  }

  double largest_eigenvalue() const {
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (std::size_t i = 0; i < n_; ++i) {
      const double r = (i > 0 ? off_[i - 1] : 0.0) + (i + 1 < n_ ? off_[i] : 0.0);
      lo = std::min(lo, diag_[i] - r);
      hi = std::max(hi, diag_[i] + r);
    }
    const double scale = std::max(std::abs(lo), std::abs(hi));
    lo -= 1e-300;
    hi += std::numeric_limits<double>::epsilon() * scale + 1e-300;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (count_below(mid) == n_) hi = mid;
      else lo = mid;
    }
    return 0.5 * (lo + hi);
  }

  /// Unit eigenvector of the original matrix for the eigenvalue lambda, by
  /// inverse iteration on the tridiagonal form.
  CVector eigenvector(double lambda) const {
    const std::size_t n = n_;
    if (n == 1) return CVector{1.0};
    double scale = 0.0;
    for (double d : diag_) scale = std::max(scale, std::abs(d));
    for (double e : off_) scale = std::max(scale, e);
    const double shift = lambda + 4.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = 1.0 + 0.01 * static_cast<double>(i % 7);
    for (int it = 0; it < 3; ++it) {
      y = solve_shifted(shift, y);
      double s = 0.0;
      for (double x : y) s += x * x;
      s = std::sqrt(s);
      for (double& x : y) x /= s;
    }
    CVector z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = phase_[i] * y[i];
    for (std::size_t r = reflectors_.size(); r-- > 0;) {
      const CVector& v = reflectors_[r];
      if (v.empty()) continue;
      const std::size_t off = r + 1;
      cplx s = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * z[off + i];
      for (std::size_t i = 0; i < v.size(); ++i) z[off + i] -= 2.0 * v[i] * s;
    }
    const double zn = norm2(z);
    for (auto& x : z) x /= zn;
    return z;
  }

 private:
  // (T - shift I) x = b by Gaussian elimination with partial pivoting
  // (row interchanges fill one extra superdiagonal).
  std::vector<double> solve_shifted(double shift, std::vector<double> x) const {
    const std::size_t n = n_;
    std::vector<double> d(n), du(n, 0.0), du2(n, 0.0), dl(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i] = diag_[i] - shift;
    for (std::size_t i = 0; i + 1 < n; ++i) du[i] = dl[i] = off_[i];
    constexpr double tiny = 1e-300;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (d[i] == 0.0) d[i] = tiny;
        const double f = dl[i] / d[i];
        d[i + 1] -= f * du[i];
        x[i + 1] -= f * x[i];
      } else {
        const double f = d[i] / dl[i];
        d[i] = dl[i];
        const double t = du[i];
        du[i] = d[i + 1];
        d[i + 1] = t - f * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -f * du[i + 1];
        }
        const double xt = x[i];
        x[i] = x[i + 1];
        x[i + 1] = xt - f * x[i];
      }
    }
    if (d[n - 1] == 0.0) d[n - 1] = tiny;
    for (std::size_t i = n; i-- > 0;) {
      double s = x[i];
      if (i + 1 < n) s -= du[i] * x[i + 1];
      if (i + 2 < n) s -= du2[i] * x[i + 2];
      x[i] = s / d[i];
    }
    return x;
  }

  std::size_t n_;
  std::vector<double> diag_;
  std::vector<double> off_;
  CVector phase_;
  std::vector<CVector> reflectors_;
};

/// Largest eigenvalue of a Hermitian matrix via tridiagonalization and Sturm
/// bisection; the fast path used inside angular sweeps.
inline double largest_eigenvalue(const ComplexMatrix& m) {
  return HermitianTridiagonal(m).largest_eigenvalue();
}

struct TopEigenpair {
  double value;
  CVector vector;
};

inline TopEigenpair top_eigenpair(const ComplexMatrix& m) {
  const HermitianTridiagonal tri(m);
  const double lambda = tri.largest_eigenvalue();
  return {lambda, tri.eigenvector(lambda)};
}

/// Largest singular value, sqrt(lambda_max(M* M)).
inline double operator_norm(const ComplexMatrix& m) {
  const ComplexMatrix g = m.adjoint() * m;
  return std::sqrt(std::max(0.0, largest_eigenvalue(g)));
}

/// Solves A X = B by LU with partial pivoting.
inline ComplexMatrix solve(const ComplexMatrix& a_in, const ComplexMatrix& b_in) {
  const std::size_t n = a_in.size();
  ComplexMatrix a = a_in;
  ComplexMatrix b = b_in;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) == 0.0) throw Error(ErrorKind::DomainError, "singular matrix");
    if (piv != col)
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(b(piv, c), b(col, c));
      }
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = a(r, col) / a(col, col);
      if (f == cplx{}) continue;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      for (std::size_t c = 0; c < n; ++c) b(r, c) -= f * b(col, c);
    }
  }
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t r = n; r-- > 0;) {
      cplx s = b(r, col);
      for (std::size_t c = r + 1; c < n; ++c) s -= a(r, c) * b(c, col);
      b(r, col) = s / a(r, r);
    }
  return b;
}

// ---------------------------------------------------------------------------
// Polynomials

class Polynomial {
 public:
  /// Coefficients in ascending degree; exact trailing zeros are dropped.
  explicit Polynomial(std::vector<cplx> coefficients) : c_(std::move(coefficients)) {
    while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
    if (c_.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial must have a nonzero coefficient");
    for (const auto& v : c_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(ErrorKind::InvalidArgument, "polynomial coefficients must be finite");
  }

  static Polynomial from_roots(std::span<const cplx> roots, cplx leading = 1.0) {
    std::vector<cplx> c{leading};
    for (const auto& r : roots) {
      std::vector<cplx> next(c.size() + 1);
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i + 1] += c[i];
        next[i] -= r * c[i];
      }
      c = std::move(next);
    }
    return Polynomial(std::move(c));
  }

  std::size_t degree() const noexcept { return c_.size() - 1; }
  std::span<const cplx> coefficients() const noexcept { return c_; }
  cplx leading() const noexcept { return c_.back(); }
  cplx operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : cplx{}; }

  cplx operator()(cplx z) const {
    cplx s = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) s = s * z + c_[i];
    return s;
  }

  /// Value and first derivative by Horner.
  std::pair<cplx, cplx> value_and_derivative(cplx z) const {
    cplx p = 0.0, dp = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) {
      dp = dp * z + p;
      p = p * z + c_[i];
    }
    return {p, dp};
  }

  /// sum |c_i| |z|^i, the scale for a backward-error test at z.
  double magnitude_at(double r) const {
    double s = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) s = s * r + std::abs(c_[i]);
    return s;
  }

  /// z^deg conj(p(1/conj z)): the reversed conjugate polynomial.
  Polynomial reversed_conjugate() const {
    std::vector<cplx> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = std::conj(c_[c_.size() - 1 - i]);
    return Polynomial(std::move(r));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<cplx> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }

  Polynomial shifted(std::size_t k) const {  // z^k p(z)
    std::vector<cplx> out(k, cplx{});
    out.insert(out.end(), c_.begin(), c_.end());
    return Polynomial(std::move(out));
  }

 private:
  std::vector<cplx> c_;
};

/// All deg(p) roots with multiplicity, by Aberth-Ehrlich simultaneous
/// iteration. Exact zero low-order coefficients are split off as exact roots
/// at the origin.
inline std::vector<cplx> polynomial_roots(const Polynomial& p, double tol = 1e-12, int max_iter = 200) {
  if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "polynomial degree must be at least 1");
  const auto coeff = p.coefficients();
  std::size_t zeros = 0;
  while (coeff[zeros] == cplx{}) ++zeros;
  std::vector<cplx> roots(zeros, cplx{});
  if (zeros == p.degree()) return roots;

  const Polynomial q(std::vector<cplx>(coeff.begin() + static_cast<std::ptrdiff_t>(zeros), coeff.end()));
  const std::size_t n = q.degree();
  const auto qc = q.coefficients();
  if (n == 1) {
    roots.push_back(-qc[0] / qc[1]);
    return roots;
  }

  double cauchy = 0.0;
  for (std::size_t i = 0; i < n; ++i) cauchy = std::max(cauchy, std::abs(qc[i] / qc[n]));
  const double radius = 1.0 + cauchy;
  std::vector<cplx> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, ang);
  }
  std::vector<bool> done(n, false);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  bool converged = false;
  for (int it = 0; it < max_iter && !converged; ++it) {
    converged = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      const auto [val, der] = q.value_and_derivative(z[k]);
      const double backward = 4.0 * eps * q.magnitude_at(std::abs(z[k]));
      if (std::abs(val) <= backward) {
        done[k] = true;
        continue;
      }
      converged = false;
      cplx sum = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      const cplx ratio = val / der;
      cplx step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
      z[k] -= step;
      if (std::abs(step) <= tol * std::max(std::abs(z[k]), 1e-300) * 1e-3) done[k] = true;
    }
  }
  if (!converged) {
    for (std::size_t k = 0; k < n; ++k)
      if (!done[k]) throw Error(ErrorKind::NoConvergence, "Aberth iteration cap reached");
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

struct RootCluster {
  cplx center;
  std::size_t multiplicity;
};

/// Groups roots closer than tol (single linkage) and reports their mean.
inline std::vector<RootCluster> cluster_roots(std::span<const cplx> roots, double tol = 1e-6) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) <= tol) parent[find(i)] = find(j);
  std::vector<RootCluster> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = out.size();
      out.push_back({cplx{}, 0});
    }
    auto& c = out[slot[r]];
    c.center += roots[i];
    ++c.multiplicity;
  }
  for (auto& c : out) c.center /= static_cast<double>(c.multiplicity);
  return out;
}

// ---------------------------------------------------------------------------
// Seeded sampling

/// Normalized complex Gaussian vector; deterministic for a fixed seed.
/// Independent seed for instance `index` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

inline CVector random_unit_vector(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  CVector v(n);
  double s = 0.0;
  do {
    s = 0.0;
    for (auto& x : v) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      x = {re, im};
      s += std::norm(x);
    }
  } while (s == 0.0);
  s = std::sqrt(s);
  for (auto& x : v) x /= s;
  return v;
}

inline ComplexMatrix random_gaussian_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(r, c) = {re, im};
    }
  return m;
}

/// Unitary from modified Gram-Schmidt QR of a complex Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ComplexMatrix a = random_gaussian_matrix(n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      cplx proj = 0.0;
      for (std::size_t k = 0; k < n; ++k) proj += std::conj(a(k, i)) * a(k, j);
      for (std::size_t k = 0; k < n; ++k) a(k, j) -= proj * a(k, i);
    }
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += std::norm(a(k, j));
    s = std::sqrt(s);
    for (std::size_t k = 0; k < n; ++k) a(k, j) /= s;
  }
  return a;
}

}  // namespace truncshift
