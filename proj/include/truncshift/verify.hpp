#pragma once

// Named invariant checks over the whole library. Each check reports the
// largest deviation it saw and the tolerance it was held to.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "truncshift/blaschke.hpp"
#include "truncshift/coeffbounds.hpp"
#include "truncshift/core_linalg.hpp"
#include "truncshift/error.hpp"
#include "truncshift/kms.hpp"
#include "truncshift/numrange.hpp"

namespace truncshift::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

namespace detail {

constexpr double pi = std::numbers::pi;

inline CheckResult result(std::string name, double deviation, double tol) {
  return {std::move(name), deviation <= tol, deviation, tol};
}

inline std::vector<double> alpha_grid() {
  std::vector<double> a;
  for (int i = 1; i <= 19; ++i) a.push_back(0.05 * i);
  return a;
}

inline std::vector<double> modulus_grid() {
  std::vector<double> a;
  for (int i = 1; i <= 9; ++i) a.push_back(0.1 * i);
  return a;
}

inline ComplexMatrix adjoint_shift(std::size_t n) {
  ComplexMatrix s(n);
  for (std::size_t i = 0; i + 1 < n; ++i) s(i, i + 1) = 1.0;
  return s;
}

inline double radius(const ComplexMatrix& t) { return numrange::numerical_radius(t).radius; }

inline ComplexMatrix single_zero_model(cplx a, std::size_t n) {
  return blaschke::model_matrix(blaschke::single_zero_product(a, n)).matrix;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// numerical range

inline CheckResult shift_radius(std::size_t nmax = 30) {
  double dev = 0.0;
  for (std::size_t n = 2; n <= nmax; ++n)
    dev = std::max(dev, std::abs(detail::radius(detail::adjoint_shift(n)) - std::cos(detail::pi / static_cast<double>(n + 1))));
  return detail::result("shift_radius", dev, 1e-8);
}

inline CheckResult shift_power_radius(std::size_t nmax = 12) {
  double dev = 0.0;
  for (std::size_t n = 2; n <= nmax; ++n) {
    const ComplexMatrix s = detail::adjoint_shift(n);
    for (std::size_t k = 1; k < n; ++k)
      dev = std::max(dev, std::abs(detail::radius(matrix_power(s, static_cast<unsigned>(k))) - coeff::egervary_bound(n, k)));
  }
  return detail::result("shift_power_radius", dev, 1e-8);
}

/// Oracle never exceeds the sweep, and lands within 1e-4 of it on at least
/// 95% of instances.
inline std::vector<CheckResult> oracle_coherence(int count, std::uint64_t seed) {
  double above = 0.0;
  int close = 0;
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const ComplexMatrix t = random_gaussian_matrix(1 + static_cast<std::size_t>(i) % 8, rng);
    const double r = detail::radius(t);
    const double o = numrange::radius_lower_oracle(t, 16, 50, rng());
    above = std::max(above, o - r);
    if (r - o <= 1e-4) ++close;
  }
  const double miss = count > 0 ? 1.0 - static_cast<double>(close) / count : 0.0;
  return {detail::result("oracle_below_sweep", std::max(above, 0.0), 1e-9),
          detail::result("oracle_close_fraction_missed", miss, 0.05)};
}

inline std::vector<CheckResult> radius_bounds(int count, std::uint64_t seed) {
  double norm = 0.0, trace = 0.0, real = 0.0, boundary = 0.0;
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const std::size_t n = 1 + static_cast<std::size_t>(i) % 8;
    const ComplexMatrix t = random_gaussian_matrix(n, rng);
    const auto r = numrange::numerical_radius(t);
    norm = std::max(norm, r.radius - operator_norm(t));
    trace = std::max(trace, std::abs(t.trace()) / static_cast<double>(n) - r.radius);
    real = std::max(real, detail::radius(numrange::real_part(t)) - r.radius);
    for (auto z : r.boundary) boundary = std::max(boundary, std::abs(z) - r.radius);
  }
  return {detail::result("radius_below_norm", std::max(norm, 0.0), 1e-10),
          detail::result("radius_above_mean_eigenvalue", std::max(trace, 0.0), 1e-12),
          detail::result("real_part_radius_smaller", std::max(real, 0.0), 1e-10),
          detail::result("boundary_inside_radius", std::max(boundary, 0.0), 1e-10)};
}

inline CheckResult unitary_invariance(int count, std::uint64_t seed) {
  double dev = 0.0;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
    std::mt19937_64 rng(s);
    const std::size_t n = 2 + static_cast<std::size_t>(i) % 7;
    const ComplexMatrix t = random_gaussian_matrix(n, rng);
    const ComplexMatrix u = random_unitary(n, rng());
    dev = std::max(dev, std::abs(detail::radius(u.adjoint() * t * u) - detail::radius(t)));
  }
  return detail::result("unitary_invariance", dev, 1e-9);
}

inline CheckResult hermitian_radius(int count, std::uint64_t seed) {
  double dev = 0.0;
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const ComplexMatrix h = numrange::real_part(random_gaussian_matrix(1 + static_cast<std::size_t>(i) % 8, rng));
    const auto ev = hermitian_eigenvalues(h);
    const double rho = std::max(std::abs(ev.front()), std::abs(ev.back()));
    dev = std::max(dev, std::abs(detail::radius(h) - rho));
  }
  return detail::result("hermitian_radius_is_spectral_radius", dev, 1e-10);
}

/// m_n(|a|) <= w(S*(phi)) <= M_n(|a|), and the radius does not depend on arg a.
inline std::vector<CheckResult> single_zero_sandwich(std::size_t nmax = 10, int args = 8) {
  double below = 0.0, above = 0.0, spread = 0.0;
  for (std::size_t n = 2; n <= nmax; ++n)
    for (double mod : detail::modulus_grid()) {
      const auto b = kms::bound_quantities({n, mod});
      double lo = 1e300, hi = -1e300;
      for (int k = 0; k < args; ++k) {
        const double r = detail::radius(detail::single_zero_model(std::polar(mod, 2.0 * detail::pi * k / args), n));
        below = std::max(below, b.m - r);
        above = std::max(above, r - b.M);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      spread = std::max(spread, hi - lo);
    }
  return {detail::result("sandwich_lower", std::max(below, 0.0), 1e-8),
          detail::result("sandwich_upper", std::max(above, 0.0), 1e-8),
          detail::result("argument_independence", spread, 1e-8)};
}

/// w(Re S*(phi)) = m_n(a) for real a.
inline CheckResult real_part_radius(std::size_t nmax = 10) {
  double dev = 0.0;
  for (std::size_t n = 2; n <= nmax; ++n)
    for (double a : detail::modulus_grid()) {
      const double r = detail::radius(numrange::real_part(detail::single_zero_model(a, n)));
      dev = std::max(dev, std::abs(r - kms::bound_quantities({n, a}).m));
    }
  return detail::result("real_part_radius_is_m", dev, 1e-8);
}

inline CheckResult range_symmetry(std::size_t nmax = 8) {
  double dev = 0.0;
  const int g = 128;
  for (std::size_t n = 2; n <= nmax; ++n)
    for (double a : detail::modulus_grid()) {
      const auto b = numrange::range_boundary(detail::single_zero_model(a, n), g);
      for (int i = 1; i < g; ++i) dev = std::max(dev, std::abs(b.boundary[i] - std::conj(b.boundary[g - i])));
    }
  return detail::result("real_zero_range_symmetric", dev, 1e-8);
}

// ---------------------------------------------------------------------------
// KMS

/// w(J_n(a)) = s_n(a) on the alpha grid.
inline CheckResult j_radius_equals_s(std::size_t nmax = 15) {
  double dev = 0.0;
  for (std::size_t n = 2; n <= nmax; ++n)
    for (double a : detail::alpha_grid()) {
      const kms::KmsParams p{n, a};
      dev = std::max(dev, std::abs(detail::radius(kms::j_matrix(p)) - kms::bound_quantities(p).s));
    }
  return detail::result("j_radius_equals_s", dev, 1e-8);
}

inline std::vector<CheckResult> closed_forms() {
  double j2 = 0.0, j3 = 0.0, two = 0.0;
  for (double a : detail::alpha_grid()) {
    j2 = std::max(j2, std::abs(detail::radius(kms::j_matrix({2, a})) - a / 2.0));
    j3 = std::max(j3, std::abs(detail::radius(kms::j_matrix({3, a})) - *kms::j_radius_closed_form({3, a})));
    two = std::max(two, std::abs(detail::radius(detail::single_zero_model(a, 2)) - (1.0 + 2.0 * a - a * a) / 2.0));
  }
  double jn = 0.0;
  for (std::size_t n = 4; n <= 15; ++n)
    for (double a : detail::alpha_grid())
      if (const auto c = kms::j_radius_closed_form({n, a})) jn = std::max(jn, std::abs(detail::radius(kms::j_matrix({n, a})) - *c));
  return {detail::result("j2_radius_half_alpha", j2, 1e-8), detail::result("j3_radius_closed_form", j3, 1e-8),
          detail::result("jn_radius_small_alpha", jn, 1e-8), detail::result("degree_two_single_zero_radius", two, 1e-8)};
}

/// Violations of t_1 in [(2/(n+1)) arccos a, arccos a] and lambda_1 in [1, upper].
inline CheckResult root_bounds(std::size_t nmax = 50) {
  double dev = 0.0;
  for (std::size_t n = 2; n <= nmax; ++n)
    for (double a : detail::alpha_grid()) {
      const kms::KmsParams p{n, a};
      const auto sp = kms::kms_eigenvalues(p);
      const auto ti = kms::t1_bounds(p);
      const auto li = kms::lambda1_bounds(p);
      dev = std::max({dev, ti.lower - sp.t[0], sp.t[0] - ti.upper, li.lower - sp.lambda[0], sp.lambda[0] - li.upper});
    }
  return detail::result("t1_lambda1_bounds", std::max(dev, 0.0), 1e-12);
}

inline CheckResult root_interlacing(std::size_t nmax = 50) {
  double dev = 0.0;
  for (std::size_t n = 1; n <= nmax; ++n)
    for (double a : detail::alpha_grid()) {
      const kms::KmsParams p{n, a};
      const auto sp = kms::kms_roots(p);
      for (std::size_t k = 1; k <= n; ++k)
        dev = std::max({dev, p.node(k - 1) - sp.t[k - 1], sp.t[k - 1] - p.node(k)});
    }
  return detail::result("roots_between_nodes", std::max(dev, 0.0), 1e-12);
}

inline CheckResult eigenvalues_match_matrix(int count, std::uint64_t seed) {
  double dev = 0.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> alpha(0.0, 0.98);
  for (int i = 0; i < count; ++i) {
    const kms::KmsParams p{1 + static_cast<std::size_t>(i) % 30, alpha(rng)};
    const auto sp = kms::kms_eigenvalues(p);
    const auto ev = hermitian_eigenvalues(kms::kms_matrix(p));
    for (std::size_t k = 0; k < p.n; ++k) dev = std::max(dev, std::abs(sp.lambda[k] - ev[k]) / std::max(1.0, ev[0]));
  }
  return detail::result("eigenvalues_match_matrix", dev, 1e-10);
}

inline CheckResult characteristic_forms_agree(int count, std::uint64_t seed) {
  double dev = 0.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> alpha(0.0, 0.99), t(1e-3, detail::pi - 1e-3);
  for (int i = 0; i < count; ++i) {
    const kms::KmsParams p{1 + static_cast<std::size_t>(i) % 40, alpha(rng)};
    const double x = t(rng);
    const double a = kms::p_n_ratio_form(p, x), b = kms::p_n(p, x);
    dev = std::max(dev, std::abs(a - b) / std::max(1.0, std::abs(a)));
  }
  return detail::result("characteristic_forms_agree", dev, 1e-10);
}

inline CheckResult bound_order(std::size_t nmax = 30) {
  double dev = 0.0;
  for (std::size_t n = 2; n <= nmax; ++n)
    for (double a : detail::alpha_grid()) {
      const auto b = kms::bound_quantities({n, a});
      dev = std::max({dev, -b.s, b.m - b.M});
    }
  return detail::result("bounds_ordered", std::max(dev, 0.0), 1e-12);
}

// ---------------------------------------------------------------------------
// Blaschke products

inline CheckResult model_matches_quadrature(int count, std::uint64_t seed) {
  double dev = 0.0;
  for (int i = 0; i < count; ++i) {
    const auto phi = blaschke::random_product(1 + static_cast<std::size_t>(i) % 8, 0.9, derive_seed(seed, static_cast<std::uint64_t>(i)));
    dev = std::max(dev, max_abs_diff(blaschke::model_matrix(phi).matrix, blaschke::model_matrix_by_quadrature(phi, 4096)));
  }
  return detail::result("model_matches_quadrature", dev, 1e-8);
}

inline std::vector<CheckResult> model_structure(int count, std::uint64_t seed) {
  double gram = 0.0, ann = 0.0, norm = 0.0, tri = 0.0;
  for (int i = 0; i < count; ++i) {
    const auto phi = blaschke::random_product(1 + static_cast<std::size_t>(i) % 8, 0.9, derive_seed(seed, static_cast<std::uint64_t>(i)));
    const auto m = blaschke::model_matrix(phi).matrix;
    gram = std::max(gram, max_abs_diff(blaschke::gram_matrix_by_quadrature(phi, 4096), ComplexMatrix::identity(phi.degree())));
    ann = std::max(ann, blaschke::evaluate_at_matrix(phi, m.adjoint()).max_abs());
    norm = std::max(norm, operator_norm(m) - 1.0);
    for (std::size_t r = 0; r < m.size(); ++r) {
      tri = std::max(tri, std::abs(m(r, r) - std::conj(phi.zeros()[r])));
      for (std::size_t c = 0; c < r; ++c) tri = std::max(tri, std::abs(m(r, c)));
    }
  }
  return {detail::result("basis_orthonormal", gram, 1e-8), detail::result("minimal_function_annihilates", ann, 1e-8),
          detail::result("model_is_contraction", std::max(norm, 0.0), 1e-10),
          detail::result("model_upper_triangular", tri, 0.0)};
}

inline CheckResult rotation_invariance(std::size_t nmax = 6) {
  double dev = 0.0;
  for (std::size_t n = 1; n <= nmax; ++n)
    for (double mod : {0.0, 0.3, 0.6, 0.9}) dev = std::max(dev, numrange::rotation_invariance_check(mod, n, 8));
  return detail::result("rotation_invariance", dev, 1e-8);
}

// ---------------------------------------------------------------------------
// coefficient inequalities

/// |c_k| <= c_0 w(S*^k(phi_var)) on random positive rational functions.
inline CheckResult theorem21_random(int count, std::uint64_t seed, int kmax = 6) {
  double dev = 0.0;
  for (int i = 0; i < count; ++i) {
    const auto f = coeff::random_positive_rational(static_cast<std::size_t>(i) % 5, static_cast<std::size_t>(i / 5) % 5,
                                                   derive_seed(seed, static_cast<std::uint64_t>(i)));
    const auto data = coeff::factorize(f);
    const auto c = coeff::taylor_coefficients(f, kmax);
    for (int k = 1; k <= kmax; ++k) {
      const auto b = coeff::theorem21_check(data, k, c);
      dev = std::max(dev, b.lhs - b.rhs);
    }
  }
  return detail::result("rational_coefficient_bound", std::max(dev, 0.0), 1e-9);
}

inline CheckResult theorem21_equality() {
  const coeff::RationalTorusFunction poisson(Polynomial({0.0, 0.75}), Polynomial({-0.5, 1.25, -0.5}));
  const coeff::RationalTorusFunction cosine(Polynomial({1.0, 2.0, 1.0}), Polynomial({0.0, 1.0}));
  const auto a = coeff::theorem21_check(poisson, 1);
  const auto b = coeff::theorem21_check(cosine, 1);
  return detail::result("rational_bound_equality_cases", std::max(std::abs(a.lhs - a.rhs), std::abs(b.lhs - b.rhs)), 1e-9);
}

/// |c_k| <= c_0 cos(pi / (floor((n-1)/k) + 2)) on random positive trig polynomials.
inline CheckResult egervary_random(int per_n, std::uint64_t seed, std::size_t nmax = 10) {
  double dev = 0.0;
  for (std::size_t n = 2; n <= nmax; ++n)
    for (int i = 0; i < per_n; ++i) {
      const auto t = coeff::random_positive_trig(n, derive_seed(seed, n * 100003 + static_cast<std::size_t>(i)));
      for (std::size_t k = 1; k < n; ++k)
        dev = std::max(dev, std::abs(t.coefficient(static_cast<int>(k))) - t.coefficient(0).real() * coeff::egervary_bound(n, k));
    }
  return detail::result("trig_coefficient_bound", std::max(dev, 0.0), 1e-9);
}

inline CheckResult fejer_equality(std::size_t nmax = 10) {
  double dev = 0.0;
  for (std::size_t n = 2; n <= nmax; ++n) {
    const auto f = coeff::fejer_extremal(n);
    dev = std::max(dev, std::abs(std::abs(f.coefficient(1)) / f.coefficient(0).real() - std::cos(detail::pi / static_cast<double>(n + 1))));
    for (int i = 0; i < 4096; ++i) dev = std::max(dev, -f(2.0 * detail::pi * i / 4096.0));
  }
  return detail::result("fejer_extremal_equality", dev, 1e-9);
}

/// The trig-polynomial bound via the rational route: embedding into P / z^{n-1}.
inline CheckResult egervary_via_rational(int count, std::uint64_t seed) {
  double dev = 0.0;
  for (int i = 0; i < count; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i) % 6;
    const auto t = coeff::random_positive_trig(n, derive_seed(seed, static_cast<std::uint64_t>(i)));
    const auto f = t.to_rational();
    const auto data = coeff::factorize(f);
    const auto c = coeff::taylor_coefficients(f, static_cast<int>(n) - 1);
    for (std::size_t k = 1; k < n; ++k) {
      const auto b = coeff::theorem21_check(data, static_cast<int>(k), c);
      dev = std::max({dev, std::abs(b.rhs - t.coefficient(0).real() * coeff::egervary_bound(n, k)), b.lhs - b.rhs});
    }
  }
  return detail::result("trig_bound_via_rational", dev, 1e-8);
}

inline CheckResult coefficient_symmetry(int count, std::uint64_t seed) {
  double dev = 0.0;
  for (int i = 0; i < count; ++i) {
    const auto f = coeff::random_positive_rational(static_cast<std::size_t>(i) % 5, static_cast<std::size_t>(i / 5) % 5,
                                                   derive_seed(seed, static_cast<std::uint64_t>(i)));
    const auto c = coeff::fourier_coefficients(f, -6, 6);
    for (int k = 1; k <= 6; ++k) dev = std::max(dev, std::abs(c[6 - k] - std::conj(c[6 + k])));
  }
  return detail::result("coefficient_conjugate_symmetry", dev, 1e-10);
}

inline std::vector<CheckResult> haagerup(int per_n, std::uint64_t seed, std::size_t nmax = 8) {
  double ratio = 0.0, equality = 0.0;
  for (std::size_t n = 2; n <= nmax; ++n) {
    ratio = std::max(ratio, coeff::haagerup_check(n, per_n, derive_seed(seed, n)) - 1.0);
    equality = std::max(equality, std::abs(coeff::haagerup_ratio(detail::adjoint_shift(n).transpose()) - 1.0));
  }
  return {detail::result("nilpotent_radius_bound", std::max(ratio, 0.0), 1e-9),
          detail::result("nilpotent_bound_equality", equality, 1e-9)};
}

// ---------------------------------------------------------------------------
// suites

inline void append(std::vector<CheckResult>& out, std::vector<CheckResult> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

inline SuiteReport kms_suite(std::uint64_t seed, int trials) {
  SuiteReport r{"kms", {}};
  r.checks.push_back(characteristic_forms_agree(10 * trials, seed));
  r.checks.push_back(eigenvalues_match_matrix(trials, seed + 1));
  r.checks.push_back(root_interlacing());
  r.checks.push_back(root_bounds());
  r.checks.push_back(bound_order());
  r.checks.push_back(j_radius_equals_s());
  append(r.checks, closed_forms());
  return r;
}

inline SuiteReport blaschke_suite(std::uint64_t seed, int trials) {
  SuiteReport r{"blaschke", {}};
  r.checks.push_back(model_matches_quadrature(trials, seed));
  append(r.checks, model_structure(trials, seed + 1));
  r.checks.push_back(rotation_invariance());
  return r;
}

inline SuiteReport numrange_suite(std::uint64_t seed, int trials) {
  SuiteReport r{"numrange", {}};
  r.checks.push_back(shift_radius());
  r.checks.push_back(shift_power_radius());
  append(r.checks, oracle_coherence(2 * trials, seed));
  append(r.checks, radius_bounds(2 * trials, seed + 1));
  r.checks.push_back(unitary_invariance(trials, seed + 2));
  r.checks.push_back(hermitian_radius(trials, seed + 3));
  append(r.checks, single_zero_sandwich());
  r.checks.push_back(real_part_radius());
  r.checks.push_back(range_symmetry());
  return r;
}

inline SuiteReport coeff_suite(std::uint64_t seed, int trials) {
  SuiteReport r{"coeff", {}};
  r.checks.push_back(theorem21_random(trials, seed));
  r.checks.push_back(theorem21_equality());
  r.checks.push_back(egervary_random(trials, seed + 1));
  r.checks.push_back(fejer_equality());
  r.checks.push_back(egervary_via_rational(trials, seed + 2));
  r.checks.push_back(coefficient_symmetry(trials, seed + 3));
  append(r.checks, haagerup(trials, seed + 4));
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"kms", "blaschke", "numrange", "coeff"};
  return names;
}

/// One report per suite; "all" runs every suite in order.
inline std::vector<SuiteReport> run_suite(const std::string& name, std::uint64_t seed, int trials) {
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  std::vector<SuiteReport> out;
  if (name == "kms" || name == "all") out.push_back(kms_suite(seed, trials));
  if (name == "blaschke" || name == "all") out.push_back(blaschke_suite(seed, trials));
  if (name == "numrange" || name == "all") out.push_back(numrange_suite(seed, trials));
  if (name == "coeff" || name == "all") out.push_back(coeff_suite(seed, trials));
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "unknown suite: " + name);
  return out;
}

}  // namespace truncshift::verify
