// Acceptance criteria 1-11. One line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "truncshift/verify.hpp"

using namespace truncshift;
using verify::CheckResult;

namespace {

constexpr std::uint64_t seed = 42;

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;  // 0 when no runtime bound applies
  std::function<std::vector<CheckResult>()> run;
};

std::vector<CheckResult> one(CheckResult c) { return {std::move(c)}; }

std::vector<CheckResult> join(std::vector<CheckResult> a, std::vector<CheckResult> b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "nilpotent shift radius, n = 2..30", 5.0, [] { return one(verify::shift_radius(30)); }},
      {2, "J_n radius equals s_n, n = 2..15, alpha grid", 30.0, [] { return one(verify::j_radius_equals_s(15)); }},
      {3, "closed forms for J_2, J_3, J_n and degree-two single zero", 0.0,
       [] { return join(verify::closed_forms(), one(verify::shift_radius(30))); }},
      {4, "m_n <= w(S*(phi)) <= M_n, n = 2..10, 8 arguments", 60.0, [] { return verify::single_zero_sandwich(10, 8); }},
      {5, "w(Re S*(phi)) equals m_n", 0.0, [] { return one(verify::real_part_radius(10)); }},
      {6, "t_1 and lambda_1 enclosures, n <= 50", 0.0, [] { return one(verify::root_bounds(50)); }},
      {7, "rational coefficient bound, 100 instances, k <= 6", 0.0,
       [] { return join(one(verify::theorem21_random(100, seed, 6)), one(verify::theorem21_equality())); }},
      {8, "Egervary-Szasz and Fejer, n = 2..10", 0.0,
       [] { return join(one(verify::egervary_random(100, seed, 10)), one(verify::fejer_equality(10))); }},
      {9, "nilpotent contractions, n = 2..8", 0.0, [] { return verify::haagerup(100, seed, 8); }},
      {10, "oracle coherence, 200 matrices", 0.0, [] { return verify::oracle_coherence(200, seed); }},
      {11, "entry table equals quadrature, 50 products", 0.0, [] { return one(verify::model_matches_quadrature(50, seed)); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> checks;
    std::string error;
    try {
      checks = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = error.empty() && (c.budget_seconds == 0.0 || seconds < c.budget_seconds);
    for (const auto& k : checks) pass = pass && k.passed;
    if (!pass) ++failures;
    std::printf("%s  criterion %2d  %-58s %7.3fs", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), seconds);
    if (c.budget_seconds > 0.0) std::printf(" (limit %.0fs)", c.budget_seconds);
    std::printf("\n");
    for (const auto& k : checks)
      std::printf("      %-4s %-34s max deviation %.3e  tolerance %.1e\n", k.passed ? "ok" : "FAIL", k.name.c_str(),
                  k.max_deviation, k.tolerance);
    if (!error.empty()) std::printf("      error: %s\n", error.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
