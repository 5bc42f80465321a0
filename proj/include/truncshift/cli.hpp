#pragma once

// Command-line driver. Kept in a header so tests can call run() with string
// streams instead of spawning the binary.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "truncshift/blaschke.hpp"
#include "truncshift/coeffbounds.hpp"
#include "truncshift/core_linalg.hpp"
#include "truncshift/error.hpp"
#include "truncshift/kms.hpp"
#include "truncshift/numrange.hpp"
#include "truncshift/verify.hpp"

namespace truncshift::cli {

using json = nlohmann::ordered_json;

inline constexpr int format_version = 1;

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2 };

struct OutputRecord {
  std::string command;
  json params = json::object();
  json results = json::object();
  int version = format_version;

  json to_json() const {
    return json{{"command", command}, {"format_version", version}, {"params", params}, {"results", results}};
  }

  static OutputRecord from_json(const json& j) {
    return {j.at("command").get<std::string>(), j.at("params"), j.at("results"), j.at("format_version").get<int>()};
  }
};

// ---------------------------------------------------------------------------
// parsing

/// Shortest decimal string that reads back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline double parse_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v))
    throw Error(ErrorKind::InvalidArgument, "not a number: '" + std::string(s) + "'");
  return v;
}

/// a, bi, a+bi, a-bi; "i" alone means 1i.
inline cplx parse_complex(std::string_view s) {
  if (s.empty()) throw Error(ErrorKind::InvalidArgument, "empty complex literal");
  if (s.back() != 'i') return parse_real(s);
  s.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = s.size(); i-- > 1;)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  const std::string_view re = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
  const std::string_view im = split == std::string_view::npos ? s : s.substr(split);
  double imag = 0.0;
  if (im.empty() || im == "+") imag = 1.0;
  else if (im == "-") imag = -1.0;
  else imag = parse_real(im);
  return {re.empty() ? 0.0 : parse_real(re), imag};
}

inline std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    parts.push_back(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

inline std::vector<cplx> parse_complex_list(std::string_view s) {
  std::vector<cplx> out;
  for (auto part : split_commas(s)) out.push_back(parse_complex(part));
  return out;
}

/// single:A,N or zeros:z1,z2,...
inline blaschke::BlaschkeProduct parse_phi(std::string_view spec) {
  if (spec.starts_with("single:")) {
    const auto parts = split_commas(spec.substr(7));
    if (parts.size() != 2) throw Error(ErrorKind::InvalidArgument, "expected single:A,N");
    const double n = parse_real(parts[1]);
    if (n < 1.0 || n != std::floor(n) || n > 4096.0) throw Error(ErrorKind::InvalidArgument, "degree must be a positive integer");
    return blaschke::single_zero_product(parse_complex(parts[0]), static_cast<std::size_t>(n));
  }
  if (spec.starts_with("zeros:")) return blaschke::BlaschkeProduct(parse_complex_list(spec.substr(6)));
  throw Error(ErrorKind::InvalidArgument, "expected --phi single:A,N or zeros:a+bi,...");
}

// ---------------------------------------------------------------------------
// output

inline json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json complex_list_json(std::span<const cplx> zs) {
  json a = json::array();
  for (auto z : zs) a.push_back(complex_json(z));
  return a;
}

namespace detail {

inline void write_value(std::ostream& out, const json& v) {
  if (v.is_number_float()) out << format_double(v.get<double>());
  else if (v.is_array()) {
    out << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out << ", ";
      write_value(out, v[i]);
    }
    out << ']';
  } else if (v.is_string()) out << v.get<std::string>();
  else out << v.dump();
}

}  // namespace detail

/// Plain "key = value" lines; arrays of records print one line per record.
inline void write_text(std::ostream& out, const OutputRecord& rec) {
  out << rec.command;
  for (const auto& [k, v] : rec.params.items()) {
    out << ' ' << k << '=';
    detail::write_value(out, v);
  }
  out << '\n';
  for (const auto& [k, v] : rec.results.items()) {
    if (v.is_array() && !v.empty() && v.front().is_object()) {
      for (const auto& row : v) {
        for (const auto& [rk, rv] : row.items()) {
          out << "  " << rk << '=';
          detail::write_value(out, rv);
        }
        out << '\n';
      }
      continue;
    }
    out << k << " = ";
    detail::write_value(out, v);
    out << '\n';
  }
}

inline void emit(std::ostream& out, const OutputRecord& rec, bool as_json) {
  if (as_json) out << rec.to_json().dump(2) << '\n';
  else write_text(out, rec);
}

// ---------------------------------------------------------------------------
// commands

inline OutputRecord kms_command(std::size_t n, double alpha) {
  const kms::KmsParams p{n, alpha};
  OutputRecord rec{"kms", {{"n", n}, {"alpha", alpha}}, json::object()};
  const auto sp = kms::kms_eigenvalues(p);
  rec.results["t"] = sp.t;
  rec.results["lambda"] = sp.lambda;
  rec.results["lambda_prime"] = sp.lambda_prime;
  if (n >= 2) {
    const auto b = kms::bound_quantities(p);
    rec.results["s"] = b.s;
    rec.results["m"] = b.m;
    rec.results["M"] = b.M;
    const auto ti = kms::t1_bounds(p);
    const auto li = kms::lambda1_bounds(p);
    rec.results["t1_interval"] = json::array({ti.lower, ti.upper});
    rec.results["lambda1_interval"] = json::array({li.lower, li.upper});
    if (const auto c = kms::j_radius_closed_form(p)) rec.results["j_radius_closed_form"] = *c;
  }
  return rec;
}

inline OutputRecord radius_command(const std::string& phi_spec, unsigned power, int angles) {
  const auto phi = parse_phi(phi_spec);
  const auto m = matrix_power(blaschke::model_matrix(phi).matrix, power);
  const auto r = numrange::numerical_radius(m, angles);
  OutputRecord rec{"radius", {{"phi", phi_spec}, {"power", power}, {"angles", angles}}, json::object()};
  rec.results["degree"] = phi.degree();
  rec.results["radius"] = r.radius;
  rec.results["theta_star"] = r.theta_star;
  rec.results["maximizer"] = complex_json(r.maximizer);
  return rec;
}

inline void write_boundary_csv(std::ostream& out, const numrange::NumericalRangeResult& r) {
  out << "theta,re,im\n";
  for (std::size_t i = 0; i < r.theta.size(); ++i)
    out << format_double(r.theta[i]) << ',' << format_double(r.boundary[i].real()) << ','
        << format_double(r.boundary[i].imag()) << '\n';
}

inline OutputRecord range_command(const std::string& phi_spec, unsigned power, int angles, const std::string& path) {
  const auto phi = parse_phi(phi_spec);
  const auto m = matrix_power(blaschke::model_matrix(phi).matrix, power);
  const auto r = numrange::range_boundary(m, angles);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  write_boundary_csv(file, r);
  if (!file) throw Error(ErrorKind::InvalidArgument, "failed writing " + path);
  OutputRecord rec{"range", {{"phi", phi_spec}, {"power", power}, {"angles", angles}, {"out", path}}, json::object()};
  rec.results["points"] = r.boundary.size();
  rec.results["max_modulus"] = r.radius;
  return rec;
}

inline OutputRecord coeff_command(const std::string& num, const std::string& den, int kmax) {
  const coeff::RationalTorusFunction f(Polynomial(parse_complex_list(num)), Polynomial(parse_complex_list(den)));
  const auto data = coeff::factorize(f);
  const auto c = coeff::taylor_coefficients(f, kmax);
  OutputRecord rec{"coeff", {{"num", num}, {"den", den}, {"kmax", kmax}}, json::object()};
  rec.results["c"] = complex_list_json(c);
  rec.results["m"] = data.m;
  rec.results["d"] = data.d;
  rec.results["r"] = data.r;
  rec.results["phi_var_zeros"] = complex_list_json(data.phi_var.zeros());
  json bounds = json::array();
  for (int k = 1; k <= kmax; ++k) {
    const auto b = coeff::theorem21_check(data, k, c);
    bounds.push_back(json{{"k", k}, {"abs_c_k", b.lhs}, {"bound", b.rhs + 0.0}, {"holds", b.holds}});
  }
  rec.results["bounds"] = std::move(bounds);
  return rec;
}

inline OutputRecord verify_command(const std::string& suite, std::uint64_t seed, int trials, bool& all_passed) {
  OutputRecord rec{"verify", {{"suite", suite}, {"seed", seed}, {"trials", trials}}, json::object()};
  json checks = json::array();
  all_passed = true;
  for (const auto& report : verify::run_suite(suite, seed, trials))
    for (const auto& c : report.checks) {
      checks.push_back(json{{"suite", report.suite},
                            {"check", c.name},
                            {"status", c.passed ? "PASS" : "FAIL"},
                            {"max_deviation", c.max_deviation},
                            {"tolerance", c.tolerance}});
      all_passed = all_passed && c.passed;
    }
  rec.results["checks"] = std::move(checks);
  rec.results["passed"] = all_passed;
  return rec;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical radii of truncated shifts, KMS spectra and coefficient bounds", "truncshift"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "JSON output");

  std::size_t n = 0;
  double alpha = 0.0;
  auto* kms_cmd = app.add_subcommand("kms", "KMS roots, eigenvalues and bound quantities");
  kms_cmd->add_option("--n", n, "matrix dimension")->required()->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  kms_cmd->add_option("--alpha", alpha, "parameter in [0, 1)")->required();
  kms_cmd->add_flag("--json", as_json, "JSON output");

  std::string phi;
  unsigned power = 1;
  int angles = 256;
  auto* radius_cmd = app.add_subcommand("radius", "numerical radius of S*(phi)^K");
  radius_cmd->add_option("--phi", phi, "single:A,N or zeros:a+bi,...")->required();
  radius_cmd->add_option("--power", power, "power K")->check(CLI::Range(0u, 4096u));
  radius_cmd->add_option("--angles", angles, "theta grid size")->check(CLI::Range(8, 1 << 20));
  radius_cmd->add_flag("--json", as_json, "JSON output");

  std::string path;
  auto* range_cmd = app.add_subcommand("range", "boundary of the numerical range as CSV");
  range_cmd->add_option("--phi", phi, "single:A,N or zeros:a+bi,...")->required();
  range_cmd->add_option("--power", power, "power K")->check(CLI::Range(0u, 4096u));
  range_cmd->add_option("--angles", angles, "theta grid size")->check(CLI::Range(8, 1 << 20));
  range_cmd->add_option("--out", path, "CSV file")->required();
  range_cmd->add_flag("--json", as_json, "JSON output");

  std::string num, den;
  int kmax = 1;
  auto* coeff_cmd = app.add_subcommand("coeff", "Taylor coefficients of P/Q and their bounds");
  coeff_cmd->add_option("--num", num, "coefficients of P, ascending")->required();
  coeff_cmd->add_option("--den", den, "coefficients of Q, ascending")->required();
  coeff_cmd->add_option("--kmax", kmax, "largest order")->check(CLI::Range(0, 4096));
  coeff_cmd->add_flag("--json", as_json, "JSON output");

  std::string suite = "all";
  std::uint64_t seed = 42;
  int trials = 100;
  auto* verify_cmd = app.add_subcommand("verify", "run named invariant suites");
  verify_cmd->add_option("--suite", suite, "kms|blaschke|numrange|coeff|all")
      ->check(CLI::IsMember({"kms", "blaschke", "numrange", "coeff", "all"}));
  verify_cmd->add_option("--seed", seed, "random seed");
  verify_cmd->add_option("--trials", trials, "instances per randomized check")->check(CLI::Range(1, 1000000));
  verify_cmd->add_flag("--json", as_json, "JSON output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }

  OutputRecord rec;
  bool passed = true;
  try {
    if (*kms_cmd) rec = kms_command(n, alpha);
    else if (*radius_cmd) rec = radius_command(phi, power, angles);
    else if (*range_cmd) rec = range_command(phi, power, angles, path);
    else if (*coeff_cmd) rec = coeff_command(num, den, kmax);
    else rec = verify_command(suite, seed, trials, passed);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    const bool bad_input = e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::InvalidZero;
    return bad_input ? usage_error : verification_failed;
  }
  emit(out, rec, as_json);
  return passed ? ok : verification_failed;
}

}  // namespace truncshift::cli
