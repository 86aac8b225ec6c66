#pragma once

/**
 * @file report_io.hpp
 * @brief Instance files in, reports and solution lists out. Everything
 * numeric is printed with 30 significant digits so outputs diff cleanly.
 */

#include <gmpxx.h>

#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bound_engine.hpp"
#include "errors.hpp"
#include "height.hpp"
#include "instance.hpp"
#include "recurrence.hpp"
#include "search.hpp"

namespace effbound {

using Json = nlohmann::ordered_json;

inline constexpr int kDigits = 30;

struct InstanceFile {
  Instance instance;
  std::optional<std::string> c2_override;
  std::optional<Precision> precision;
  std::optional<std::size_t> cap;
};

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) { fail(ErrorKind::InvalidInstance, what); }

/// Integers may be JSON numbers or decimal strings (for values past 64 bits).
inline mpz_class json_integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? mpz_class(j.get<unsigned long>()) : mpz_class(j.get<long>());
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) == 0) return z;
  }
  parse_fail(where + ": expected an integer, got " + j.dump());
}

inline std::vector<mpz_class> json_integer_list(const Json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where + ": expected a list");
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(json_integer(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline const Json& json_key(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) parse_fail(std::string("missing key \"") + key + "\"");
  return *it;
}

inline std::string width_string(const Interval& x) { return Interval::format(x.width().upper(), kDigits, MPFR_RNDU); }

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline std::string complex_string(const ComplexInterval& z) {
  if (z.is_real()) return z.re().to_string(kDigits);
  const std::string im = z.im().to_string(kDigits);
  return z.re().to_string(kDigits) + (im.front() == '-' ? " - " + im.substr(1) : " + " + im) + "i";
}

}  // namespace detail

inline InstanceFile parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    detail::parse_fail(std::string("malformed instance file: ") + e.what());
  }
  if (!j.is_object()) detail::parse_fail("instance file must be an object");
  InstanceFile f;
  const Json& order = detail::json_key(j, "order");
  if (!order.is_number_unsigned() || order.get<unsigned long>() < 1) detail::parse_fail("order must be a positive integer");
  const std::size_t d = order.get<std::size_t>();
  f.instance.spec.coefficients = detail::json_integer_list(detail::json_key(j, "coefficients"), "coefficients");
  f.instance.spec.initial_terms = detail::json_integer_list(detail::json_key(j, "initial_terms"), "initial_terms");
  if (f.instance.spec.coefficients.size() != d)
    detail::parse_fail("coefficients has " + std::to_string(f.instance.spec.coefficients.size()) +
                       " entries but order is " + std::to_string(d));
  if (f.instance.spec.initial_terms.size() != d)
    detail::parse_fail("initial_terms has " + std::to_string(f.instance.spec.initial_terms.size()) +
                       " entries but order is " + std::to_string(d));
  f.instance.lambdas = detail::json_integer_list(detail::json_key(j, "lambdas"), "lambdas");
  f.instance.w = detail::json_integer(detail::json_key(j, "w"), "w");
  for (const auto& p : detail::json_integer_list(detail::json_key(j, "primes"), "primes")) {
    if (p < 2 || !p.fits_ulong_p()) detail::parse_fail("primes: " + p.get_str() + " is out of range");
    f.instance.primes.push_back(p.get_ui());
  }
  if (auto it = j.find("c2_override"); it != j.end()) {
    std::string s = it->is_string() ? it->get<std::string>() : it->dump();
    Interval v(64);
    try {
      v = Interval::from_decimal(s, 64);
    } catch (const Error&) {
      detail::parse_fail("c2_override is not a decimal number: " + s);
    }
    if (!v.certainly_positive()) detail::parse_fail("c2_override must be positive");
    f.c2_override = s;
  }
  if (auto it = j.find("precision"); it != j.end()) {
    if (!it->is_number_unsigned() || it->get<unsigned long>() < 64)
      detail::parse_fail("precision must be an integer number of bits >= 64");
    f.precision = it->get<Precision>();
  }
  if (auto it = j.find("cap"); it != j.end()) {
    if (!it->is_number_unsigned()) detail::parse_fail("cap must be a non-negative integer");
    f.cap = it->get<std::size_t>();
  }
  validate(f.instance);
  return f;
}

inline InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) detail::parse_fail("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

// ---------------------------------------------------------------------------
// Spectral summary

inline Json spectral_json(const SpectralData& s) {
  Json j;
  j["companion_polynomial"] = s.companion.to_string();
  Json roots = Json::array();
  for (const auto& r : s.roots) roots.push_back(detail::complex_string(r));
  j["roots"] = roots;
  Json coeffs = Json::array();
  for (const auto& c : s.coefficients) coeffs.push_back(detail::complex_string(c));
  j["closed_form_coefficients"] = coeffs;
  j["alpha"] = s.alpha.to_string(kDigits);
  j["alpha2_modulus"] = s.alpha2_modulus.to_string(kDigits);
  j["alpha_minimal_polynomial"] = s.alpha_min_poly.to_string();
  j["u_abs"] = s.u_abs().to_string(kDigits);
  j["h_alpha"] = height_of_alpha(s).to_string(kDigits);
  j["h_u"] = height_of_u(s).to_string(kDigits);
  j["D"] = s.degree_bound;
  j["D_exact"] = s.degree_bound_exact;
  j["precision"] = s.precision;
  return j;
}

inline std::string spectral_text(const SpectralData& s) {
  std::ostringstream o;
  o << "companion polynomial = " << s.companion.to_string() << "\n";
  for (std::size_t i = 0; i < s.roots.size(); ++i) {
    o << "root[" << i + 1 << "] = " << detail::complex_string(s.roots[i]) << "\n";
    o << "u[" << i + 1 << "] = " << detail::complex_string(s.coefficients[i]) << "\n";
  }
  o << "alpha = " << s.alpha.to_string(kDigits) << "\n";
  o << "alpha2_modulus = " << s.alpha2_modulus.to_string(kDigits) << "\n";
  o << "alpha minimal polynomial = " << s.alpha_min_poly.to_string() << "\n";
  o << "u_abs = " << s.u_abs().to_string(kDigits) << "\n";
  o << "h_alpha = " << height_of_alpha(s).to_string(kDigits) << "\n";
  o << "h_u = " << height_of_u(s).to_string(kDigits) << "\n";
  o << "D = " << s.degree_bound << (s.degree_bound_exact ? "" : " (upper bound)") << "\n";
  o << "precision = " << s.precision << "\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// Bound reports

inline Json report_json(const BoundReport& r, const Instance& in) {
  Json j;
  Json cs = Json::array();
  for (const auto& c : r.constants) {
    Json e;
    e["name"] = c.name;
    e["value"] = c.value.to_string(kDigits);
    e["enclosure_width"] = detail::width_string(c.value);
    e["provenance"] = c.provenance;
    cs.push_back(e);
  }
  j["constants"] = cs;
  j["n1_bound"] = r.n1_bound.get_str();
  Json zs = Json::array();
  for (std::size_t i = 0; i < r.z_bounds.size(); ++i) zs.push_back({{"prime", in.primes[i]}, {"bound", r.z_bounds[i].get_str()}});
  j["z_bounds"] = zs;
  j["notes"] = r.notes;
  return j;
}

inline std::string report_text(const BoundReport& r, const Instance& in) {
  std::ostringstream o;
  for (const auto& c : r.constants)
    o << c.name << " = " << c.value.to_string(kDigits) << "  width " << detail::width_string(c.value) << "  ["
      << c.provenance << "]\n";
  o << "n1_bound = " << r.n1_bound.get_str() << "\n";
  for (std::size_t i = 0; i < r.z_bounds.size(); ++i)
    o << "z_bound(p=" << in.primes[i] << ") = " << r.z_bounds[i].get_str() << "\n";
  for (const auto& n : r.notes) o << "note: " << n << "\n";
  return o.str();
}

/// The parts of a serialized report that verification needs.
struct ReportSummary {
  mpz_class n1_bound;
  std::vector<mpz_class> z_bounds;
  Interval c2;
};

/// Reads a JSON report. c2 is widened by its recorded width plus the
/// rounding of the 30-digit midpoint.
inline ReportSummary parse_report(const std::string& text, Precision prec = 256) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    detail::parse_fail(std::string("malformed report: ") + e.what());
  }
  if (!j.is_object()) detail::parse_fail("report must be an object");
  ReportSummary out;
  out.n1_bound = detail::json_integer(detail::json_key(j, "n1_bound"), "n1_bound");
  const Json& zs = detail::json_key(j, "z_bounds");
  if (!zs.is_array()) detail::parse_fail("z_bounds must be a list");
  for (const auto& z : zs) out.z_bounds.push_back(detail::json_integer(z.is_object() ? detail::json_key(z, "bound") : z, "z_bounds"));
  std::optional<Interval> c2;
  for (const auto& c : detail::json_key(j, "constants")) {
    if (!c.is_object() || c.value("name", "") != "c2") continue;
    try {
      Interval v = Interval::from_decimal(detail::json_key(c, "value").get<std::string>(), prec);
      Interval w = Interval::from_decimal(detail::json_key(c, "enclosure_width").get<std::string>(), prec);
      Interval slack = w + abs(v) * Interval::from_decimal("1e-28", prec);
      c2 = Interval::hull(v - slack, v + slack);
    } catch (const nlohmann::json::exception&) {
      detail::parse_fail("constant c2 has a malformed value");
    } catch (const Error&) {
      detail::parse_fail("constant c2 has a malformed value");
    }
  }
  if (!c2) detail::parse_fail("report has no c2 constant");
  out.c2 = *c2;
  return out;
}

// ---------------------------------------------------------------------------
// Solutions

inline std::string solution_line(const Solution& s) {
  return "n=(" + detail::join(s.n) + ") z=(" + detail::join(s.z) + ")";
}

inline Json solution_json(const Solution& s) { return {{"n", s.n}, {"z", s.z}}; }

inline Json search_json(const SearchResult& r) {
  Json sols = Json::array(), small = Json::array();
  for (const auto& s : r.solutions) sols.push_back(solution_json(s));
  for (const auto& s : r.small) small.push_back(solution_json(s));
  return {{"solutions", sols}, {"flagged_small_n1", small}};
}

inline Json verification_json(const VerificationOutcome& v) {
  Json viol = Json::array();
  for (const auto& x : v.violations) viol.push_back({{"solution", solution_json(x.solution)}, {"violation", x.what}});
  return {{"checked", v.checked}, {"ok", v.ok()}, {"violations", viol}};
}

}  // namespace effbound
