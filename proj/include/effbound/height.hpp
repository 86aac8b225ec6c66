#pragma once

/**
 * @file height.hpp
 * @brief Absolute logarithmic heights of algebraic numbers.
 *
 * h(eta) = (log q0 + sum log_* |eta_i|) / n over the conjugates eta_i of eta,
 * q0 the leading coefficient of its primitive minimal polynomial. The
 * helpers at the bottom build minimal polynomials of products, sums and
 * powers from root enclosures; they exist to exercise the height
 * inequalities and are not needed by the bound pipeline.
 */

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <vector>

#include "algebraic.hpp"
#include "errors.hpp"
#include "interval.hpp"
#include "polynomial.hpp"
#include "recurrence.hpp"
#include "roots.hpp"

namespace effbound {

inline double log_star(double x) {
  require(x > 0, ErrorKind::DomainError, "log_* of a non-positive number");
  return std::max(0.0, std::log(x));
}

struct AlgebraicNumber {
  IntPoly min_poly;      // primitive, irreducible, positive leading coefficient
  ComplexInterval root;  // isolates the chosen conjugate
  int degree() const { return min_poly.degree(); }
};

/// Validates min_poly (primitive, lc > 0, irreducible) and that `root`
/// overlaps exactly one of its roots.
inline AlgebraicNumber make_algebraic(const IntPoly& min_poly, const ComplexInterval& root, Precision prec = 256,
                                      Precision ceiling = 8192) {
  require(min_poly.degree() >= 1, ErrorKind::DomainError, "minimal polynomial must be non-constant");
  require(min_poly.leading() > 0, ErrorKind::DomainError, "minimal polynomial needs a positive leading coefficient");
  require(content(min_poly) == 1, ErrorKind::DomainError, "minimal polynomial must be primitive");
  auto iso = isolate_roots(min_poly, prec, ceiling);
  auto factors = factor_by_roots(min_poly, iso.roots);
  require(factors.size() == 1, ErrorKind::DomainError, min_poly.to_string() + " is reducible over Q");
  int hits = 0;
  for (const auto& r : iso.roots)
    if (r.re().overlaps(root.re()) && r.im().overlaps(root.im())) ++hits;
  require(hits == 1, ErrorKind::DomainError, "root enclosure does not select a single conjugate");
  return {min_poly, root};
}

inline AlgebraicNumber rational_number(const mpz_class& p, const mpz_class& q, Precision prec = 256) {
  require(q != 0, ErrorKind::DomainError, "zero denominator");
  mpq_class r(p, q);
  r.canonicalize();
  IntPoly poly({mpz_class(-r.get_num()), r.get_den()});
  return {poly, ComplexInterval(Interval::from_mpq(r, prec))};
}

/// (log lc + sum_{i in idx} log_*|r_i|) / |idx|.
inline Interval height_from_roots(const mpz_class& lc, const std::vector<ComplexInterval>& roots,
                                  const std::vector<std::size_t>& idx, Precision prec) {
  Interval acc = log(Interval::from_mpz(abs(lc), prec));
  for (auto i : idx) acc = acc + log_star(roots[i].abs());
  return acc / static_cast<long>(idx.size());
}

inline Interval abs_log_height(const AlgebraicNumber& eta, Precision prec, Precision ceiling = 8192) {
  const IntPoly& p = eta.min_poly;
  if (p.degree() == 1) {
    // Rational: log max(|num|, den) exactly.
    mpz_class num = abs(p[0]);
    mpz_class den = p[1];
    return log(Interval::from_mpz(std::max(num, den), prec));
  }
  auto iso = isolate_roots(p, prec, ceiling);
  std::vector<std::size_t> all(iso.roots.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return height_from_roots(p.leading(), iso.roots, all, prec);
}

inline Interval height_of_rational(const mpz_class& p, const mpz_class& q, Precision prec) {
  require(p != 0, ErrorKind::DomainError, "height_of_rational needs a non-zero numerator");
  require(q >= 1, ErrorKind::DomainError, "height_of_rational needs a positive denominator");
  mpq_class r(p, q);
  r.canonicalize();
  return log(Interval::from_mpz(std::max(mpz_class(abs(r.get_num())), r.get_den()), prec));
}

/// h(alpha) = h(|alpha|) for the real dominant root.
inline Interval height_of_alpha(const SpectralData& s) {
  return height_from_roots(s.alpha_min_poly.leading(), s.roots, s.alpha_conjugates, s.precision);
}

/// h(u) = h(|u|). The characteristic polynomial of u over Q(alpha) is a power
/// of its minimal polynomial, and that power cancels in the average.
inline Interval height_of_u(const SpectralData& s) {
  return height_from_roots(s.u_char_poly.leading(), s.coefficients, s.alpha_conjugates, s.precision);
}

// ---------------------------------------------------------------------------
// Arithmetic on algebraic numbers through root enclosures.

/// Conjugates of eta, with the chosen one first.
inline std::vector<ComplexInterval> conjugates(const AlgebraicNumber& eta, Precision prec, Precision ceiling = 8192) {
  if (eta.degree() == 1) {
    mpq_class r(-eta.min_poly[0], eta.min_poly[1]);
    r.canonicalize();
    return {ComplexInterval(Interval::from_mpq(r, prec))};
  }
  auto iso = isolate_roots(eta.min_poly, prec, ceiling);
  std::vector<ComplexInterval> out;
  std::vector<ComplexInterval> rest;
  for (auto& r : iso.roots) {
    bool chosen = out.empty() && r.re().overlaps(eta.root.re()) && r.im().overlaps(eta.root.im());
    (chosen ? out : rest).push_back(r);
  }
  require(out.size() == 1, ErrorKind::DomainError, "chosen root not found among the conjugates");
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

/// The irreducible factor of f (any integer polynomial) that vanishes at
/// the point enclosed by `value`.
inline AlgebraicNumber algebraic_from_polynomial(const IntPoly& f, const ComplexInterval& value, Precision prec,
                                                 Precision ceiling = 8192) {
  RatPoly g = gcd(to_rational(f), to_rational(f.derivative()));
  IntPoly sqf = primitive_part(divmod(to_rational(f), g).first);
  if (sqf.degree() == 1) {
    mpq_class r(-sqf[0], sqf[1]);
    r.canonicalize();
    return {sqf, ComplexInterval(Interval::from_mpq(r, prec))};
  }
  auto iso = isolate_roots(sqf, prec, ceiling);
  std::optional<std::size_t> pick;
  for (std::size_t i = 0; i < iso.roots.size(); ++i) {
    const auto& r = iso.roots[i];
    if (!(r.re().overlaps(value.re()) && r.im().overlaps(value.im()))) continue;
    require(!pick, ErrorKind::PrecisionExhausted, "value enclosure overlaps several roots");
    pick = i;
  }
  require(pick.has_value(), ErrorKind::DomainError, "value is not a root of the polynomial");
  for (const auto& fac : factor_by_roots(sqf, iso.roots)) {
    for (auto idx : fac.root_indices)
      if (idx == *pick) return {fac.poly, iso.roots[*pick]};
  }
  fail(ErrorKind::DomainError, "root not owned by any factor");
}

namespace detail {

inline mpz_class pow_z(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline AlgebraicNumber combine(const AlgebraicNumber& a, const AlgebraicNumber& b, bool multiply, Precision prec) {
  auto ca = conjugates(a, prec);
  auto cb = conjugates(b, prec);
  std::vector<ComplexInterval> values;
  for (const auto& x : ca)
    for (const auto& y : cb) values.push_back(multiply ? x * y : x + y);
  // lc_a^{deg b} lc_b^{deg a} prod (x - v) is a resultant, hence integral.
  mpz_class scale = pow_z(a.min_poly.leading(), static_cast<unsigned long>(b.degree())) *
                    pow_z(b.min_poly.leading(), static_cast<unsigned long>(a.degree()));
  auto poly = integer_poly_from_roots(values, scale, prec);
  require(poly.has_value(), ErrorKind::PrecisionExhausted, "could not round the combined polynomial");
  return algebraic_from_polynomial(*poly, values.front(), prec);
}

}  // namespace detail

inline AlgebraicNumber multiply(const AlgebraicNumber& a, const AlgebraicNumber& b, Precision prec = 512) {
  return detail::combine(a, b, true, prec);
}

inline AlgebraicNumber add(const AlgebraicNumber& a, const AlgebraicNumber& b, Precision prec = 512) {
  return detail::combine(a, b, false, prec);
}

/// eta^e for any integer e (eta non-zero when e < 0).
inline AlgebraicNumber power(const AlgebraicNumber& eta, long e, Precision prec = 512) {
  if (e == 0) return rational_number(1, 1, prec);
  AlgebraicNumber base = eta;
  if (e < 0) {
    require(eta.min_poly[0] != 0, ErrorKind::DomainError, "negative power of zero");
    std::vector<mpz_class> c = eta.min_poly.coeffs();
    std::reverse(c.begin(), c.end());
    IntPoly rev = primitive_part(IntPoly(std::move(c)));
    ComplexInterval one(Interval(1, prec));
    ComplexInterval inv = one / eta.root.with_precision(prec);
    base = algebraic_from_polynomial(rev, inv, prec);
    e = -e;
  }
  auto cs = conjugates(base, prec);
  std::vector<ComplexInterval> values;
  for (const auto& x : cs) values.push_back(pow(x, static_cast<unsigned long>(e)));
  // (lc eta_i)^e is integral, so lc^(e d) clears every symmetric function.
  mpz_class scale =
      detail::pow_z(base.min_poly.leading(), static_cast<unsigned long>(e) * static_cast<unsigned long>(base.degree()));
  auto poly = integer_poly_from_roots(values, scale, prec);
  require(poly.has_value(), ErrorKind::PrecisionExhausted, "could not round the power polynomial");
  return algebraic_from_polynomial(*poly, values.front(), prec);
}

}  // namespace effbound
