#pragma once

/**
 * @file polynomial.hpp
 * @brief Exact univariate polynomials over Z and Q.
 *
 * Coefficients are stored in ascending order: coeffs[i] multiplies x^i.
 * Everything here is exact; interval evaluation is provided for the
 * certified numeric side.
 */

#include <gmpxx.h>

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"

namespace effbound {

template <typename Coeff>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Coeff> coeffs) : coeffs_(coeffs) { trim(); }

  static Poly monomial(const Coeff& c, std::size_t power) {
    std::vector<Coeff> v(power + 1, Coeff(0));
    v[power] = c;
    return Poly(std::move(v));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Coeff>& coeffs() const { return coeffs_; }
  Coeff operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Coeff(0); }
  const Coeff& leading() const { return coeffs_.back(); }

  bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }

  Poly derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Coeff> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * Coeff(static_cast<long>(i));
    return Poly(std::move(v));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Coeff> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Coeff(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return Poly(std::move(v));
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Coeff> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Coeff(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] -= b.coeffs_[i];
    return Poly(std::move(v));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Coeff> v(a.coeffs_.size() + b.coeffs_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(v));
  }

  friend Poly operator*(const Coeff& c, const Poly& a) {
    std::vector<Coeff> v = a.coeffs_;
    for (auto& x : v) x *= c;
    return Poly(std::move(v));
  }

  Coeff evaluate(const Coeff& x) const {
    Coeff acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      Coeff c = coeffs_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      bool neg = c < 0;
      Coeff mag = neg ? Coeff(-c) : c;
      if (first) {
        if (neg) out << "-";
      } else {
        out << (neg ? " - " : " + ");
      }
      if (mag != 1 || i == 0) out << mag;
      if (i >= 1) out << var;
      if (i >= 2) out << "^" << i;
      first = false;
    }
    return out.str();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Coeff> coeffs_;
};

using IntPoly = Poly<mpz_class>;
using RatPoly = Poly<mpq_class>;

inline RatPoly to_rational(const IntPoly& p) {
  std::vector<mpq_class> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.emplace_back(c);
  return RatPoly(std::move(v));
}

inline mpz_class content(const IntPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

/// Primitive integer polynomial with positive leading coefficient that is a
/// rational multiple of p.
inline IntPoly primitive_part(const RatPoly& p) {
  if (p.is_zero()) return {};
  mpz_class den = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    mpq_class scaled = c * den;
    v.push_back(scaled.get_num());
  }
  IntPoly q(std::move(v));
  mpz_class g = content(q);
  if (q.leading() < 0) g = -g;
  std::vector<mpz_class> w = q.coeffs();
  for (auto& c : w) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(w));
}

inline IntPoly primitive_part(const IntPoly& p) { return primitive_part(to_rational(p)); }

/// Euclidean division over Q. Returns {quotient, remainder}.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  require(!b.is_zero(), ErrorKind::DomainError, "polynomial division by zero");
  std::vector<mpq_class> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {RatPoly{}, a};
  std::vector<mpq_class> quot(static_cast<std::size_t>(a.degree() - db + 1), mpq_class(0));
  for (int i = a.degree(); i >= db; --i) {
    mpq_class c = rem[static_cast<std::size_t>(i)] / b.leading();
    quot[static_cast<std::size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= c * b[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

/// Monic gcd over Q.
inline RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  mpq_class lc = a.leading();
  std::vector<mpq_class> v = a.coeffs();
  for (auto& c : v) c /= lc;
  return RatPoly(std::move(v));
}

inline bool is_squarefree(const IntPoly& f) {
  RatPoly g = gcd(to_rational(f), to_rational(f.derivative()));
  return g.degree() == 0;
}

/// a / b when b divides a exactly in Z[x].
inline std::optional<IntPoly> exact_quotient(const IntPoly& a, const IntPoly& b) {
  require(!b.is_zero(), ErrorKind::DomainError, "polynomial division by zero");
  if (a.is_zero()) return IntPoly{};
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<mpz_class> rem = a.coeffs();
  const int db = b.degree();
  std::vector<mpz_class> quot(static_cast<std::size_t>(a.degree() - db + 1), mpz_class(0));
  for (int i = a.degree(); i >= db; --i) {
    const mpz_class& top = rem[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.leading().get_mpz_t())) return std::nullopt;
    mpz_class c = top / b.leading();
    quot[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= c * b[static_cast<std::size_t>(j)];
  }
  for (int i = 0; i < db; ++i)
    if (rem[static_cast<std::size_t>(i)] != 0) return std::nullopt;
  return IntPoly(std::move(quot));
}

inline Interval evaluate(const IntPoly& p, const Interval& x) {
  Interval acc(x.precision());
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
    acc = acc * x + Interval::from_mpz(*it, x.precision());
  return acc;
}

inline ComplexInterval evaluate(const IntPoly& p, const ComplexInterval& z) {
  const Precision prec = z.precision();
  ComplexInterval acc(prec);
  if (z.is_real()) acc = ComplexInterval(Interval(prec));
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
    acc = acc * z + ComplexInterval(Interval::from_mpz(*it, prec));
  return acc;
}

/// Discriminant of a monic cubic x^3 + b x^2 + c x + e.
inline mpz_class cubic_discriminant(const IntPoly& f) {
  require(f.degree() == 3, ErrorKind::DomainError, "cubic_discriminant needs a cubic");
  const mpz_class a = f[3];
  const mpz_class b = f[2];
  const mpz_class c = f[1];
  const mpz_class e = f[0];
  return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * e - 27 * a * a * e * e + 18 * a * b * c * e;
}

}  // namespace effbound
