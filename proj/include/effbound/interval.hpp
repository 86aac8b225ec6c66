#pragma once

/**
 * @file interval.hpp
 * @brief Certified real and complex interval arithmetic on top of MPFR.
 *
 * An Interval stores two MPFR endpoints. Every operation rounds the lower
 * endpoint toward -inf and the upper endpoint toward +inf, so the exact
 * real result of the operation on any points of the operands lies inside
 * the returned interval. ComplexInterval is a rectangle of two Intervals.
 */

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "errors.hpp"

namespace effbound {

using Precision = mpfr_prec_t;

class Interval {
 public:
  explicit Interval(Precision prec = 256) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }

  Interval(long value, Precision prec) : Interval(prec) {
    mpfr_set_si(lo_, value, MPFR_RNDD);
    mpfr_set_si(hi_, value, MPFR_RNDU);
  }

  static Interval from_mpz(const mpz_class& value, Precision prec) {
    Interval r(prec);
    mpfr_set_z(r.lo_, value.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, value.get_mpz_t(), MPFR_RNDU);
    return r;
  }

  static Interval from_mpq(const mpq_class& value, Precision prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_, value.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, value.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  /// Parses a decimal literal such as "0.999999" into an enclosing interval.
  static Interval from_decimal(std::string_view text, Precision prec) {
    std::string s(text);
    Interval r(prec);
    int bad = mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD);
    bad |= mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU);
    require(bad == 0, ErrorKind::DomainError, "not a decimal number: " + s);
    return r;
  }

  static Interval from_bounds(mpfr_srcptr lo, mpfr_srcptr hi, Precision prec) {
    Interval r(prec);
    mpfr_set(r.lo_, lo, MPFR_RNDD);
    mpfr_set(r.hi_, hi, MPFR_RNDU);
    return r;
  }

  static Interval hull(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  static Interval e(Precision prec) { return exp(Interval(1, prec)); }

  static Interval log2(Precision prec) {
    Interval r(prec);
    mpfr_const_log2(r.lo_, MPFR_RNDD);
    mpfr_const_log2(r.hi_, MPFR_RNDU);
    return r;
  }

  Interval(const Interval& other) {
    mpfr_init2(lo_, mpfr_get_prec(other.lo_));
    mpfr_init2(hi_, mpfr_get_prec(other.hi_));
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }

  Interval(Interval&& other) noexcept {
    mpfr_init2(lo_, MPFR_PREC_MIN);
    mpfr_init2(hi_, MPFR_PREC_MIN);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
  }

  Interval& operator=(const Interval& other) {
    if (this != &other) {
      mpfr_set_prec(lo_, mpfr_get_prec(other.lo_));
      mpfr_set_prec(hi_, mpfr_get_prec(other.hi_));
      mpfr_set(lo_, other.lo_, MPFR_RNDD);
      mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
  }

  Interval& operator=(Interval&& other) noexcept {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    return *this;
  }

  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  Precision precision() const { return std::max(mpfr_get_prec(lo_), mpfr_get_prec(hi_)); }
  mpfr_srcptr lower() const { return lo_; }
  mpfr_srcptr upper() const { return hi_; }
  double lower_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_d() const { return mid().lower_d(); }

  bool contains(const mpz_class& v) const {
    return mpfr_cmp_z(lo_, v.get_mpz_t()) <= 0 && mpfr_cmp_z(hi_, v.get_mpz_t()) >= 0;
  }
  bool contains(long v) const { return mpfr_cmp_si(lo_, v) <= 0 && mpfr_cmp_si(hi_, v) >= 0; }
  bool contains(double v) const { return mpfr_cmp_d(lo_, v) <= 0 && mpfr_cmp_d(hi_, v) >= 0; }
  bool contains(const Interval& o) const {
    return mpfr_lessequal_p(lo_, o.lo_) && mpfr_greaterequal_p(hi_, o.hi_);
  }
  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
  bool overlaps(const Interval& o) const {
    return mpfr_lessequal_p(lo_, o.hi_) && mpfr_lessequal_p(o.lo_, hi_);
  }
  bool is_point() const { return mpfr_equal_p(lo_, hi_); }

  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
  bool certainly_less(const Interval& o) const { return mpfr_less_p(hi_, o.lo_); }
  bool certainly_greater(const Interval& o) const { return mpfr_greater_p(lo_, o.hi_); }

  /// Upper bound on hi - lo.
  Interval width() const {
    Interval r(precision());
    mpfr_sub(r.hi_, hi_, lo_, MPFR_RNDU);
    mpfr_set(r.lo_, r.hi_, MPFR_RNDD);
    return r;
  }

  /// Point interval at the (rounded) midpoint. Not an enclosure of *this.
  Interval mid() const {
    Interval r(precision());
    mpfr_add(r.lo_, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(r.lo_, r.lo_, 1, MPFR_RNDN);
    mpfr_set(r.hi_, r.lo_, MPFR_RNDN);
    return r;
  }

  Interval with_precision(Precision prec) const {
    Interval r(prec);
    mpfr_set(r.lo_, lo_, MPFR_RNDD);
    mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
  }

  /// Smallest integer >= upper endpoint.
  mpz_class ceil_upper() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), hi_, MPFR_RNDU);
    return z;
  }
  /// Largest integer <= upper endpoint.
  mpz_class floor_upper() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), hi_, MPFR_RNDD);
    return z;
  }
  mpz_class floor_lower() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), lo_, MPFR_RNDD);
    return z;
  }

  /// Returns the unique integer in the enclosure, or false if there is none
  /// or more than one.
  bool unique_integer(mpz_class& out) const {
    mpz_class a, b;
    mpfr_get_z(a.get_mpz_t(), lo_, MPFR_RNDU);
    mpfr_get_z(b.get_mpz_t(), hi_, MPFR_RNDD);
    if (a != b) return false;
    out = a;
    return true;
  }

  /// Midpoint with `digits` significant decimal digits in scientific form.
  std::string to_string(int digits = 30) const {
    Interval m = mid();
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, m.lo_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  static std::string format(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
    char* buf = nullptr;
    if (rnd == MPFR_RNDU) {
      mpfr_asprintf(&buf, "%.*RUe", digits - 1, x);
    } else if (rnd == MPFR_RNDD) {
      mpfr_asprintf(&buf, "%.*RDe", digits - 1, x);
    } else {
      mpfr_asprintf(&buf, "%.*Re", digits - 1, x);
    }
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  friend Interval operator-(const Interval& a) {
    Interval r(a.precision());
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
  }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }

  friend Interval operator*(const Interval& a, const Interval& b) {
    const Precision prec = std::max(a.precision(), b.precision());
    Interval r(prec);
    if (mpfr_sgn(a.lo_) >= 0 && mpfr_sgn(b.lo_) >= 0) {
      mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
      mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
      return r;
    }
    mpfr_t t;
    mpfr_init2(t, prec);
    mpfr_srcptr xs[2] = {a.lo_, a.hi_};
    mpfr_srcptr ys[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto x : xs) {
      for (auto y : ys) {
        mpfr_mul(t, x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
        first = false;
      }
    }
    mpfr_clear(t);
    return r;
  }

  friend Interval operator/(const Interval& a, const Interval& b) { return a * b.reciprocal(); }

  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }
  Interval& operator/=(const Interval& b) { return *this = *this / b; }

  Interval reciprocal() const {
    require(!contains_zero(), ErrorKind::DomainError, "division by an interval containing zero");
    Interval r(precision());
    mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
    mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
    return r;
  }

  Interval magnitude() const { return abs(*this); }

  Interval mul_2si(long e) const {
    Interval r(precision());
    mpfr_mul_2si(r.lo_, lo_, e, MPFR_RNDD);
    mpfr_mul_2si(r.hi_, hi_, e, MPFR_RNDU);
    return r;
  }

  friend Interval sqr(const Interval& a) {
    Interval r(a.precision());
    if (mpfr_sgn(a.lo_) >= 0) {
      mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
      mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
    } else if (mpfr_sgn(a.hi_) <= 0) {
      mpfr_sqr(r.lo_, a.hi_, MPFR_RNDD);
      mpfr_sqr(r.hi_, a.lo_, MPFR_RNDU);
    } else {
      mpfr_set_zero(r.lo_, 1);
      mpfr_t t;
      mpfr_init2(t, a.precision());
      mpfr_sqr(r.hi_, a.lo_, MPFR_RNDU);
      mpfr_sqr(t, a.hi_, MPFR_RNDU);
      mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
      mpfr_clear(t);
    }
    return r;
  }

  friend Interval abs(const Interval& a) {
    if (mpfr_sgn(a.lo_) >= 0) return a;
    if (mpfr_sgn(a.hi_) <= 0) return -a;
    Interval r(a.precision());
    mpfr_set_zero(r.lo_, 1);
    mpfr_t t;
    mpfr_init2(t, a.precision());
    mpfr_neg(t, a.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, t, a.hi_, MPFR_RNDU);
    mpfr_clear(t);
    return r;
  }

  /// Square root; a slightly negative lower endpoint (from rounding of a
  /// quantity known to be non-negative) is clamped to zero.
  friend Interval sqrt(const Interval& a) {
    require(mpfr_sgn(a.hi_) >= 0, ErrorKind::DomainError, "sqrt of a negative interval");
    Interval r(a.precision());
    if (mpfr_sgn(a.lo_) <= 0) {
      mpfr_set_zero(r.lo_, 1);
    } else {
      mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
    }
    mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }

  friend Interval log(const Interval& a) {
    require(mpfr_sgn(a.lo_) > 0, ErrorKind::DomainError, "log of an interval not bounded away from zero");
    Interval r(a.precision());
    mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }

  friend Interval exp(const Interval& a) {
    Interval r(a.precision());
    mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }

  /// n-th root of a non-negative interval (lower endpoint clamped at 0).
  friend Interval root(const Interval& a, unsigned long n) {
    require(n >= 1, ErrorKind::DomainError, "root order must be positive");
    require(mpfr_sgn(a.hi_) >= 0, ErrorKind::DomainError, "root of a negative interval");
    Interval r(a.precision());
    if (mpfr_sgn(a.lo_) <= 0) {
      mpfr_set_zero(r.lo_, 1);
    } else {
      mpfr_rootn_ui(r.lo_, a.lo_, n, MPFR_RNDD);
    }
    mpfr_rootn_ui(r.hi_, a.hi_, n, MPFR_RNDU);
    return r;
  }

  friend Interval pow(const Interval& base, unsigned long n) {
    Interval result(1, base.precision());
    Interval b = base;
    bool even = (n % 2 == 0);
    if (even) b = abs(b);
    while (n > 0) {
      if (n & 1UL) result = result * b;
      n >>= 1;
      if (n > 0) b = sqr(b);
    }
    return result;
  }

  /// base^exponent for a strictly positive base.
  friend Interval pow(const Interval& base, const Interval& exponent) {
    return exp(exponent * log(base));
  }

  friend Interval min(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  friend Interval max(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

inline Interval operator+(const Interval& a, long b) { return a + Interval(b, a.precision()); }
inline Interval operator-(const Interval& a, long b) { return a - Interval(b, a.precision()); }
inline Interval operator*(const Interval& a, long b) { return a * Interval(b, a.precision()); }
inline Interval operator*(long a, const Interval& b) { return Interval(a, b.precision()) * b; }
inline Interval operator/(const Interval& a, long b) { return a / Interval(b, a.precision()); }

/// max{0, log x}. The argument must be certainly non-negative; an enclosure
/// touching 0 yields a lower endpoint of 0.
inline Interval log_star(const Interval& x) {
  require(mpfr_sgn(x.upper()) > 0, ErrorKind::DomainError, "log_* of a non-positive number");
  const Precision prec = x.precision();
  Interval zero(prec);
  if (mpfr_sgn(x.lower()) <= 0) {
    Interval hi = max(log(Interval::from_bounds(x.upper(), x.upper(), prec)), zero);
    return Interval::hull(zero, hi);
  }
  return max(log(x), zero);
}

class ComplexInterval {
 public:
  explicit ComplexInterval(Precision prec = 256) : re_(prec), im_(prec) {}
  ComplexInterval(Interval re, Interval im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit ComplexInterval(Interval re) : re_(std::move(re)), im_(re_.precision()) {}

  const Interval& re() const { return re_; }
  const Interval& im() const { return im_; }
  Precision precision() const { return std::max(re_.precision(), im_.precision()); }

  /// True when the imaginary part is exactly zero (a certified real).
  bool is_real() const { return im_.is_point() && mpfr_zero_p(im_.lower()); }

  Interval norm() const { return sqr(re_) + sqr(im_); }
  Interval abs() const {
    if (is_real()) return re_.magnitude();
    return sqrt(norm());
  }

  ComplexInterval conj() const { return {re_, -im_}; }
  ComplexInterval mid() const {
    if (is_real()) return ComplexInterval(re_.mid());
    return {re_.mid(), im_.mid()};
  }
  ComplexInterval with_precision(Precision p) const {
    return {re_.with_precision(p), im_.with_precision(p)};
  }

  bool contains(const ComplexInterval& o) const { return re_.contains(o.re_) && im_.contains(o.im_); }
  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
  bool contains_one() const { return re_.contains(1L) && im_.contains_zero(); }

  friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend ComplexInterval operator-(const ComplexInterval& a) { return {-a.re_, -a.im_}; }
  friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    if (a.is_real() && b.is_real()) return ComplexInterval(a.re_ * b.re_);
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend ComplexInterval operator*(const ComplexInterval& a, const Interval& s) {
    if (a.is_real()) return ComplexInterval(a.re_ * s);
    return {a.re_ * s, a.im_ * s};
  }
  friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
    if (b.is_real()) {
      if (a.is_real()) return ComplexInterval(a.re_ / b.re_);
      return {a.re_ / b.re_, a.im_ / b.re_};
    }
    Interval n = b.norm();
    require(!n.contains_zero(), ErrorKind::DomainError, "complex division by an enclosure of zero");
    ComplexInterval num = a * b.conj();
    return {num.re_ / n, num.im_ / n};
  }
  ComplexInterval& operator+=(const ComplexInterval& b) { return *this = *this + b; }
  ComplexInterval& operator-=(const ComplexInterval& b) { return *this = *this - b; }
  ComplexInterval& operator*=(const ComplexInterval& b) { return *this = *this * b; }

  friend ComplexInterval pow(const ComplexInterval& base, unsigned long n) {
    if (base.is_real()) return ComplexInterval(pow(base.re_, n));
    ComplexInterval result(Interval(1, base.precision()));
    ComplexInterval b = base;
    while (n > 0) {
      if (n & 1UL) result = result * b;
      n >>= 1;
      if (n > 0) b = b * b;
    }
    return result;
  }

 private:
  Interval re_;
  Interval im_;
};

}  // namespace effbound
