#pragma once

/**
 * @file baker.hpp
 * @brief Matveev's lower bound for linear forms in logarithms, the
 * Petho-de Weger lemma, and the height bounds for the composite
 * logarithm gamma_m = |w| |u|^-1 |lambda_1 + lambda_2 alpha^(n_2-n_1) + ...|^-1.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"

namespace effbound {

struct MatveevInput {
  unsigned long D = 1;
  unsigned long t = 1;
  std::vector<Interval> A;  // one per term, each >= 0.16
  Interval B;               // >= 1
};

inline Interval point_sixteen(Precision prec) { return Interval::from_decimal("0.16", prec); }

/// -1.4 * 30^(t+3) * t^4.5 * D^2 * (1 + log D) * (1 + log B) * A_1 ... A_t.
inline Interval matveev_log_lower_bound(const MatveevInput& in) {
  require(in.D >= 1 && in.t >= 1, ErrorKind::DomainError, "Matveev bound needs D >= 1 and t >= 1");
  require(in.A.size() == in.t, ErrorKind::DomainError, "Matveev bound needs one A_i per term");
  const Precision prec = in.B.precision();
  require(mpfr_cmp_si(in.B.lower(), 1) >= 0, ErrorKind::DomainError, "Matveev bound needs B >= 1");
  // The decimal floor 0.16 is not a binary number; compare against its lower end.
  const Interval floor = point_sixteen(prec);
  for (const auto& a : in.A)
    require(mpfr_cmp(a.lower(), floor.lower()) >= 0, ErrorKind::DomainError, "each A_i must be at least 0.16");
  const Interval D(static_cast<long>(in.D), prec);
  const Interval t(static_cast<long>(in.t), prec);
  Interval c = Interval::from_decimal("1.4", prec) * pow(Interval(30, prec), in.t + 3) *
               pow(t, Interval::from_decimal("4.5", prec)) * sqr(D) * (log(D) + 1L) * (log(in.B) + 1L);
  for (const auto& a : in.A) c = c * a;
  return -c;
}

/// Table form C_M(x) = 1.4 * 30^(x+2) * x^4.5 * D^(x+2) * (1 + log D).
inline Interval c_matveev(unsigned long x, unsigned long D, Precision prec) {
  require(x >= 1 && D >= 1, ErrorKind::DomainError, "c_matveev needs x >= 1 and D >= 1");
  const Interval d(static_cast<long>(D), prec);
  return Interval::from_decimal("1.4", prec) * pow(Interval(30, prec), x + 2) *
         pow(Interval(static_cast<long>(x), prec), Interval::from_decimal("4.5", prec)) * pow(d, x + 2) *
         (log(d) + 1L);
}

/// The constant that actually multiplies (1 + log B) * prod(log p_i) * A_2 * A_3
/// when Matveev is applied with t = x terms of which x - 2 are primes:
/// 1.4 * 30^(x+3) * x^4.5 * D^x * (1 + log D). It equals
/// c_matveev(x, D) * 30 / D^2.
inline Interval c_matveev_applied(unsigned long x, unsigned long D, Precision prec) {
  require(x >= 1 && D >= 1, ErrorKind::DomainError, "c_matveev_applied needs x >= 1 and D >= 1");
  const Interval d(static_cast<long>(D), prec);
  return Interval::from_decimal("1.4", prec) * pow(Interval(30, prec), x + 3) *
         pow(Interval(static_cast<long>(x), prec), Interval::from_decimal("4.5", prec)) * pow(d, x) *
         (log(d) + 1L);
}

/// Upper bound on the largest solution of x = u + v (log x)^h:
/// max{2^h (u^(1/h) + v^(1/h) log(h^h v))^h, 2^h (u^(1/h) + 2e^2)^h}.
/// With v = 0 only the second branch is used.
inline Interval petho_deweger_bound(const Interval& u, const Interval& v, unsigned long h) {
  const Precision prec = std::max(u.precision(), v.precision());
  require(h >= 1, ErrorKind::DomainError, "Petho-de Weger needs h >= 1");
  require(mpfr_sgn(u.lower()) >= 0 && mpfr_sgn(v.lower()) >= 0, ErrorKind::DomainError,
          "Petho-de Weger needs u, v >= 0");
  const Interval two_h = pow(Interval(2, prec), h);
  const Interval uh = root(u, h);
  const Interval e2 = sqr(Interval::e(prec));
  Interval second = two_h * pow(uh + e2 * 2L, h);
  if (mpfr_zero_p(v.upper())) return second;
  require(v.certainly_positive(), ErrorKind::DomainError, "Petho-de Weger: v straddles zero");
  const Interval hh = pow(Interval(static_cast<long>(h), prec), h);
  Interval inner = uh + root(v, h) * log(hh * v);
  // A negative inner sum cannot exceed the second branch once raised to h.
  if (inner.certainly_negative()) return second;
  if (inner.contains_zero()) inner = Interval::hull(Interval(prec), max(inner, Interval(prec)));
  Interval first = two_h * pow(inner, h);
  return max(first, second);
}

inline Interval petho_deweger_bound(double u, double v, unsigned long h, Precision prec = 256) {
  Interval iu(prec), iv(prec);
  mpfr_t t;
  mpfr_init2(t, 64);
  mpfr_set_d(t, u, MPFR_RNDN);
  iu = Interval::from_bounds(t, t, prec);
  mpfr_set_d(t, v, MPFR_RNDN);
  iv = Interval::from_bounds(t, t, prec);
  mpfr_clear(t);
  return petho_deweger_bound(iu, iv, h);
}

/// Inputs shared by the gamma_m height bounds.
struct GammaData {
  mpz_class w;
  std::vector<mpz_class> lambdas;  // lambda_1 .. lambda_m (at least m entries)
  Interval u_abs;                  // |u|
  Interval h_u;                    // h(|u|)
  Interval h_alpha;                // h(|alpha|)
};

namespace detail {

inline mpz_class max_abs_prefix(const std::vector<mpz_class>& v, std::size_t m) {
  mpz_class best = 0;
  for (std::size_t j = 0; j < m && j < v.size(); ++j) best = std::max(best, mpz_class(abs(v[j])));
  return best;
}

}  // namespace detail

/// log|w| + h(|u|) + m log(max_{j<=m} |lambda_j|) + (sum gaps) h(|alpha|) + log m.
inline Interval gamma_height_bound(std::size_t m, const GammaData& g, const std::vector<long>& gaps) {
  require(m >= 1 && g.lambdas.size() >= m, ErrorKind::DomainError, "gamma_height_bound needs m lambdas");
  const Precision prec = g.u_abs.precision();
  Interval acc = log(Interval::from_mpz(abs(g.w), prec)) + g.h_u +
                 log(Interval::from_mpz(detail::max_abs_prefix(g.lambdas, m), prec)) * static_cast<long>(m);
  if (m >= 2) {
    long total = 0;
    for (long x : gaps) {
      require(x >= 0, ErrorKind::DomainError, "gaps must be non-negative");
      total += x;
    }
    acc = acc + g.h_alpha * total + log(Interval(static_cast<long>(m), prec));
  }
  return acc;
}

/// C_5^(m) = log|w| + h(|u|) + m log max|lambda| + log m
///          + max{log|w| - log|u| - log C_2^(m), log|u| + log max|lambda| + log m - log|w|}.
inline Interval c5(std::size_t m, const GammaData& g, const Interval& c2_m) {
  require(c2_m.certainly_positive(), ErrorKind::DomainError, "C_2 must be certainly positive");
  const Precision prec = g.u_abs.precision();
  const Interval lw = log(Interval::from_mpz(abs(g.w), prec));
  const Interval lu = log(g.u_abs);
  const Interval lmax = log(Interval::from_mpz(detail::max_abs_prefix(g.lambdas, m), prec));
  const Interval lm = log(Interval(static_cast<long>(m), prec));
  return lw + g.h_u + lmax * static_cast<long>(m) + lm + max(lw - lu - log(c2_m), lu + lmax + lm - lw);
}

/// A_3(m) = max{D C_5^(m) + D (sum gaps) h(|alpha|), 0.16}; the gap term is absent for m = 1.
inline Interval a3(std::size_t m, unsigned long D, const Interval& c5_m, const std::vector<long>& gaps,
                   const Interval& h_alpha) {
  const Precision prec = c5_m.precision();
  Interval acc = c5_m * static_cast<long>(D);
  if (m >= 2) {
    long total = 0;
    for (long x : gaps) {
      require(x >= 0, ErrorKind::DomainError, "gaps must be non-negative");
      total += x;
    }
    acc = acc + h_alpha * static_cast<long>(D) * total;
  }
  return max(acc, point_sixteen(prec));
}

}  // namespace effbound
