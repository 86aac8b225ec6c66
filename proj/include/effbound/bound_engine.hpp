#pragma once

/**
 * @file bound_engine.hpp
 * @brief The full chain of constants ending in an explicit bound on n_1 and
 * on every z_i.
 *
 * Notation follows the code: u is the closed-form coefficient of alpha,
 * u_max = max_j |u_j|, C_4 = sum_{j >= 2} |u_j|, logmin = log min{|alpha|/|alpha_2|, |alpha|}.
 *
 * Per index m = 2..k the gap n_1 - n_m is bounded by N_m (log n_1)^(m-1) with
 *   C_6 = max|lambda| (|u| + max(C_1, C_4) + (d-1)(m-1) u_max)
 *   C_7 = (max(d, c_1) + (m-1)(d-1) max|lambda| u_max) / (C_2 |u|)
 *   C_8 = max(C_6 / (C_2 |u|), C_7)
 *   C_9 = C_M (2 + log d_1) prod(log p_i) A_2 max(0.16, D C_5^(m-1) + D (N_2 + ... + N_{m-1}) h(alpha))
 *   N_m = (C_9 + log_* C_8) / logmin
 * and n_1 itself by the same chain with C_10 in place of C_8.
 */

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "baker.hpp"
#include "dominance.hpp"
#include "errors.hpp"
#include "height.hpp"
#include "instance.hpp"
#include "interval.hpp"
#include "recurrence.hpp"

namespace effbound {

struct NamedConstant {
  std::string name;
  Interval value;
  std::string provenance;
};

struct BoundReport {
  std::vector<NamedConstant> constants;  // in computation order
  mpz_class n1_bound;
  std::vector<mpz_class> z_bounds;
  std::vector<std::string> notes;

  Interval c1, c2, c3, C1, C4;
  std::vector<Interval> C2_by_K, C5_by_m, C6_by_m, C7_by_m, C8_by_m, C9_by_m, N_by_m;
  Interval C10, N_max, d1, main_bound;
  std::vector<Interval> lambda_zero_bounds;        // as displayed in the source derivation
  std::vector<Interval> lambda_zero_bounds_sound;  // height lower bound via h(x/y) >= h(x) - h(y)
  unsigned long degree_bound = 0;

  const NamedConstant* find(const std::string& name) const {
    for (const auto& c : constants)
      if (c.name == name) return &c;
    return nullptr;
  }
};

struct BoundConfig {
  unsigned long degree_override = 0;  // 0 keeps the spectral D
  DominanceConfig dominance;
};

/// c_1 = k max|lambda| sum_j |u_j| and c_2 = log_*(c_1/|w|) / log|alpha|.
inline std::pair<Interval, Interval> dominant_term_constants(const Instance& in, const SpectralData& s) {
  const Precision prec = s.precision;
  Interval sum_u(prec);
  for (const auto& c : s.coefficients) sum_u = sum_u + c.abs();
  const Interval lmax = Interval::from_mpz(detail::max_abs_prefix(in.lambdas, in.k()), prec);
  Interval c1 = lmax * sum_u * static_cast<long>(in.k());
  Interval c2 = log_star(c1 / Interval::from_mpz(abs(in.w), prec)) / log(s.alpha_abs);
  return {c1, c2};
}

/// floor((2 log|alpha| / log p_i) n1_bound) on the upper endpoint.
inline mpz_class z_bound(unsigned long p, const mpz_class& n1_bound, const SpectralData& s, const Interval& c2) {
  const Precision prec = s.precision;
  require(Interval::from_mpz(n1_bound, prec).certainly_greater(c2), ErrorKind::DomainError,
          "z_bound needs n1_bound > c_2");
  Interval ratio = log(s.alpha_abs) * 2L / log(Interval(static_cast<long>(p), prec));
  return (ratio * Interval::from_mpz(n1_bound, prec)).floor_upper();
}

struct GapConstants {
  Interval C6, C7, C8;
};

inline GapConstants c6_c7_c8(std::size_t m, const Instance& in, const SpectralData& s,
                             const DominanceCertificate& cert, const Interval& c1) {
  require(m >= 2 && m <= in.k(), ErrorKind::DomainError, "c6_c7_c8 needs 2 <= m <= k");
  require(cert.C2_by_K.size() >= m, ErrorKind::DomainError, "dominance certificate is missing C_2 values");
  const Precision prec = s.precision;
  const long d = static_cast<long>(s.order());
  const Interval lmax = Interval::from_mpz(detail::max_abs_prefix(in.lambdas, m), prec);
  Interval umax(prec);
  for (const auto& c : s.coefficients) umax = max(umax, c.abs());
  const Interval ua = s.u_abs();
  // The sum that is divided out has m - 1 terms.
  const Interval C2 = cert.C2_by_K[m - 2];
  GapConstants g;
  g.C6 = lmax * (ua + max(cert.C1, cert.C4) + umax * ((d - 1) * static_cast<long>(m - 1)));
  g.C7 = (max(Interval(d, prec), c1) + lmax * umax * ((d - 1) * static_cast<long>(m - 1))) / (C2 * ua);
  g.C8 = max(g.C6 / (C2 * ua), g.C7);
  return g;
}

namespace detail {

struct Chain {
  Interval h_alpha, h_u, logmin, d1, A2, CM, prod_log_p, common;
  unsigned long D = 1;
};

inline Chain chain_constants(const Instance& in, const SpectralData& s, unsigned long D) {
  const Precision prec = s.precision;
  Chain ch;
  ch.D = D;
  ch.h_alpha = height_of_alpha(s);
  ch.h_u = height_of_u(s);
  Interval ratio = min(s.alpha_abs / s.alpha2_modulus, s.alpha_abs);
  ch.logmin = log(ratio);
  require(ch.logmin.certainly_positive(), ErrorKind::DegenerateDenominator,
          "log min{|alpha|/|alpha_2|, |alpha|} is not certainly positive");
  ch.d1 = max(Interval(1, prec), log(s.alpha_abs) * 2L / Interval::log2(prec));
  ch.A2 = max(max(ch.h_alpha * static_cast<long>(D), log(s.alpha_abs)), point_sixteen(prec));
  ch.CM = c_matveev_applied(in.s() + 2, D, prec);
  ch.prod_log_p = Interval(1, prec);
  for (auto p : in.primes) ch.prod_log_p = ch.prod_log_p * log(Interval(static_cast<long>(p), prec));
  ch.common = ch.CM * (log(ch.d1) + 2L) * ch.prod_log_p * ch.A2;
  return ch;
}

inline Interval clamp_nonnegative(const Interval& x, bool& clamped) {
  Interval zero(x.precision());
  clamped = mpfr_sgn(x.lower()) < 0;
  return max(x, zero);
}

}  // namespace detail

/// N_2 .. N_k together with C_5, C_6, C_7, C_8, C_9 per index.
struct InductionResult {
  std::vector<Interval> C5_by_m;  // m = 1..k
  std::vector<Interval> C6_by_m, C7_by_m, C8_by_m, C9_by_m, N_by_m;  // m = 2..k
};

inline InductionResult induction_gap_bounds(const Instance& in, const SpectralData& s,
                                            const DominanceCertificate& cert, unsigned long D) {
  const Precision prec = s.precision;
  auto ch = detail::chain_constants(in, s, D);
  auto [c1, c2] = dominant_term_constants(in, s);
  GammaData g{in.w, in.lambdas, s.u_abs(), ch.h_u, ch.h_alpha};
  InductionResult r;
  for (std::size_t m = 1; m <= in.k(); ++m) r.C5_by_m.push_back(c5(m, g, cert.C2_by_K[m - 1]));
  Interval nsum(prec);
  for (std::size_t m = 2; m <= in.k(); ++m) {
    auto gc = c6_c7_c8(m, in, s, cert, c1);
    Interval a3m = max(r.C5_by_m[m - 2] * static_cast<long>(D) + nsum * ch.h_alpha * static_cast<long>(D),
                       point_sixteen(prec));
    Interval C9 = ch.common * a3m;
    Interval N = (C9 + log_star(gc.C8)) / ch.logmin;
    r.C6_by_m.push_back(gc.C6);
    r.C7_by_m.push_back(gc.C7);
    r.C8_by_m.push_back(gc.C8);
    r.C9_by_m.push_back(C9);
    r.N_by_m.push_back(N);
    nsum = nsum + N;
  }
  return r;
}

struct LambdaZeroBound {
  Interval displayed;             // u, v as written with c_3 in the logarithm
  std::optional<Interval> sound;  // denominators log|alpha| - h(alpha), numerator gains log|w|
  bool clamped = false;
};

/// Bound on n_1 when the linear form built from the first `terms` summands
/// vanishes. `terms` is m - 1 in the induction and k in the final step.
/// The Petho-de Weger exponent is terms - 1; with exponent 0 the bound is u.
inline LambdaZeroBound lambda_zero_branch(std::size_t terms, const Instance& in, const SpectralData& s,
                                          const DominanceCertificate& cert, const std::vector<Interval>& N_by_m,
                                          const detail::Chain& ch) {
  require(terms >= 1 && terms <= in.k(), ErrorKind::DomainError, "lambda_zero_branch: bad term count");
  const Precision prec = s.precision;
  const Interval lw = log(Interval::from_mpz(abs(in.w), prec));
  const Interval lmax = log(Interval::from_mpz(detail::max_abs_prefix(in.lambdas, terms), prec));
  const Interval lt = log(Interval(static_cast<long>(terms), prec));
  const Interval la = log(s.alpha_abs);
  Interval nsum(prec);
  for (std::size_t i = 0; i + 1 < terms && i < N_by_m.size(); ++i) nsum = nsum + N_by_m[i];
  const Interval base = ch.h_u + lmax * static_cast<long>(terms) + lt - log(cert.c3);
  const unsigned long h = terms - 1;

  auto finish = [&](const Interval& u_raw, const Interval& v, bool& clamped) {
    Interval u = detail::clamp_nonnegative(u_raw, clamped);
    if (h == 0) return u;
    return petho_deweger_bound(u, v, h);
  };

  LambdaZeroBound out;
  const Interval den = ch.h_alpha + la;
  bool c1 = false, c2 = false;
  out.displayed = finish((lw + base) / den, nsum * ch.h_alpha / den, c1);
  const Interval den2 = la - ch.h_alpha;
  if (den2.certainly_positive()) out.sound = finish((lw * 2L + base) / den2, nsum * ch.h_alpha / den2, c2);
  out.clamped = c1 || c2;
  return out;
}

inline BoundReport compute_bound(const Instance& in, const SpectralData& s, const DominanceCertificate& cert,
                                 const BoundConfig& cfg = {}) {
  validate(in);
  const Precision prec = s.precision;
  const std::size_t k = in.k();
  const long d = static_cast<long>(s.order());
  const unsigned long D = cfg.degree_override ? cfg.degree_override : s.degree_bound;
  require(D >= 1, ErrorKind::DomainError, "field degree bound must be positive");

  BoundReport rep;
  rep.degree_bound = D;
  auto add = [&](std::string name, const Interval& v, std::string prov) {
    rep.constants.push_back({std::move(name), v, std::move(prov)});
  };

  auto [c1, c2] = dominant_term_constants(in, s);
  auto ch = detail::chain_constants(in, s, D);
  rep.c1 = c1;
  rep.c2 = c2;
  rep.c3 = cert.c3;
  rep.C1 = cert.C1;
  rep.C4 = cert.C4;
  rep.C2_by_K = cert.C2_by_K;
  rep.d1 = ch.d1;

  add("alpha", s.alpha, "dominant root of the companion polynomial");
  add("alpha2_modulus", s.alpha2_modulus, "max_{j>=2} |alpha_j|");
  add("u_abs", s.u_abs(), "|u|, closed-form coefficient of alpha");
  add("D", Interval(static_cast<long>(D), prec),
      s.degree_bound_exact && !cfg.degree_override ? "splitting field degree (exact)"
                                                   : "splitting field degree (upper bound)");
  add("h_alpha", ch.h_alpha, "absolute logarithmic height of |alpha|");
  add("h_u", ch.h_u, "absolute logarithmic height of |u|");
  add("c1", c1, "k max|lambda_j| sum_j |u_j|");
  add("c2", c2, "log_*(c1/|w|) / log|alpha|");
  add("C1", cert.C1, std::string("dominance constant against |U_{n_1}| (") + to_string(cert.method) + ")");
  for (std::size_t K = 1; K <= k; ++K)
    add("C2^(" + std::to_string(K) + ")", cert.C2_by_K[K - 1],
        std::string("lower bound for |sum_{j<=K} lambda_j alpha^{n_j}| / |alpha|^{n_1} (") + to_string(cert.method) +
            ")");
  add("c3", cert.c3, "lower bound for |sum lambda_j U_{n_j}| / |alpha|^{n_1}");
  add("C4", cert.C4, "sum_{j>=2} |u_j|");
  add("n0", Interval(static_cast<long>(cert.threshold_n0), prec), "index past which the tail argument applies");
  add("d1", ch.d1, "max(1, 2 log|alpha| / log 2)");
  add("A2", ch.A2, "max{D h(alpha), log|alpha|, 0.16}");
  add("CM", ch.CM, "1.4 30^(t+3) t^4.5 D^t (1 + log D), t = s + 2");
  add("logmin", ch.logmin, "log min{|alpha|/|alpha_2|, |alpha|}");

  auto ind = induction_gap_bounds(in, s, cert, D);
  rep.C5_by_m = ind.C5_by_m;
  rep.C6_by_m = ind.C6_by_m;
  rep.C7_by_m = ind.C7_by_m;
  rep.C8_by_m = ind.C8_by_m;
  rep.N_by_m = ind.N_by_m;
  for (std::size_t m = 1; m <= k; ++m)
    add("C5^(" + std::to_string(m) + ")", ind.C5_by_m[m - 1], "height and |log| bound for gamma_m, constant part");
  for (std::size_t m = 2; m <= k; ++m) {
    const std::string sfx = "^(" + std::to_string(m) + ")";
    add("C6" + sfx, ind.C6_by_m[m - 2], "max|lambda| (|u| + max(C1, C4) + (d-1)(m-1) u_max)");
    add("C7" + sfx, ind.C7_by_m[m - 2], "(max(d, c1) + (m-1)(d-1) max|lambda| u_max) / (C2^(m-1) |u|)");
    add("C8" + sfx, ind.C8_by_m[m - 2], "max(C6 / (C2^(m-1) |u|), C7)");
    add("C9^(" + std::to_string(m - 1) + ")", ind.C9_by_m[m - 2],
        "CM (2 + log d1) prod log p_i A2 max(0.16, D C5^(m-1) + D (N_2+...+N_{m-1}) h(alpha))");
    add("N" + std::to_string(m), ind.N_by_m[m - 2], "(C9^(m-1) + log_* C8^(m)) / logmin");
  }
  rep.C9_by_m = ind.C9_by_m;

  // Final step over all k summands.
  Interval umax(prec);
  for (const auto& c : s.coefficients) umax = max(umax, c.abs());
  const Interval lmax = Interval::from_mpz(detail::max_abs_prefix(in.lambdas, k), prec);
  rep.C10 = lmax * umax * (static_cast<long>(k) * (d - 1)) / (cert.C2_by_K[k - 1] * s.u_abs());
  Interval nsum(prec);
  for (const auto& N : ind.N_by_m) nsum = nsum + N;
  Interval a3k = max(ind.C5_by_m[k - 1] * static_cast<long>(D) + nsum * ch.h_alpha * static_cast<long>(D),
                     point_sixteen(prec));
  Interval C9k = ch.common * a3k;
  rep.C9_by_m.push_back(C9k);
  rep.N_max = (C9k + log_star(rep.C10)) / ch.logmin;
  rep.main_bound = petho_deweger_bound(Interval(prec), rep.N_max, k);
  add("C10", rep.C10, "k (d-1) max|lambda| u_max / (C2^(k) |u|)");
  add("C9^(" + std::to_string(k) + ")", C9k,
      "CM (2 + log d1) prod log p_i A2 max(0.16, D C5^(k) + D (N_2+...+N_k) h(alpha))");
  add("N_max", rep.N_max, "(C9^(k) + log_* C10) / logmin");
  add("main_bound", rep.main_bound, "2^k max{N_max (log(k^k N_max))^k, (2e^2)^k}");

  // Vanishing linear forms.
  Interval top = max(rep.main_bound, max(c2 + 1L, Interval(3, prec)));
  bool clamped = false;
  bool unsound_only = false;
  auto absorb = [&](const LambdaZeroBound& z, const std::string& label) {
    rep.lambda_zero_bounds.push_back(z.displayed);
    top = max(top, z.displayed);
    add("L0" + label, z.displayed, "n_1 bound when the linear form vanishes (displayed form, c3 in the log)");
    if (z.sound) {
      rep.lambda_zero_bounds_sound.push_back(*z.sound);
      top = max(top, *z.sound);
      add("L0" + label + "_sound", *z.sound, "same bound from h(x/y) >= h(x) - h(y)");
    } else {
      unsound_only = true;
    }
    clamped = clamped || z.clamped;
  };
  for (std::size_t m = 2; m <= k; ++m)
    absorb(lambda_zero_branch(m - 1, in, s, cert, ind.N_by_m, ch), "^(" + std::to_string(m) + ")");
  absorb(lambda_zero_branch(k, in, s, cert, ind.N_by_m, ch), "_final");

  rep.n1_bound = top.ceil_upper();
  for (std::size_t i = 0; i < in.s(); ++i) rep.z_bounds.push_back(z_bound(in.primes[i], rep.n1_bound, s, c2));

  rep.notes.push_back(std::string("dominance: ") + to_string(cert.method) + ", exhaustive window n_1 <= " +
                      std::to_string(cert.window));
  if (!cert.caveat.empty()) rep.notes.push_back(cert.caveat);
  if (clamped) rep.notes.push_back("a negative Petho-de Weger input u was clamped to 0");
  if (unsound_only)
    rep.notes.push_back("log|alpha| <= h(alpha): the vanishing-form bound uses only the displayed derivation");
  if (!s.degree_bound_exact && !cfg.degree_override)
    rep.notes.push_back("D is the upper bound d! = " + std::to_string(D));
  return rep;
}

/// analyze_spectrum + certify_dominance + compute_bound.
inline BoundReport run_bound(const Instance& in, Precision prec, Precision ceiling, const BoundConfig& cfg = {}) {
  validate(in);
  auto s = analyze_spectrum(in.spec, prec, ceiling);
  auto cert = certify_dominance(in, s, cfg.dominance);
  return compute_bound(in, s, cert, cfg);
}

}  // namespace effbound
