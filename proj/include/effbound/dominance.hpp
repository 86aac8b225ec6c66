#pragma once

/**
 * @file dominance.hpp
 * @brief Constants C_1, C_2^(K) and c_3 behind the dominance hypothesis
 *
 *   |lambda_1 U_{n_1} + ... + lambda_k U_{n_k}| > C_1 |U_{n_1}|,
 *   |lambda_1 alpha^{n_1} + ... + lambda_K alpha^{n_K}| > C_2^(K) |alpha|^{n_1},
 *   |lambda_1 U_{n_1} + ... + lambda_k U_{n_k}| > c_3 |alpha|^{n_1}
 *
 * for all n_1 > ... > n_k >= 0.
 *
 * C_2 comes either from the all-positive case (the sum is at least its
 * first term) or from a user value checked on a finite window of gap
 * tuples. Given C_2^(k), the closed form gives
 *   |sum lambda_j U_{n_j}| >= |u| C_2 |alpha|^{n_1} - (sum |lambda_j|) C_4 max(1,|alpha_2|)^{n_1},
 * so past an explicit n_0 the tail eats at most a fraction r of the main
 * term. Below n_0 every tuple is checked exactly.
 */

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "algebraic.hpp"
#include "instance.hpp"
#include "interval.hpp"
#include "parallel.hpp"
#include "recurrence.hpp"

namespace effbound {

enum class DominanceMethod { AnalyticPositive, UserSuppliedVerified };

constexpr const char* to_string(DominanceMethod m) {
  return m == DominanceMethod::AnalyticPositive ? "analytic-positive-case" : "user-supplied-verified";
}

struct DominanceConfig {
  std::optional<std::string> c2_override;  // decimal literal
  std::string tail_ratio = "0.5";          // r in (0, 1)
  std::size_t min_window = 60;             // exhaustive window is max(n_0, min_window)
  unsigned threads = 1;
};

struct DominanceCertificate {
  Interval C1;
  std::vector<Interval> C2_by_K;  // index K - 1
  Interval c3;
  Interval C4;                    // sum_{j >= 2} |u_j|
  std::size_t threshold_n0 = 0;
  std::size_t window = 0;         // every tuple with n_1 <= window was checked exactly
  DominanceMethod method = DominanceMethod::AnalyticPositive;
  std::string caveat;
};

namespace detail {

/// Calls fn(n) for every strictly descending tuple n with n[0] == n1 and
/// n.back() >= 0, in lexicographically descending order of the tail.
template <typename Fn>
void for_each_tuple_with_head(std::size_t n1, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> n(k);
  n[0] = n1;
  if (k == 1) {
    fn(n);
    return;
  }
  if (n1 + 1 < k) return;
  // Start at the largest tail and step down like an odometer.
  for (std::size_t j = 1; j < k; ++j) n[j] = n1 - j;
  for (;;) {
    fn(n);
    std::size_t j = k - 1;
    for (;;) {
      const std::size_t floor = k - 1 - j;  // smallest value slot j may take
      if (n[j] > floor) {
        --n[j];
        for (std::size_t i = j + 1; i < k; ++i) n[i] = n[i - 1] - 1;
        // n[i-1] - 1 >= k - 1 - i holds because n[j] >= k - 1 - j.
        break;
      }
      if (j == 1) return;
      --j;
    }
  }
}

/// Interval with both endpoints equal to the lower endpoint of x.
inline Interval lower_point(const Interval& x) { return Interval::from_bounds(x.lower(), x.lower(), x.precision()); }

inline Interval slack(Precision prec) { return Interval(1, prec) - Interval(1, prec).mul_2si(-32); }

}  // namespace detail

/// C_2^(K) = lambda_1 (1 - 2^-64) for every K when alpha > 1 and all
/// lambda_j > 0; nullopt otherwise.
inline std::optional<std::vector<Interval>> derive_c2_positive_case(const Instance& in, const SpectralData& s) {
  if (!s.alpha.certainly_greater(Interval(1, s.precision))) return std::nullopt;
  for (const auto& l : in.lambdas)
    if (l <= 0) return std::nullopt;
  const Precision prec = s.precision;
  Interval c = Interval::from_mpz(in.lambdas.front(), prec) * (Interval(1, prec) - Interval(1, prec).mul_2si(-64));
  return std::vector<Interval>(in.k(), detail::lower_point(c));
}

/// Certified check of |lambda_1 alpha^{n_1} + ... + lambda_K alpha^{n_K}| > C_2 |alpha|^{n_1}
/// for window >= n_1 > ... > n_K >= 0. Only the gaps n_1 - n_j matter, so this
/// enumerates gap tuples 0 < g_2 < ... < g_K <= window.
inline bool verify_c2_window(const Instance& in, const SpectralData& s, const Interval& C2, std::size_t K,
                             std::size_t window, unsigned threads = 1) {
  require(K >= 1 && K <= in.k(), ErrorKind::DomainError, "K out of range");
  require(window + 1 >= K, ErrorKind::DomainError, "window must be at least K - 1");
  const Precision prec = s.precision;
  std::vector<Interval> inv_pow(window + 1, Interval(1, prec));
  const Interval inv = Interval(1, prec) / s.alpha;
  for (std::size_t g = 1; g <= window; ++g) inv_pow[g] = inv_pow[g - 1] * inv;
  std::vector<Interval> lam;
  for (std::size_t j = 0; j < K; ++j) lam.push_back(Interval::from_mpz(in.lambdas[j], prec));

  // Bucket by the largest gap g_K = top; the inner gaps are K - 2 distinct
  // values in [1, top - 1].
  std::vector<char> ok(window + 1, 1);
  std::vector<char> undecided(window + 1, 0);
  auto check = [&](std::size_t top, const Interval& sum) {
    Interval v = abs(sum);
    if (v.certainly_greater(C2)) return;
    ok[top] = 0;
    if (v.overlaps(C2)) undecided[top] = 1;
  };
  parallel_for(window + 1, threads, [&](std::size_t top) {
    if (K == 1) {
      if (top == 0) check(0, lam[0]);
      return;
    }
    if (top + 1 < K) return;
    const Interval head = lam[0] + lam[K - 1] * inv_pow[top];
    const std::size_t inner = K - 2;
    if (inner == 0) {
      check(top, head);
      return;
    }
    std::vector<std::size_t> idx(inner);
    for (std::size_t i = 0; i < inner; ++i) idx[i] = i;
    do {
      Interval sum = head;
      for (std::size_t i = 0; i < inner; ++i) sum = sum + lam[i + 1] * inv_pow[idx[i] + 1];
      check(top, sum);
    } while (ok[top] && detail::next_combination(idx, top - 1));
  });
  for (std::size_t t = 0; t <= window; ++t) {
    if (undecided[t]) fail(ErrorKind::PrecisionExhausted, "C_2 comparison could not be certified");
    if (!ok[t]) return false;
  }
  return true;
}

/// Searches n_1 <= window for a vanishing sum; returns the first tuple found
/// in (n_1, ..., n_k) lexicographic order.
inline std::optional<std::vector<std::size_t>> find_vanishing_tuple(const Instance& in,
                                                                    const std::vector<mpz_class>& U,
                                                                    std::size_t window, unsigned threads) {
  const std::size_t k = in.k();
  std::vector<std::optional<std::vector<std::size_t>>> hit(window + 1);
  parallel_for(window + 1, threads, [&](std::size_t n1) {
    mpz_class acc;
    detail::for_each_tuple_with_head(n1, k, [&](const std::vector<std::size_t>& n) {
      acc = 0;
      for (std::size_t j = 0; j < k; ++j) acc += in.lambdas[j] * U[n[j]];
      if (acc == 0 && (!hit[n1] || n < *hit[n1])) hit[n1] = n;
    });
  });
  for (auto& h : hit)
    if (h) return h;
  return std::nullopt;
}

inline DominanceCertificate certify_dominance(const Instance& in, const SpectralData& s,
                                              const DominanceConfig& cfg = {}) {
  const Precision prec = s.precision;
  const std::size_t k = in.k();
  const Interval one(1, prec);
  const Interval r = Interval::from_decimal(cfg.tail_ratio, prec);
  require(r.certainly_positive() && r.certainly_less(one), ErrorKind::DomainError, "tail ratio must lie in (0, 1)");

  DominanceCertificate cert;
  cert.C4 = Interval(prec);
  for (std::size_t j = 1; j < s.order(); ++j) cert.C4 = cert.C4 + s.coefficients[j].abs();

  // Every tuple up to the base window must be non-vanishing, whatever C_2 is.
  const auto U0 = terms(in.spec, cfg.min_window + 1);
  if (auto z = find_vanishing_tuple(in, U0, cfg.min_window, cfg.threads)) {
    std::string t;
    for (auto x : *z) t += (t.empty() ? "" : ",") + std::to_string(x);
    fail(ErrorKind::DominanceFails, "the left-hand side vanishes at n=(" + t + ")");
  }

  if (cfg.c2_override) {
    Interval c2 = detail::lower_point(Interval::from_decimal(*cfg.c2_override, prec));
    require(c2.certainly_positive(), ErrorKind::DominanceFails, "C_2 override must be positive");
    for (std::size_t K = 1; K <= k; ++K) {
      if (!verify_c2_window(in, s, c2, K, cfg.min_window, cfg.threads))
        fail(ErrorKind::DominanceFails, "C_2 = " + *cfg.c2_override + " fails the window check for K = " +
                                            std::to_string(K));
    }
    cert.C2_by_K.assign(k, c2);
    cert.method = DominanceMethod::UserSuppliedVerified;
    cert.caveat = "C_2 was supplied by the user and verified for gap tuples up to " +
                  std::to_string(cfg.min_window) +
                  "; vanishing or smaller sums beyond that window are not excluded by this check";
  } else if (auto c2 = derive_c2_positive_case(in, s)) {
    cert.C2_by_K = std::move(*c2);
    cert.method = DominanceMethod::AnalyticPositive;
  } else {
    fail(ErrorKind::DominanceUnsupported,
         "no C_2 for mixed-sign coefficients or a negative dominant root; supply one with --c2");
  }

  // Tail threshold: (sum|lambda|) C_4 rho^n <= r |u| C_2^(k) for n >= n_0.
  const Interval C2k = cert.C2_by_K.back();
  Interval L(prec);
  for (const auto& l : in.lambdas) L = L + Interval::from_mpz(abs(l), prec);
  const Interval rho = max(one, s.alpha2_modulus) / s.alpha_abs;
  const Interval target = r * s.u_abs() * C2k;
  std::size_t n0 = 0;
  {
    Interval lhs = L * cert.C4;
    if (!lhs.certainly_less(target)) {
      Interval est = log(lhs / target) / log(one / rho);
      n0 = static_cast<std::size_t>(std::max(0.0, est.upper_d()));
      Interval pw = pow(rho, static_cast<unsigned long>(n0));
      while (!(lhs * pw).certainly_less(target)) {
        ++n0;
        pw = pw * rho;
        require(n0 < 100000, ErrorKind::PrecisionExhausted, "tail threshold n_0 did not converge");
      }
    }
  }
  cert.threshold_n0 = n0;
  cert.window = std::max(n0, cfg.min_window);

  const Interval c3_tail = (one - r) * s.u_abs() * C2k;
  const Interval C1_tail = (one - r) * C2k / (one + r * C2k / L);

  // Exhaustive minimum of the two ratios over the window.
  const auto U = terms(in.spec, cert.window + 1);
  if (cert.window > cfg.min_window) {
    if (auto z = find_vanishing_tuple(in, U, cert.window, cfg.threads)) {
      std::string t;
      for (auto x : *z) t += (t.empty() ? "" : ",") + std::to_string(x);
      fail(ErrorKind::DominanceFails, "the left-hand side vanishes at n=(" + t + ")");
    }
  }
  std::vector<Interval> apow(cert.window + 1, one);
  for (std::size_t n = 1; n <= cert.window; ++n) apow[n] = apow[n - 1] * s.alpha_abs;
  std::vector<std::optional<mpq_class>> best_c1(cert.window + 1);
  std::vector<std::optional<Interval>> best_c3(cert.window + 1);
  parallel_for(cert.window + 1, cfg.threads, [&](std::size_t n1) {
    mpz_class acc;
    mpz_class lo_abs;
    bool any = false;
    std::optional<mpq_class> q1;
    detail::for_each_tuple_with_head(n1, k, [&](const std::vector<std::size_t>& n) {
      acc = 0;
      for (std::size_t j = 0; j < k; ++j) acc += in.lambdas[j] * U[n[j]];
      mpz_class a = abs(acc);
      if (!any || a < lo_abs) lo_abs = a;
      any = true;
      if (U[n1] != 0) {
        mpq_class q(a, abs(U[n1]));
        q.canonicalize();
        if (!q1 || q < *q1) q1 = q;
      }
    });
    if (!any) return;
    best_c1[n1] = q1;
    best_c3[n1] = Interval::from_mpz(lo_abs, prec) / apow[n1];
  });
  Interval c1 = C1_tail;
  Interval c3 = c3_tail;
  for (std::size_t n1 = 0; n1 <= cert.window; ++n1) {
    if (best_c1[n1]) c1 = min(c1, Interval::from_mpq(*best_c1[n1], prec));
    if (best_c3[n1]) c3 = min(c3, *best_c3[n1]);
  }
  cert.C1 = detail::lower_point(c1 * detail::slack(prec));
  cert.c3 = detail::lower_point(c3 * detail::slack(prec));
  require(cert.C1.certainly_positive() && cert.c3.certainly_positive(), ErrorKind::DominanceFails,
          "dominance constants are not certainly positive");
  return cert;
}

}  // namespace effbound
