#pragma once

/**
 * @file search.hpp
 * @brief Exhaustive enumeration of the solutions with n_1 <= cap, and the
 * check of a bound report against them.
 */

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "bound_engine.hpp"
#include "dominance.hpp"
#include "errors.hpp"
#include "instance.hpp"
#include "parallel.hpp"
#include "recurrence.hpp"

namespace effbound {

struct Solution {
  std::vector<std::size_t> n;
  std::vector<unsigned long> z;

  auto operator<=>(const Solution&) const = default;
};

struct SearchResult {
  std::vector<Solution> solutions;  // n_1 >= 3
  std::vector<Solution> small;      // n_1 < 3, outside the theorem's range
};

inline mpz_class eval_lhs(const Instance& in, const std::vector<mpz_class>& U, const std::vector<std::size_t>& n) {
  require(n.size() == in.k(), ErrorKind::DomainError, "index tuple has the wrong length");
  for (std::size_t j = 1; j < n.size(); ++j)
    require(n[j - 1] > n[j], ErrorKind::DomainError, "index tuple must be strictly descending");
  mpz_class acc = 0;
  for (std::size_t j = 0; j < n.size(); ++j) acc += in.lambdas[j] * U[n[j]];
  return acc;
}

inline mpz_class eval_lhs(const Instance& in, const std::vector<std::size_t>& n) {
  require(!n.empty(), ErrorKind::DomainError, "empty index tuple");
  return eval_lhs(in, terms(in.spec, n.front() + 1), n);
}

/// z with value == w * prod p_i^z_i, or nullopt.
inline std::optional<std::vector<unsigned long>> factor_over_primes(const mpz_class& value, const mpz_class& w,
                                                                    const std::vector<unsigned long>& primes) {
  require(w != 0, ErrorKind::DomainError, "w must be non-zero");
  if (value == 0 || sgn(value) != sgn(w)) return std::nullopt;
  if (!mpz_divisible_p(value.get_mpz_t(), w.get_mpz_t())) return std::nullopt;
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), value.get_mpz_t(), w.get_mpz_t());
  std::vector<unsigned long> z(primes.size(), 0);
  mpz_class p;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (q == 1) break;
    p = primes[i];
    z[i] = mpz_remove(q.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  }
  if (q != 1) return std::nullopt;
  return z;
}

inline SearchResult search(const Instance& in, std::size_t cap, unsigned threads = 1) {
  validate(in);
  const std::size_t k = in.k();
  SearchResult out;
  if (cap + 1 < k) return out;
  const auto U = terms(in.spec, cap + 1);
  std::vector<std::vector<Solution>> per_head(cap + 1);
  parallel_for(cap + 1, threads, [&](std::size_t n1) {
    mpz_class acc;
    detail::for_each_tuple_with_head(n1, k, [&](const std::vector<std::size_t>& n) {
      acc = 0;
      for (std::size_t j = 0; j < k; ++j) acc += in.lambdas[j] * U[n[j]];
      if (auto z = factor_over_primes(acc, in.w, in.primes)) per_head[n1].push_back({n, std::move(*z)});
    });
    std::sort(per_head[n1].begin(), per_head[n1].end());
  });
  for (std::size_t n1 = 0; n1 <= cap; ++n1)
    for (auto& sol : per_head[n1]) (n1 < 3 ? out.small : out.solutions).push_back(std::move(sol));
  return out;
}

struct Violation {
  Solution solution;
  std::string what;
};

struct VerificationOutcome {
  std::size_t checked = 0;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks n_1 <= n1_bound, z_i <= z_bounds[i], and z_i log p_i < 2 n_1 log|alpha|
/// whenever n_1 > c_2, for every solution (including those with n_1 < 3).
inline VerificationOutcome verify_solutions(const Instance& in, const SpectralData& s, const mpz_class& n1_bound,
                                            const std::vector<mpz_class>& z_bounds, const Interval& c2,
                                            const SearchResult& found) {
  require(z_bounds.size() == in.s(), ErrorKind::DomainError, "report has the wrong number of z bounds");
  const Precision prec = s.precision;
  const Interval two_log_alpha = log(s.alpha_abs) * 2L;
  std::vector<Interval> log_p;
  for (auto p : in.primes) log_p.push_back(log(Interval(static_cast<long>(p), prec)));
  VerificationOutcome out;
  auto check = [&](const Solution& sol) {
    ++out.checked;
    const std::size_t n1 = sol.n.front();
    if (mpz_class(static_cast<unsigned long>(n1)) > n1_bound)
      out.violations.push_back({sol, "n_1 exceeds n1_bound"});
    const Interval in1(static_cast<long>(n1), prec);
    const bool past_c2 = in1.certainly_greater(c2);
    for (std::size_t i = 0; i < in.s(); ++i) {
      if (mpz_class(sol.z[i]) > z_bounds[i])
        out.violations.push_back({sol, "z_" + std::to_string(i + 1) + " exceeds its bound"});
      if (!past_c2) continue;
      Interval lhs = Interval(static_cast<long>(sol.z[i]), prec) * log_p[i];
      Interval rhs = two_log_alpha * in1;
      if (!lhs.certainly_less(rhs))
        out.violations.push_back({sol, "z_" + std::to_string(i + 1) + " breaks z_i < 2 n_1 log|alpha| / log p_i"});
    }
  };
  for (const auto& sol : found.small) check(sol);
  for (const auto& sol : found.solutions) check(sol);
  return out;
}

inline VerificationOutcome verify_report(const Instance& in, const SpectralData& s, const BoundReport& rep,
                                         std::size_t cap, unsigned threads = 1) {
  return verify_solutions(in, s, rep.n1_bound, rep.z_bounds, rep.c2, search(in, cap, threads));
}

}  // namespace effbound
