#pragma once

/**
 * @file algebraic.hpp
 * @brief Exact factorisation of squarefree integer polynomials driven by
 * certified root enclosures, and recovery of integer polynomials from
 * enclosures of their roots.
 *
 * A factor is found by searching the smallest subset of roots (containing a
 * pivot) whose product has integer coefficients and divides the polynomial
 * exactly. The subset is then confirmed to be the root set of the factor by
 * excluding every other root.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"
#include "polynomial.hpp"

namespace effbound {

/// Coefficients of scale * prod (x - r_i), rounded to the unique integer in
/// each enclosure. nullopt if some coefficient is not an integer, or if an
/// enclosure is too wide to tell.
inline std::optional<IntPoly> integer_poly_from_roots(std::span<const ComplexInterval> roots, const mpz_class& scale,
                                                      Precision prec) {
  std::vector<ComplexInterval> c;
  c.emplace_back(Interval::from_mpz(scale, prec));
  for (const auto& r : roots) {
    std::vector<ComplexInterval> next(c.size() + 1, ComplexInterval(Interval(prec)));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= c[i] * r;
    }
    c = std::move(next);
  }
  std::vector<mpz_class> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i].im().contains_zero()) return std::nullopt;
    if (!c[i].re().unique_integer(out[i])) return std::nullopt;
  }
  return IntPoly(std::move(out));
}

struct IrreducibleFactor {
  IntPoly poly;                       // primitive, positive leading coefficient
  std::vector<std::size_t> root_indices;
};

namespace detail {

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<IrreducibleFactor> factor_monic(const IntPoly& g, const std::vector<ComplexInterval>& roots,
                                                   Precision prec) {
  std::vector<IrreducibleFactor> factors;
  std::vector<std::size_t> remaining(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) remaining[i] = i;
  IntPoly rest = g;
  while (!remaining.empty()) {
    const std::size_t pivot = remaining.front();
    std::vector<std::size_t> others(remaining.begin() + 1, remaining.end());
    bool found = false;
    for (std::size_t extra = 0; extra <= others.size() && !found; ++extra) {
      std::vector<std::size_t> pick(extra);
      for (std::size_t i = 0; i < extra; ++i) pick[i] = i;
      do {
        std::vector<std::size_t> subset{pivot};
        for (auto p : pick) subset.push_back(others[p]);
        std::vector<ComplexInterval> rs;
        for (auto s : subset) rs.push_back(roots[s]);
        auto cand = integer_poly_from_roots(rs, mpz_class(1), prec);
        if (!cand) continue;
        auto quot = exact_quotient(rest, *cand);
        if (!quot) continue;
        // The candidate divides exactly; confirm its roots are this subset.
        for (auto r : remaining) {
          if (std::find(subset.begin(), subset.end(), r) != subset.end()) continue;
          if (evaluate(*cand, roots[r]).contains_zero())
            fail(ErrorKind::PrecisionExhausted, "root enclosures too wide to separate polynomial factors");
        }
        std::sort(subset.begin(), subset.end());
        factors.push_back({*cand, subset});
        rest = *quot;
        std::vector<std::size_t> left;
        for (auto r : remaining)
          if (std::find(subset.begin(), subset.end(), r) == subset.end()) left.push_back(r);
        remaining = std::move(left);
        found = true;
        break;
      } while (extra > 0 && next_combination(pick, others.size()));
    }
    require(found, ErrorKind::PrecisionExhausted, "failed to recover an integer factor from root enclosures");
  }
  return factors;
}

}  // namespace detail

/// Irreducible factorisation over Q of a squarefree integer polynomial,
/// given certified enclosures of all of its roots (in any order). Each
/// factor records which roots it owns.
inline std::vector<IrreducibleFactor> factor_by_roots(const IntPoly& f, const std::vector<ComplexInterval>& roots) {
  require(static_cast<int>(roots.size()) == f.degree(), ErrorKind::DomainError,
          "factor_by_roots needs one enclosure per root");
  Precision prec = 0;
  for (const auto& r : roots) prec = std::max(prec, r.precision());
  const mpz_class lc = f.leading();
  if (lc == 1) return detail::factor_monic(f, roots, prec);
  // g(y) = lc^(n-1) f(y / lc) is monic with roots lc * r.
  const int n = f.degree();
  std::vector<mpz_class> gc(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(n - 1 - std::min(i, n - 1)));
    gc[static_cast<std::size_t>(i)] = (i == n) ? mpz_class(1) : f[static_cast<std::size_t>(i)] * p;
  }
  IntPoly g(std::move(gc));
  std::vector<ComplexInterval> scaled;
  const Interval lci = Interval::from_mpz(lc, prec);
  for (const auto& r : roots) scaled.push_back(r * lci);
  auto monic = detail::factor_monic(g, scaled, prec);
  std::vector<IrreducibleFactor> out;
  for (auto& fac : monic) {
    // G(lc x), made primitive.
    std::vector<mpz_class> c = fac.poly.coeffs();
    mpz_class p = 1;
    for (auto& x : c) {
      x *= p;
      p *= lc;
    }
    out.push_back({primitive_part(IntPoly(std::move(c))), fac.root_indices});
  }
  return out;
}

}  // namespace effbound
