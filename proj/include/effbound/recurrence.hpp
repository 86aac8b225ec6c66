#pragma once

/**
 * @file recurrence.hpp
 * @brief Integer linear recurrences U_n = a_1 U_{n-1} + ... + a_d U_{n-d},
 * their companion polynomial, and certified spectral data.
 *
 * analyze_spectrum decides every hypothesis exactly or with disjoint
 * enclosures: squarefreeness by a gcd over Q, non-degeneracy by an exact
 * test on the polynomial whose roots are the m-th powers of the roots, and
 * dominance by separated modulus enclosures. The dominant root of a real
 * polynomial is necessarily real (a non-real root shares its modulus with
 * its conjugate), so alpha is stored as a real interval.
 */

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "algebraic.hpp"
#include "errors.hpp"
#include "interval.hpp"
#include "polynomial.hpp"
#include "roots.hpp"

namespace effbound {

struct RecurrenceSpec {
  std::vector<mpz_class> coefficients;   // a_1 .. a_d
  std::vector<mpz_class> initial_terms;  // U_0 .. U_{d-1}

  std::size_t order() const { return coefficients.size(); }

  static RecurrenceSpec fibonacci() { return {{1, 1}, {0, 1}}; }
  static RecurrenceSpec tribonacci() { return {{1, 1, 1}, {0, 0, 1}}; }
};

/// Throws InvalidInstance when the spec is malformed.
inline void validate(const RecurrenceSpec& spec) {
  const std::size_t d = spec.order();
  require(d >= 2, ErrorKind::InvalidInstance, "recurrence order must be at least 2");
  require(spec.coefficients.back() != 0, ErrorKind::InvalidInstance,
          "last recurrence coefficient a_d must be non-zero (otherwise the order is smaller)");
  require(spec.initial_terms.size() == d, ErrorKind::InvalidInstance,
          "expected " + std::to_string(d) + " initial terms, got " + std::to_string(spec.initial_terms.size()));
  // d + 1 equal consecutive terms force a constant sequence.
  std::vector<mpz_class> t = spec.initial_terms;
  mpz_class next = 0;
  for (std::size_t i = 0; i < d; ++i) next += spec.coefficients[i] * t[d - 1 - i];
  t.push_back(next);
  bool constant = std::all_of(t.begin(), t.end(), [&](const mpz_class& x) { return x == t.front(); });
  require(!constant, ErrorKind::InvalidInstance, "the sequence is constant");
}

/// U_0 .. U_{count-1}.
inline std::vector<mpz_class> terms(const RecurrenceSpec& spec, std::size_t count) {
  const std::size_t d = spec.order();
  std::vector<mpz_class> u;
  u.reserve(std::max(count, d));
  for (std::size_t i = 0; i < d; ++i) u.push_back(spec.initial_terms[i]);
  for (std::size_t n = d; n < count; ++n) {
    mpz_class acc = 0;
    for (std::size_t i = 0; i < d; ++i) acc += spec.coefficients[i] * u[n - 1 - i];
    u.push_back(std::move(acc));
  }
  u.resize(count);
  return u;
}

inline mpz_class term(const RecurrenceSpec& spec, std::size_t n) { return terms(spec, n + 1).back(); }

/// x^d - a_1 x^{d-1} - ... - a_d.
inline IntPoly companion_polynomial(const RecurrenceSpec& spec) {
  const std::size_t d = spec.order();
  std::vector<mpz_class> c(d + 1);
  c[d] = 1;
  for (std::size_t i = 1; i <= d; ++i) c[d - i] = -spec.coefficients[i - 1];
  return IntPoly(std::move(c));
}

namespace detail {

inline unsigned long euler_phi(unsigned long m) {
  unsigned long result = m;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

}  // namespace detail

/// Polynomial whose roots are the m-th powers of the roots of the monic
/// integer polynomial f (with multiplicity), built from exact power sums.
inline IntPoly power_polynomial(const IntPoly& f, unsigned long m) {
  require(f.degree() >= 1 && f.leading() == 1, ErrorKind::DomainError, "power_polynomial needs a monic polynomial");
  const std::size_t d = static_cast<std::size_t>(f.degree());
  // f = x^d - a_1 x^{d-1} - ... - a_d
  std::vector<mpz_class> a(d + 1);
  for (std::size_t i = 1; i <= d; ++i) a[i] = -f[d - i];
  const std::size_t top = d * m;
  std::vector<mpz_class> p(top + 1);
  p[0] = static_cast<long>(d);
  for (std::size_t k = 1; k <= top; ++k) {
    mpz_class acc = 0;
    for (std::size_t i = 1; i <= std::min(k - 1, d); ++i) acc += a[i] * p[k - i];
    if (k <= d) acc += static_cast<long>(k) * a[k];
    p[k] = acc;
  }
  // Newton's identities on P_k = p_{k m}.
  std::vector<mpz_class> e(d + 1);
  e[0] = 1;
  for (std::size_t k = 1; k <= d; ++k) {
    mpz_class acc = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      mpz_class term = e[k - i] * p[i * m];
      if (i % 2 == 1) acc += term; else acc -= term;
    }
    mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(k));
    e[k] = acc;
  }
  std::vector<mpz_class> c(d + 1);
  for (std::size_t k = 0; k <= d; ++k) c[d - k] = (k % 2 == 0) ? e[k] : mpz_class(-e[k]);
  return IntPoly(std::move(c));
}

/// True iff no ratio of two distinct roots is a root of unity.
///
/// A ratio of roots of a degree-d polynomial has degree at most d^2 over Q,
/// so a root of unity of order m among them needs phi(m) <= d^2, which forces
/// m <= 2 d^4. For each such m, pairs whose ratio^m enclosure excludes 1 are
/// settled numerically; anything left is decided exactly by asking whether
/// the polynomial of m-th powers of the roots is squarefree.
inline bool check_nondegenerate(const std::vector<ComplexInterval>& roots, const IntPoly& f) {
  const std::size_t d = roots.size();
  require(static_cast<int>(d) == f.degree(), ErrorKind::DomainError, "need one enclosure per root");
  std::vector<std::pair<std::size_t, std::size_t>> suspects;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (roots[i].abs().overlaps(roots[j].abs())) suspects.emplace_back(i, j);
  if (suspects.empty()) return true;
  const unsigned long bound = static_cast<unsigned long>(d * d);
  const unsigned long m_max = 2 * bound * bound;
  for (unsigned long m = 2; m <= m_max; ++m) {
    if (detail::euler_phi(m) > bound) continue;
    bool unresolved = false;
    for (auto [i, j] : suspects) {
      ComplexInterval ratio = roots[i] / roots[j];
      if (pow(ratio, m).contains_one()) {
        unresolved = true;
        break;
      }
    }
    if (!unresolved) continue;
    if (!is_squarefree(power_polynomial(f, m))) return false;
  }
  return true;
}

struct SpectralData {
  IntPoly companion;
  std::vector<ComplexInterval> roots;         // descending modulus, roots[0] is alpha
  std::vector<ComplexInterval> coefficients;  // closed-form u_j, aligned with roots
  Interval alpha;                             // dominant root (real)
  Interval alpha_abs;
  Interval alpha2_modulus;                    // max_{j >= 2} |alpha_j|
  std::vector<std::size_t> alpha_conjugates;  // indices of the conjugates of alpha
  IntPoly alpha_min_poly;
  IntPoly u_char_poly;                        // primitive, roots are the conjugates of u (with multiplicity)
  unsigned long degree_bound = 1;
  bool degree_bound_exact = false;
  Precision precision = 0;

  std::size_t order() const { return roots.size(); }
  const ComplexInterval& u() const { return coefficients.front(); }
  Interval u_abs() const { return coefficients.front().abs(); }
};

struct SpectralConfig {
  Precision precision = 128;
  Precision ceiling = 8192;
};

namespace detail {

inline unsigned long factorial(unsigned long n) {
  unsigned long r = 1;
  for (unsigned long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline bool is_square(const mpz_class& x) { return x >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0; }

/// [Q(roots of f) : Q], exact for d <= 3; d! otherwise.
inline std::pair<unsigned long, bool> splitting_degree(const IntPoly& f, const std::vector<IrreducibleFactor>& factors) {
  const int d = f.degree();
  if (d > 3) return {factorial(static_cast<unsigned long>(d)), false};
  int max_deg = 0;
  for (const auto& fac : factors) max_deg = std::max(max_deg, fac.poly.degree());
  if (max_deg <= 1) return {1, true};
  if (max_deg == 2) return {2, true};
  return {is_square(cubic_discriminant(f)) ? 3UL : 6UL, true};
}

// q(x) = f(x) / (x - r) by synthetic division.
inline std::vector<ComplexInterval> deflate(const IntPoly& f, const ComplexInterval& r) {
  const std::size_t d = static_cast<std::size_t>(f.degree());
  const Precision prec = r.precision();
  std::vector<ComplexInterval> q(d, ComplexInterval(Interval(prec)));
  q[d - 1] = ComplexInterval(Interval::from_mpz(f[d], prec));
  for (std::size_t i = d - 1; i >= 1; --i) q[i - 1] = ComplexInterval(Interval::from_mpz(f[i], prec)) + r * q[i];
  return q;
}

}  // namespace detail

/// Closed-form coefficients u_j solving sum_j u_j alpha_j^n = U_n for
/// n < d, via the explicit inverse of the Vandermonde matrix:
/// u_j = (sum_n U_n [x^n] f(x)/(x - alpha_j)) / f'(alpha_j).
inline std::vector<ComplexInterval> closed_form_coefficients(const RecurrenceSpec& spec, const IntPoly& f,
                                                             const std::vector<ComplexInterval>& roots) {
  const IntPoly df = f.derivative();
  std::vector<ComplexInterval> u;
  u.reserve(roots.size());
  for (const auto& r : roots) {
    const Precision prec = r.precision();
    auto q = detail::deflate(f, r);
    ComplexInterval num{Interval(prec)};
    for (std::size_t n = 0; n < q.size(); ++n) num += q[n] * Interval::from_mpz(spec.initial_terms[n], prec);
    u.push_back(num / evaluate(df, r));
  }
  return u;
}

namespace detail {

// R * prod_{j in S} (x - u_j) with R = prod_{j in S} f'(alpha_j) has integer
// coefficients (each is a symmetric function of algebraic integers).
inline std::optional<IntPoly> coefficient_char_poly(const IntPoly& f, const std::vector<ComplexInterval>& roots,
                                                    const std::vector<ComplexInterval>& u,
                                                    const std::vector<std::size_t>& conj, Precision prec) {
  const IntPoly df = f.derivative();
  ComplexInterval norm(Interval(1, prec));
  std::vector<ComplexInterval> us;
  for (auto j : conj) {
    norm = norm * evaluate(df, roots[j]);
    us.push_back(u[j]);
  }
  mpz_class r;
  if (!norm.im().contains_zero() || !norm.re().unique_integer(r)) return std::nullopt;
  auto p = integer_poly_from_roots(us, r, prec);
  if (!p) return std::nullopt;
  return primitive_part(*p);
}

}  // namespace detail

/// Certified spectral analysis of the companion polynomial.
inline SpectralData analyze_spectrum(const RecurrenceSpec& spec, const SpectralConfig& config = {}) {
  validate(spec);
  const IntPoly f = companion_polynomial(spec);
  require(is_squarefree(f), ErrorKind::NotSimple,
          "companion polynomial " + f.to_string() + " has a repeated root");
  const std::size_t d = spec.order();
  Precision prec = config.precision;
  bool degeneracy_checked = false;
  while (true) {
    require(prec <= config.ceiling, ErrorKind::PrecisionExhausted,
            "spectral analysis did not certify within " + std::to_string(config.ceiling) + " bits");
    RootIsolation iso = isolate_roots(f, prec, config.ceiling);
    prec = std::max(prec, iso.precision);
    std::vector<ComplexInterval> roots = std::move(iso.roots);
    if (!degeneracy_checked) {
      require(check_nondegenerate(roots, f), ErrorKind::Degenerate,
              "a ratio of two roots of " + f.to_string() + " is a root of unity");
      degeneracy_checked = true;
    }
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> mods(d);
    for (std::size_t i = 0; i < d; ++i) mods[i] = roots[i].abs().mid_d();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return mods[a] > mods[b]; });
    std::vector<ComplexInterval> sorted;
    for (auto i : order) sorted.push_back(roots[i]);
    roots = std::move(sorted);

    require(roots[0].is_real(), ErrorKind::NoDominantRoot,
            "the root of largest modulus is not real, so its conjugate has the same modulus");
    Interval top = roots[0].abs();
    Interval second = roots[1].abs();
    for (std::size_t j = 2; j < d; ++j) second = max(second, roots[j].abs());
    if (!top.certainly_greater(second)) {
      prec *= 2;
      if (prec > config.ceiling)
        fail(ErrorKind::NoDominantRoot, "the two largest root moduli could not be separated");
      continue;
    }
    if (!top.certainly_greater(Interval(1, prec))) {
      fail(ErrorKind::DominantRootNotGreaterThanOne, "the dominant root has modulus at most 1");
    }

    std::vector<ComplexInterval> u = closed_form_coefficients(spec, f, roots);
    std::vector<IrreducibleFactor> factors;
    try {
      factors = factor_by_roots(f, roots);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PrecisionExhausted) throw;
      prec *= 2;
      continue;
    }
    const IrreducibleFactor* alpha_factor = nullptr;
    for (const auto& fac : factors)
      if (std::find(fac.root_indices.begin(), fac.root_indices.end(), std::size_t{0}) != fac.root_indices.end())
        alpha_factor = &fac;
    auto char_poly = detail::coefficient_char_poly(f, roots, u, alpha_factor->root_indices, prec);
    if (!char_poly) {
      prec *= 2;
      continue;
    }
    // u = 0 exactly iff its norm (the constant term) vanishes.
    require((*char_poly)[0] != 0, ErrorKind::ZeroDominantCoefficient,
            "the closed-form coefficient of the dominant root is zero; the sequence satisfies a shorter recurrence");
    if (u[0].abs().contains_zero()) {
      prec *= 2;
      continue;
    }

    SpectralData s;
    s.companion = f;
    s.alpha = roots[0].re();
    s.alpha_abs = top;
    s.alpha2_modulus = second;
    s.roots = std::move(roots);
    s.coefficients = std::move(u);
    s.alpha_conjugates = alpha_factor->root_indices;
    s.alpha_min_poly = alpha_factor->poly;
    s.u_char_poly = *char_poly;
    auto [deg, exact] = detail::splitting_degree(f, factors);
    s.degree_bound = deg;
    s.degree_bound_exact = exact;
    s.precision = prec;
    return s;
  }
}

inline SpectralData analyze_spectrum(const RecurrenceSpec& spec, Precision precision, Precision ceiling = 8192) {
  return analyze_spectrum(spec, SpectralConfig{precision, ceiling});
}

/// Checks that the enclosure of u alpha^n + sum u_j alpha_j^n contains U_n
/// and is narrower than `tol` for every 0 <= n <= N.
inline bool verify_closed_form(const RecurrenceSpec& spec, const SpectralData& spectral, std::size_t N,
                               const Interval& tol) {
  const auto exact = terms(spec, N + 1);
  const Precision prec = spectral.precision;
  std::vector<ComplexInterval> powers(spectral.order(), ComplexInterval(Interval(1, prec)));
  for (std::size_t n = 0; n <= N; ++n) {
    ComplexInterval sum{Interval(prec)};
    for (std::size_t j = 0; j < spectral.order(); ++j) sum += spectral.coefficients[j] * powers[j];
    if (!sum.re().contains(exact[n]) || !sum.im().contains_zero()) return false;
    if (!sum.re().width().certainly_less(tol) || !sum.im().width().certainly_less(tol)) return false;
    for (std::size_t j = 0; j < spectral.order(); ++j) powers[j] = powers[j] * spectral.roots[j];
  }
  return true;
}

}  // namespace effbound
