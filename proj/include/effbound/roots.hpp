#pragma once

/**
 * @file roots.hpp
 * @brief Certified isolation of all complex roots of a squarefree integer
 * polynomial.
 *
 * Approximations come from Aberth iteration (long double seeds, then MPFR
 * refinement). Certification uses the Weierstrass inclusion theorem: with
 * W_i = f(z_i) / (lc * prod_{j != i} (z_i - z_j)), every root lies in the
 * union of the disks |z - z_i| <= n |W_i|, and a connected component made of
 * m disks holds exactly m roots. When the disks are pairwise disjoint, each
 * holds exactly one root. Centres snapped to the real axis give a disk that
 * is symmetric under conjugation, so its single root is real.
 */

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"
#include "polynomial.hpp"

namespace effbound {

struct RootIsolation {
  std::vector<ComplexInterval> roots;
  std::vector<ComplexInterval> centers;
  Precision precision = 0;
};

namespace detail {

inline std::vector<std::complex<long double>> aberth_seeds(const IntPoly& f) {
  using C = std::complex<long double>;
  const int n = f.degree();
  std::vector<long double> c(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_set_z(t, f[static_cast<std::size_t>(i)].get_mpz_t(), MPFR_RNDN);
    c[static_cast<std::size_t>(i)] = mpfr_get_ld(t, MPFR_RNDN);
    mpfr_clear(t);
  }
  auto eval = [&](C z, C& deriv) {
    C p = 0, dp = 0;
    for (int i = n; i >= 0; --i) {
      dp = dp * z + p;
      p = p * z + c[static_cast<std::size_t>(i)];
    }
    deriv = dp;
    return p;
  };
  long double radius = 0;
  for (int i = 0; i < n; ++i)
    radius = std::max(radius, std::pow(std::fabs(c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(n)]),
                                       1.0L / static_cast<long double>(n - i)));
  radius = std::max<long double>(radius, 1e-3L);
  std::vector<C> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    long double theta = 2 * std::numbers::pi_v<long double> * k / n + 0.4L;
    z[static_cast<std::size_t>(k)] = std::polar(radius, theta);
  }
  for (int iter = 0; iter < 500; ++iter) {
    long double worst = 0;
    for (int i = 0; i < n; ++i) {
      C d;
      C p = eval(z[static_cast<std::size_t>(i)], d);
      if (p == C(0)) continue;
      C ratio = (d == C(0)) ? C(1e-6L) : p / d;
      C s = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0L / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
      C w = ratio / (1.0L - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = C(1e-6L, 1e-6L);
      z[static_cast<std::size_t>(i)] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(z[static_cast<std::size_t>(i)])));
    }
    if (worst < 1e-17L) break;
  }
  return z;
}

inline ComplexInterval point(long double re, long double im, Precision prec) {
  Interval a(prec), b(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  mpfr_set_ld(t, re, MPFR_RNDN);
  a = Interval::from_bounds(t, t, prec);
  mpfr_set_ld(t, im, MPFR_RNDN);
  b = Interval::from_bounds(t, t, prec);
  mpfr_clear(t);
  return {a, b};
}

// Aberth refinement on point values (intervals collapsed to midpoints).
inline void aberth_refine(const IntPoly& f, std::vector<ComplexInterval>& z, Precision prec) {
  const std::size_t n = z.size();
  const IntPoly df = f.derivative();
  for (auto& x : z) x = x.with_precision(prec).mid();
  Interval tol(1, prec);
  tol = tol.mul_2si(-static_cast<long>(prec) + 8);
  const int max_iter = 60 + static_cast<int>(prec / 8);
  for (int iter = 0; iter < max_iter; ++iter) {
    bool converged = true;
    for (std::size_t i = 0; i < n; ++i) {
      ComplexInterval p = evaluate(f, z[i]).mid();
      if (p.contains_zero()) continue;
      ComplexInterval d = evaluate(df, z[i]).mid();
      ComplexInterval s{Interval(prec), Interval(prec)};
      bool ok = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        ComplexInterval diff = (z[i] - z[j]).mid();
        if (diff.contains_zero()) {
          ok = false;
          break;
        }
        s = (s + (ComplexInterval(Interval(1, prec)) / diff).mid()).mid();
      }
      if (!ok || d.contains_zero()) {
        // Nudge coincident or critical approximations apart.
        z[i] = (z[i] + ComplexInterval(Interval(1, prec).mul_2si(-40), Interval(1, prec).mul_2si(-41))).mid();
        converged = false;
        continue;
      }
      ComplexInterval ratio = (p / d).mid();
      ComplexInterval denom = (ComplexInterval(Interval(1, prec)) - (ratio * s).mid()).mid();
      ComplexInterval w = denom.contains_zero() ? ratio : (ratio / denom).mid();
      z[i] = (z[i] - w).mid();
      Interval scale = max(Interval(1, prec), z[i].abs().mid());
      if (!(w.abs().mid() / scale).certainly_less(tol)) converged = false;
    }
    if (converged) break;
  }
}

}  // namespace detail

/// Attempts to certify the current approximations. Returns false when the
/// inclusion disks are not pairwise disjoint.
inline bool certify_roots(const IntPoly& f, const std::vector<ComplexInterval>& centers, Precision prec,
                          std::vector<ComplexInterval>& out) {
  const std::size_t n = centers.size();
  const Interval lc = Interval::from_mpz(f.leading(), prec);
  std::vector<Interval> radius;
  radius.reserve(n);
  try {
    for (std::size_t i = 0; i < n; ++i) {
      ComplexInterval denom(lc);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) denom = denom * (centers[i] - centers[j]);
      ComplexInterval w = evaluate(f, centers[i]) / denom;
      radius.push_back(w.abs() * static_cast<long>(n));
    }
  } catch (const Error&) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Interval dist = (centers[i] - centers[j]).abs();
      if (!dist.certainly_greater(radius[i] + radius[j])) return false;
    }
  out.clear();
  for (std::size_t i = 0; i < n; ++i) {
    Interval r = Interval::hull(-radius[i], radius[i]);
    Interval re = centers[i].re() + r;
    if (centers[i].is_real()) {
      out.emplace_back(re);
    } else {
      out.emplace_back(re, centers[i].im() + r);
    }
  }
  return true;
}

/// Certified enclosures of all roots of a squarefree integer polynomial.
/// Precision doubles from `prec` until the disks separate; past `ceiling`
/// PrecisionExhausted is raised.
inline RootIsolation isolate_roots(const IntPoly& f, Precision prec, Precision ceiling) {
  require(f.degree() >= 1, ErrorKind::DomainError, "root isolation needs a non-constant polynomial");
  require(is_squarefree(f), ErrorKind::NotSimple, "polynomial " + f.to_string() + " has a repeated root");
  const std::size_t n = static_cast<std::size_t>(f.degree());
  RootIsolation result;
  if (n == 1) {
    mpq_class r(-f[0], f[1]);
    r.canonicalize();
    result.roots.emplace_back(Interval::from_mpq(r, prec));
    result.centers = result.roots;
    result.precision = prec;
    return result;
  }
  auto seeds = detail::aberth_seeds(f);
  std::vector<ComplexInterval> z;
  z.reserve(n);
  for (const auto& s : seeds) z.push_back(detail::point(s.real(), s.imag(), prec));
  for (Precision p = prec; p <= ceiling; p *= 2) {
    detail::aberth_refine(f, z, p);
    // Snap approximations that are numerically real onto the real axis.
    Interval snap(1, p);
    snap = snap.mul_2si(-static_cast<long>(p) / 2);
    std::vector<ComplexInterval> centers;
    centers.reserve(n);
    for (const auto& x : z) {
      Interval scale = max(Interval(1, p), x.abs());
      if ((abs(x.im()) / scale).certainly_less(snap)) {
        centers.emplace_back(x.re().mid());
      } else {
        centers.push_back(x.mid());
      }
    }
    std::vector<ComplexInterval> boxes;
    if (certify_roots(f, centers, p, boxes)) {
      result.roots = std::move(boxes);
      result.centers = std::move(centers);
      result.precision = p;
      return result;
    }
  }
  fail(ErrorKind::PrecisionExhausted, "could not isolate the roots of " + f.to_string() + " within the precision ceiling");
}

}  // namespace effbound
