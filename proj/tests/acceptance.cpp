// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sys/wait.h>

#include "effbound/effbound.hpp"
#include "oracles.hpp"

using namespace effbound;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

Outcome within(double elapsed, double limit, std::string detail = {}) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs (limit %.0fs)", elapsed, limit);
  if (!detail.empty()) detail += ", ";
  return {elapsed < limit, detail + buf};
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::DomainError;
}

std::string sample(const std::string& name) { return std::string(EFFBOUND_SAMPLES) + "/" + name + ".json"; }

const std::vector<std::string> kPositive = {
    "fibonacci_pow2",       "fibonacci_21_w3_p25",  "fibonacci_11_w3_p257",
    "fibonacci_312_p23",    "tribonacci_312_p257", "tribonacci_312_w3_p2",
};

std::pair<int, std::string> run_cli(const std::string& args) {
  const std::string cmd = "\"" EFFBOUND_EXE "\" " + args + " 2>&1";
  std::pair<int, std::string> r{-1, {}};
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.second.append(buf.data(), n);
  const int status = pclose(p);
  r.first = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome closed_form() {
  const auto t0 = Clock::now();
  const Interval tol = Interval::from_decimal("1e-10", 512);
  for (const auto& spec : {RecurrenceSpec::fibonacci(), RecurrenceSpec::tribonacci()}) {
    const auto s = analyze_spectrum(spec, 512);
    if (!verify_closed_form(spec, s, 300, tol)) return fail("closed form misses U_n or is too wide");
  }
  return within(seconds_since(t0), 5);
}

Outcome fibonacci_powers_of_two() {
  const auto t0 = Clock::now();
  const auto in = load_instance(sample("fibonacci_pow2")).instance;
  const auto r = search(in, 200, default_threads());
  const double elapsed = seconds_since(t0);
  std::set<oracle::Hit> got;
  for (const auto* list : {&r.small, &r.solutions})
    for (const auto& s : *list) got.insert({s.n, s.z});
  if (got != oracle::brute_force({1, 1}, {0, 1}, {1, 1}, 1, {2}, 200)) return fail("differs from brute force");
  for (const oracle::Hit& h : {oracle::Hit{{2, 1}, {1}}, oracle::Hit{{4, 2}, {2}}, oracle::Hit{{5, 4}, {3}},
                               oracle::Hit{{7, 4}, {4}}})
    if (!got.count(h)) return fail("missing a known solution");
  return within(elapsed, 10, std::to_string(got.size()) + " solutions");
}

Outcome bounds_cover_search() {
  const auto t0 = Clock::now();
  std::size_t checked = 0;
  for (const auto& name : kPositive) {
    const auto f = load_instance(sample(name));
    const auto s = analyze_spectrum(f.instance.spec, 256);
    const auto rep = run_bound(f.instance, 256, 8192);
    const auto out = verify_report(f.instance, s, rep, 200, default_threads());
    if (!out.ok()) return fail(name + ": " + out.violations.front().what);
    checked += out.checked;
  }
  return within(seconds_since(t0), 120, std::to_string(kPositive.size()) + " instances, " + std::to_string(checked) +
                                            " solutions");
}

Outcome petho_deweger() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> U(0, 1e6), V(0, 1e3);
  std::uniform_int_distribution<int> H(1, 6);
  for (int i = 0; i < 1000; ++i) {
    const double u = U(rng), v = V(rng);
    const int h = H(rng);
    const long double x0 = oracle::largest_root(u, v, h);
    if (!(x0 < static_cast<long double>(petho_deweger_bound(u, v, static_cast<unsigned long>(h)).lower_d())))
      return fail("bound below the root at sample " + std::to_string(i));
  }
  return within(seconds_since(t0), 10, "1000 inputs");
}

Outcome heights() {
  const Interval tiny = Interval::from_decimal("1e-20", 256);
  const Interval log2 = log(Interval(2, 256));
  for (const auto& q : {rational_number(2, 1), rational_number(1, 2)}) {
    const Interval h = abs_log_height(q, 256);
    if (!h.overlaps(log2) || !h.width().certainly_less(tiny)) return fail("h(2) or h(1/2)");
  }
  const IntPoly golden(std::vector<mpz_class>{-1, -1, 1});
  const auto phi = make_algebraic(golden, isolate_roots(golden, 256, 8192).roots[0]);
  if (!abs_log_height(phi, 256).overlaps(log((sqrt(Interval(5, 256)) + 1L) / 2L) / 2L)) return fail("h(phi)");

  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> coef(-9, 9), lead(1, 6);
  std::uniform_int_distribution<int> pick(0, 1);
  auto quadratic = [&] {
    for (;;) {
      const long a = coef(rng), b = coef(rng), c = lead(rng);
      const long disc = b * b - 4 * a * c;
      if (a == 0) continue;
      if (disc >= 0) {
        const long r = std::llround(std::sqrt(static_cast<double>(disc)));
        if (r * r == disc) continue;
      }
      const IntPoly f = primitive_part(IntPoly(std::vector<mpz_class>{a, b, c}));
      return make_algebraic(f, isolate_roots(f, 256, 8192).roots[static_cast<std::size_t>(pick(rng))]);
    }
  };
  for (int i = 0; i < 200; ++i) {
    const auto eta = quadratic(), gamma = quadratic();
    const Interval he = abs_log_height(eta, 256), hg = abs_log_height(gamma, 256);
    if (abs_log_height(multiply(eta, gamma), 256).certainly_greater(he + hg)) return fail("product inequality");
    if (abs_log_height(add(eta, gamma), 256).certainly_greater(he + hg + log2)) return fail("sum inequality");
    const long k = (i % 9) - 4;
    if (!abs_log_height(power(eta, k), 256).overlaps(he * std::abs(k))) return fail("power identity");
  }
  return {true, "200 random quadratics"};
}

Outcome matveev() {
  auto value = [](unsigned long D, unsigned long t, const char* A, const char* B) {
    MatveevInput in;
    in.D = D;
    in.t = t;
    in.A.assign(t, Interval::from_decimal(A, 256));
    in.B = Interval::from_decimal(B, 256);
    return matveev_log_lower_bound(in);
  };
  if (!abs(value(1, 1, "0.16", "1") + 181440L).certainly_less(Interval::from_decimal("1e-6", 256)))
    return fail("unit case");
  const unsigned long grid[] = {1, 2, 4};
  const char* As[] = {"0.16", "0.32", "0.64", "1.28"};
  const char* Bs[] = {"1", "2", "4", "8"};
  for (int d = 0; d < 3; ++d)
    for (int t = 0; t < 3; ++t)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const Interval base = value(grid[d], grid[t], As[a], Bs[b]);
          if (!value(grid[d] * 2, grid[t], As[a], Bs[b]).certainly_less(base) ||
              !value(grid[d], grid[t] * 2, As[a], Bs[b]).certainly_less(base) ||
              !value(grid[d], grid[t], As[a + 1], Bs[b]).certainly_less(base) ||
              !value(grid[d], grid[t], As[a], Bs[b + 1]).certainly_less(base))
            return fail("not strictly decreasing");
        }
  return {true, "unit case and 81 grid points"};
}

// |sum lambda_j U_{n_j}| > C1 |U_{n_1}| over every tuple with n_1 <= 60.
bool recheck_c1(const Instance& in, const Interval& C1) {
  const std::size_t limit = 60;
  const auto U = terms(in.spec, limit + 1);
  std::vector<std::size_t> n(in.k());
  std::function<bool(std::size_t, std::size_t, mpz_class)> rec = [&](std::size_t j, std::size_t below,
                                                                   mpz_class acc) -> bool {
    if (j == in.k())
      return Interval::from_mpz(abs(acc), 256).certainly_greater(C1 * Interval::from_mpz(abs(U[n[0]]), 256));
    for (std::size_t x = 0; x < below; ++x) {
      n[j] = x;
      if (!rec(j + 1, x, acc + in.lambdas[j] * U[x])) return false;
    }
    return true;
  };
  return rec(0, limit + 1, 0);
}

Outcome dominance() {
  for (const auto& name : kPositive) {
    const auto in = load_instance(sample(name)).instance;
    const auto s = analyze_spectrum(in.spec, 256);
    const auto cert = certify_dominance(in, s);
    if (!recheck_c1(in, cert.C1)) return fail(name + ": C1 violated below 60");
  }
  const auto mixed = load_instance(sample("fibonacci_mixed_sign")).instance;
  const auto kind = kind_of([&] { certify_dominance(mixed, analyze_spectrum(mixed.spec, 256)); });
  if (kind != ErrorKind::DominanceFails) return fail("lambda = (1,-1) not rejected");
  return {true, std::to_string(kPositive.size()) + " instances rechecked, (1,-1) rejected"};
}

Outcome hypotheses() {
  for (const auto& [name, want] : {std::pair{"double_root", ErrorKind::NotSimple},
                                   std::pair{"degenerate", ErrorKind::Degenerate}}) {
    const auto in = load_instance(sample(name)).instance;
    if (kind_of([&] { run_bound(in, 256, 8192); }) != want) return fail(std::string(name) + ": wrong error kind");
    const auto [code, out] = run_cli("bound \"" + sample(name) + "\" --output json");
    if (code != 2 || out.find("n1_bound") != std::string::npos) return fail(std::string(name) + ": CLI produced a report");
  }
  return {true, "NotSimple and Degenerate, exit 2"};
}

Outcome thread_invariance() {
  for (const char* name : {"fibonacci_pow2", "fibonacci_312_p23", "tribonacci_312_p257"})
    for (const char* cmd : {"bound", "search"})
      for (const char* fmt : {"json", "text"}) {
        const std::string base = std::string(cmd) + " \"" + sample(name) + "\" --output " + fmt + " --threads ";
        const auto ref = run_cli(base + "1");
        if (ref.first != 0) return fail(base + "1 exited " + std::to_string(ref.first));
        for (const char* t : {"2", "3", "8", "16"})
          if (run_cli(base + t) != ref) return fail(base + t + " differs");
      }
  return {true, "bound and search at 1, 2, 3, 8, 16 threads"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"closed form at 512 bits", closed_form},
      {"Fibonacci = 2^z search vs brute force", fibonacci_powers_of_two},
      {"bounds cover every solution", bounds_cover_search},
      {"reduction bound beats the root", petho_deweger},
      {"height identities and inequalities", heights},
      {"linear-forms lower bound", matveev},
      {"dominance certificate", dominance},
      {"hypothesis failures", hypotheses},
      {"thread-count invariance", thread_invariance},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  return failures;
}
