#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>

#include "effbound/bound_engine.hpp"
#include "effbound/report_io.hpp"

using namespace effbound;

namespace {

nlohmann::json oracle_data() {
  std::ifstream f(std::string(EFFBOUND_TEST_DATA) + "/bound_oracle.json");
  return nlohmann::json::parse(f);
}

Instance from_oracle(const nlohmann::json& j) {
  auto ints = [](const nlohmann::json& a) {
    std::vector<mpz_class> v;
    for (long x : a) v.emplace_back(x);
    return v;
  };
  Instance in;
  in.spec = {ints(j["a"]), ints(j["init"])};
  in.lambdas = ints(j["lambdas"]);
  in.w = j["w"].get<long>();
  for (unsigned long p : j["primes"]) in.primes.push_back(p);
  return in;
}

// |a - b| <= 1e-30 * max(1, |b|)
bool close(const Interval& a, const std::string& b) {
  const Interval ref = Interval::from_decimal(b, 256);
  const Interval tol = max(Interval(1, 256), abs(ref)) * Interval::from_decimal("1e-30", 256);
  return abs(a - ref).certainly_less(tol);
}

Instance fib(std::vector<long> lam, long w, std::vector<unsigned long> primes) {
  return {RecurrenceSpec::fibonacci(), std::vector<mpz_class>(lam.begin(), lam.end()), w, std::move(primes)};
}

}  // namespace

// Frozen values from tests/oracles/bound_oracle.py (mpmath + sympy).
TEST(Bound, MatchesIndependentEvaluation) {
  const auto data = oracle_data();
  ASSERT_GE(data.size(), 5u);
  for (const auto& [name, entry] : data.items()) {
    SCOPED_TRACE(name);
    const Instance in = from_oracle(entry["instance"]);
    const auto rep = run_bound(in, 256, 8192);
    for (const auto& [cname, value] : entry["constants"].items()) {
      const auto* c = rep.find(cname);
      ASSERT_NE(c, nullptr) << cname;
      EXPECT_TRUE(close(c->value, value.get<std::string>())) << cname << ": " << c->value.to_string(30) << " vs " << value;
    }
    // The report also lists C2^(K), K = 1..k: lambda_1 (1 - 2^-64) in the positive case.
    EXPECT_EQ(rep.constants.size(), entry["constants"].size() + in.k());
    const Interval c2 = Interval::from_mpz(in.lambdas[0], 256) * (Interval(1, 256) - Interval(1, 256).mul_2si(-64));
    for (std::size_t K = 1; K <= in.k(); ++K) {
      const auto* c = rep.find("C2^(" + std::to_string(K) + ")");
      ASSERT_NE(c, nullptr);
      EXPECT_TRUE(c->value.overlaps(c2));
    }
    EXPECT_EQ(rep.n1_bound.get_str(), entry["n1_bound"].get<std::string>());
    ASSERT_EQ(rep.z_bounds.size(), entry["z_bounds"].size());
    for (std::size_t i = 0; i < rep.z_bounds.size(); ++i)
      EXPECT_EQ(rep.z_bounds[i].get_str(), entry["z_bounds"][i].get<std::string>());
  }
}

TEST(Bound, ReportInvariants) {
  for (const auto& in : {fib({1, 1}, 1, {2}), fib({2, 1}, 3, {2, 5}), fib({3, 1, 2}, 1, {2, 3})}) {
    auto s = analyze_spectrum(in.spec, 256);
    auto rep = run_bound(in, 256, 8192);
    EXPECT_GE(rep.n1_bound, 3);
    for (const auto& b : rep.lambda_zero_bounds) EXPECT_FALSE(b.certainly_greater(Interval::from_mpz(rep.n1_bound, 256)));
    for (const auto& b : rep.lambda_zero_bounds_sound)
      EXPECT_FALSE(b.certainly_greater(Interval::from_mpz(rep.n1_bound, 256)));
    EXPECT_TRUE(Interval::from_mpz(rep.n1_bound, 256).certainly_greater(rep.c2));
    for (std::size_t i = 0; i < in.s(); ++i) {
      const Interval ratio = log(s.alpha_abs) * 2L / log(Interval(static_cast<long>(in.primes[i]), 256));
      const Interval z = ratio * Interval::from_mpz(rep.n1_bound, 256);
      EXPECT_TRUE(z.contains(rep.z_bounds[i]) || z.certainly_greater(Interval::from_mpz(rep.z_bounds[i], 256)));
      EXPECT_TRUE((z - 1L).certainly_less(Interval::from_mpz(rep.z_bounds[i], 256)));
    }
    for (const auto& c : rep.constants)
      if (c.name != "n0") EXPECT_TRUE(c.value.certainly_positive()) << c.name;
    EXPECT_EQ(rep.N_by_m.size(), in.k() - 1);
    EXPECT_EQ(rep.C5_by_m.size(), in.k());
  }
}

TEST(Bound, MonotoneInFieldDegree) {
  const auto in = fib({2, 1}, 1, {2});
  auto base = run_bound(in, 256, 8192);
  mpz_class prev = base.n1_bound;
  for (unsigned long D : {2ul, 3ul, 6ul, 24ul}) {
    BoundConfig cfg;
    cfg.degree_override = D;
    auto rep = run_bound(in, 256, 8192, cfg);
    EXPECT_GE(rep.n1_bound, prev) << D;
    prev = rep.n1_bound;
  }
}

TEST(Bound, StableUnderPrecision) {
  const auto in = fib({1, 1}, 1, {2});
  EXPECT_EQ(run_bound(in, 256, 8192).n1_bound, run_bound(in, 512, 8192).n1_bound);
}

TEST(Bound, DeterministicSerialization) {
  const auto in = fib({3, 1, 2}, 1, {2, 3});
  BoundConfig one, many;
  many.dominance.threads = 8;
  const std::string a = report_json(run_bound(in, 256, 8192, one), in).dump(2);
  const std::string b = report_json(run_bound(in, 256, 8192, many), in).dump(2);
  EXPECT_EQ(a, b);
}

TEST(Bound, SingleTermLucas) {
  // L_n = 2, 1, 3, 4, ... never vanishes, so k = 1 is certified.
  Instance in{{{1, 1}, {2, 1}}, {1}, 1, {2}};
  auto rep = run_bound(in, 256, 8192);
  EXPECT_TRUE(rep.N_by_m.empty());
  EXPECT_GE(rep.n1_bound, 3);
  EXPECT_NE(rep.find("N_max"), nullptr);
  EXPECT_EQ(rep.find("N2"), nullptr);
}

TEST(Bound, ProvenanceIsDescriptive) {
  auto rep = run_bound(fib({1, 1}, 1, {2}), 256, 8192);
  for (const auto& c : rep.constants) {
    EXPECT_FALSE(c.provenance.empty()) << c.name;
    EXPECT_EQ(c.provenance.find("eq."), std::string::npos) << c.name;
    EXPECT_EQ(c.provenance.find("Lemma"), std::string::npos) << c.name;
  }
}

TEST(Bound, RejectsWhatDominanceRejects) {
  try {
    run_bound(fib({1, -1}, 1, {2}), 256, 8192);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DominanceFails);
  }
}

TEST(Bound, HypothesisFailuresProduceNoReport) {
  for (auto [a, kind] : {std::pair{std::vector<long>{2, -1}, ErrorKind::NotSimple},
                         std::pair{std::vector<long>{0, 1}, ErrorKind::Degenerate}}) {
    Instance in{{std::vector<mpz_class>(a.begin(), a.end()), {0, 1}}, {1, 1}, 1, {2}};
    try {
      run_bound(in, 256, 8192);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), kind);
    }
  }
}
