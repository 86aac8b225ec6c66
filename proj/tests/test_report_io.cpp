#include <gtest/gtest.h>

#include <regex>

#include "effbound/report_io.hpp"

using namespace effbound;

namespace {

const char* kFib = R"({"order": 2, "coefficients": [1, 1], "initial_terms": [0, 1],
                       "lambdas": [1, 1], "w": 1, "primes": [2]})";

ErrorKind parse_kind(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorKind::DomainError;
}

std::vector<std::string> numbers(const std::string& text) {
  static const std::regex num(R"(-?\d\.\d{29}e[+-]\d+)");
  std::vector<std::string> out;
  for (std::sregex_iterator it(text.begin(), text.end(), num), end; it != end; ++it) out.push_back(it->str());
  return out;
}

}  // namespace

TEST(InstanceFile, ParsesAllKeys) {
  auto f = parse_instance(R"({"order": 3, "coefficients": [1, 1, 1], "initial_terms": [0, 0, 1],
                              "lambdas": [3, "1", 2], "w": -3, "primes": [2, 5, 7],
                              "c2_override": "0.25", "precision": 512, "cap": 90})");
  EXPECT_EQ(f.instance.spec.order(), 3u);
  EXPECT_EQ(f.instance.lambdas[1], 1);
  EXPECT_EQ(f.instance.w, -3);
  EXPECT_EQ(f.instance.primes, (std::vector<unsigned long>{2, 5, 7}));
  EXPECT_EQ(*f.c2_override, "0.25");
  EXPECT_EQ(*f.precision, 512u);
  EXPECT_EQ(*f.cap, 90u);
  auto g = parse_instance(kFib);
  EXPECT_FALSE(g.c2_override || g.precision || g.cap);
}

TEST(InstanceFile, BigIntegersAsStrings) {
  auto f = parse_instance(R"({"order": 2, "coefficients": [1, 1], "initial_terms": [0, 1],
                              "lambdas": ["123456789012345678901234567890", 1], "w": 1, "primes": [2]})");
  EXPECT_EQ(f.instance.lambdas[0], mpz_class("123456789012345678901234567890"));
}

TEST(InstanceFile, ActionableErrors) {
  EXPECT_EQ(parse_kind("{"), ErrorKind::InvalidInstance);
  EXPECT_EQ(parse_kind("[]"), ErrorKind::InvalidInstance);
  EXPECT_EQ(parse_kind(R"({"order": 2, "coefficients": [1, 1], "initial_terms": [0, 1], "w": 1, "primes": [2]})"),
            ErrorKind::InvalidInstance);
  EXPECT_EQ(parse_kind(R"({"order": 3, "coefficients": [1, 1], "initial_terms": [0, 1], "lambdas": [1],
                           "w": 1, "primes": [2]})"),
            ErrorKind::InvalidInstance);
  EXPECT_EQ(parse_kind(R"({"order": 2, "coefficients": [1, 1], "initial_terms": [0, 1], "lambdas": [1, 0],
                           "w": 1, "primes": [2]})"),
            ErrorKind::InvalidInstance);
  EXPECT_EQ(parse_kind(R"({"order": 2, "coefficients": [1, 1], "initial_terms": [0, 1], "lambdas": [1],
                           "w": 1, "primes": [4]})"),
            ErrorKind::InvalidInstance);
  EXPECT_EQ(parse_kind(R"({"order": 2, "coefficients": [1, 1], "initial_terms": [0, 1], "lambdas": [1],
                           "w": 6, "primes": [2]})"),
            ErrorKind::InvalidInstance);
  EXPECT_EQ(parse_kind(R"({"order": 2, "coefficients": [1, 1], "initial_terms": [0, 1], "lambdas": [1],
                           "w": 1, "primes": [3, 3]})"),
            ErrorKind::InvalidInstance);
  EXPECT_EQ(parse_kind(R"({"order": 2, "coefficients": [1, 1], "initial_terms": [0, 1], "lambdas": [1],
                           "w": 1, "primes": [2], "c2_override": "-1"})"),
            ErrorKind::InvalidInstance);
  EXPECT_EQ(parse_kind(R"({"order": 2, "coefficients": [1, "x"], "initial_terms": [0, 1], "lambdas": [1],
                           "w": 1, "primes": [2]})"),
            ErrorKind::InvalidInstance);
  try {
    parse_instance(R"({"order": 2, "coefficients": [1, 1], "initial_terms": [0, 1], "w": 1, "primes": [2]})");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("lambdas"), std::string::npos);
  }
}

TEST(Report, JsonShapeAndRoundTrip) {
  auto f = parse_instance(kFib);
  auto rep = run_bound(f.instance, 256, 8192);
  const Json j = report_json(rep, f.instance);
  ASSERT_TRUE(j["constants"].is_array());
  for (const auto& c : j["constants"]) {
    EXPECT_TRUE(c.contains("name") && c.contains("value") && c.contains("enclosure_width") && c.contains("provenance"));
    EXPECT_EQ(numbers(c["value"].get<std::string>()).size(), 1u) << c["value"];
  }
  const auto back = parse_report(j.dump(2));
  EXPECT_EQ(back.n1_bound, rep.n1_bound);
  EXPECT_EQ(back.z_bounds, rep.z_bounds);
  EXPECT_TRUE(back.c2.contains(rep.c2));
  // Re-reading verifies identically.
  auto s = analyze_spectrum(f.instance.spec, 256);
  auto found = search(f.instance, 200, 2);
  auto direct = verify_solutions(f.instance, s, rep.n1_bound, rep.z_bounds, rep.c2, found);
  auto reread = verify_solutions(f.instance, s, back.n1_bound, back.z_bounds, back.c2, found);
  EXPECT_EQ(direct.violations.size(), reread.violations.size());
  EXPECT_EQ(direct.checked, reread.checked);
}

TEST(Report, TextAndJsonCarryTheSameNumbers) {
  auto f = parse_instance(kFib);
  auto rep = run_bound(f.instance, 256, 8192);
  EXPECT_EQ(numbers(report_text(rep, f.instance)), numbers(report_json(rep, f.instance).dump(2)));
  const std::string text = report_text(rep, f.instance);
  EXPECT_NE(text.find("n1_bound = " + rep.n1_bound.get_str()), std::string::npos);
}

TEST(Report, ParseRejectsIncompleteReports) {
  EXPECT_THROW(parse_report("{}"), Error);
  EXPECT_THROW(parse_report(R"({"n1_bound": "5", "z_bounds": [], "constants": []})"), Error);
}

TEST(Solutions, LineAndJsonFormats) {
  Solution s{{7, 4}, {4}};
  EXPECT_EQ(solution_line(s), "n=(7,4) z=(4)");
  SearchResult r;
  r.solutions.push_back(s);
  r.small.push_back({{2, 1}, {1}});
  const Json j = search_json(r);
  EXPECT_EQ(j["solutions"][0]["n"], Json::array({7, 4}));
  EXPECT_EQ(j["flagged_small_n1"][0]["z"], Json::array({1}));
}
