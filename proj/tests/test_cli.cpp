#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

// stdout only; stderr goes to a scratch file so it can be inspected separately.
Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" EFFBOUND_EXE "\" " + args + " 2>" + (std::filesystem::temp_directory_path() / "effbound_cli_stderr").string();
  Run r{-1, {}};
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string last_stderr() {
  std::ifstream f(std::filesystem::temp_directory_path() / "effbound_cli_stderr");
  return {std::istreambuf_iterator<char>(f), {}};
}

std::string sample(const std::string& name) { return std::string("\"") + EFFBOUND_SAMPLES + "/" + name + ".json\""; }

std::string data(const std::string& name) { return std::string("\"") + EFFBOUND_TEST_DATA + "/" + name + "\""; }

std::vector<std::string> numbers(const std::string& text) {
  static const std::regex num(R"(-?\d\.\d{29}e[+-]\d+)");
  std::vector<std::string> out;
  for (std::sregex_iterator it(text.begin(), text.end(), num), end; it != end; ++it) out.push_back(it->str());
  return out;
}

}  // namespace

TEST(Cli, HypothesisFailuresExitTwo) {
  auto r = run("analyze " + sample("double_root"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(last_stderr().find("NotSimple"), std::string::npos);
  r = run("bound " + sample("degenerate"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(last_stderr().find("Degenerate"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ParseErrorsExitThree) {
  auto r = run("bound " + data("missing_key.json"));
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(last_stderr().find("lambdas"), std::string::npos);
  EXPECT_EQ(run("bound /nonexistent/instance.json").code, 3);
  EXPECT_EQ(run("bound " + sample("fibonacci_pow2") + " --output yaml").code, 3);
}

TEST(Cli, DominanceFailuresExitFour) {
  EXPECT_EQ(run("bound " + sample("fibonacci_mixed_sign")).code, 4);
  EXPECT_EQ(run("bound " + sample("fibonacci_pow2") + " --c2 100").code, 4);
}

TEST(Cli, PrecisionCeilingExitsFive) {
  EXPECT_EQ(run("bound " + sample("fibonacci_pow2") + " --precision 4096", "EFFBOUND_PRECISION_CEILING=128").code, 5);
}

TEST(Cli, VerifyFlagsCorruptedReport) {
  auto r = run("verify " + sample("fibonacci_pow2") + " --report " + data("corrupted_report.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(run("verify " + sample("fibonacci_pow2")).code, 0);
}

TEST(Cli, VerifyAcceptsItsOwnReport) {
  const auto path = std::filesystem::temp_directory_path() / "effbound_cli_report.json";
  auto r = run("bound " + sample("fibonacci_pow2") + " --output json");
  ASSERT_EQ(r.code, 0);
  std::ofstream(path) << r.out;
  EXPECT_EQ(run("verify " + sample("fibonacci_pow2") + " --report \"" + path.string() + "\"").code, 0);
}

TEST(Cli, SearchCapOnePrintsNothing) {
  auto r = run("search " + sample("fibonacci_pow2") + " --cap 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty()) << r.out;
}

TEST(Cli, SearchListsKnownSolutions) {
  auto r = run("search " + sample("fibonacci_pow2"));
  ASSERT_EQ(r.code, 0);
  for (const char* s : {"n=(5,4) z=(3)", "n=(7,4) z=(4)", "n=(4,2) z=(2)"}) EXPECT_NE(r.out.find(s), std::string::npos) << s;
  EXPECT_NE(last_stderr().find("n=(2,1) z=(1)"), std::string::npos);
}

TEST(Cli, ByteIdenticalAcrossThreadCounts) {
  for (const char* name : {"fibonacci_pow2", "tribonacci_312_p257"})
    for (const char* cmd : {"bound", "search"})
      for (const char* fmt : {"json", "text"}) {
        const std::string base = std::string(cmd) + " " + sample(name) + " --output " + fmt;
        auto one = run(base + " --threads 1");
        auto many = run(base + " --threads 8");
        EXPECT_EQ(one.code, 0);
        EXPECT_EQ(one.out, many.out) << base;
      }
}

TEST(Cli, JsonAndTextAgree) {
  auto j = run("bound " + sample("fibonacci_21_w3_p25") + " --output json");
  auto t = run("bound " + sample("fibonacci_21_w3_p25") + " --output text");
  ASSERT_EQ(j.code, 0);
  ASSERT_EQ(t.code, 0);
  EXPECT_FALSE(numbers(j.out).empty());
  EXPECT_EQ(numbers(j.out), numbers(t.out));
}
