// effbound: analyze / bound / search / verify on an instance file.
//
// Exit codes: 0 ok, 1 verification found violations, 2 a hypothesis on the
// recurrence fails, 3 bad input, 4 dominance cannot be certified,
// 5 precision ceiling reached.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "effbound/effbound.hpp"

namespace {

using namespace effbound;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotSimple:
    case ErrorKind::Degenerate:
    case ErrorKind::NoDominantRoot:
    case ErrorKind::DominantRootNotGreaterThanOne:
    case ErrorKind::ZeroDominantCoefficient:
    case ErrorKind::DegenerateDenominator:
      return 2;
    case ErrorKind::InvalidInstance:
    case ErrorKind::DomainError:
      return 3;
    case ErrorKind::DominanceFails:
    case ErrorKind::DominanceUnsupported:
      return 4;
    case ErrorKind::PrecisionExhausted:
      return 5;
  }
  return 3;
}

Precision ceiling_from_env() {
  const char* v = std::getenv("EFFBOUND_PRECISION_CEILING");
  if (!v || !*v) return 8192;
  char* end = nullptr;
  unsigned long x = std::strtoul(v, &end, 10);
  if (*end != '\0' || x < 64) fail(ErrorKind::InvalidInstance, "EFFBOUND_PRECISION_CEILING must be an integer >= 64");
  return x;
}

struct Options {
  std::string file;
  std::string report;
  std::optional<Precision> precision;
  std::optional<std::size_t> cap;
  std::optional<std::string> c2;
  unsigned threads = default_threads();
  std::string output = "text";
};

struct Resolved {
  InstanceFile file;
  Precision precision;
  Precision ceiling;
  std::size_t cap;
};

Resolved resolve(const Options& o) {
  Resolved r{load_instance(o.file), 256, ceiling_from_env(), 200};
  r.precision = o.precision.value_or(r.file.precision.value_or(256));
  r.cap = o.cap.value_or(r.file.cap.value_or(200));
  if (o.c2) r.file.c2_override = *o.c2;
  if (r.precision < 64) fail(ErrorKind::InvalidInstance, "precision must be at least 64 bits");
  if (r.precision > r.ceiling) fail(ErrorKind::PrecisionExhausted, "requested precision exceeds the ceiling");
  return r;
}

BoundConfig bound_config(const Resolved& r, unsigned threads) {
  BoundConfig cfg;
  cfg.dominance.c2_override = r.file.c2_override;
  cfg.dominance.threads = threads;
  return cfg;
}

bool json_out(const Options& o) { return o.output == "json"; }

int cmd_analyze(const Options& o) {
  auto r = resolve(o);
  auto s = analyze_spectrum(r.file.instance.spec, r.precision, r.ceiling);
  if (json_out(o))
    std::cout << spectral_json(s).dump(2) << "\n";
  else
    std::cout << spectral_text(s);
  return 0;
}

int cmd_bound(const Options& o) {
  auto r = resolve(o);
  auto rep = run_bound(r.file.instance, r.precision, r.ceiling, bound_config(r, o.threads));
  if (json_out(o))
    std::cout << report_json(rep, r.file.instance).dump(2) << "\n";
  else
    std::cout << report_text(rep, r.file.instance);
  return 0;
}

int cmd_search(const Options& o) {
  auto r = resolve(o);
  auto res = search(r.file.instance, r.cap, o.threads);
  if (json_out(o)) {
    std::cout << search_json(res).dump(2) << "\n";
    return 0;
  }
  for (const auto& s : res.solutions) std::cout << solution_line(s) << "\n";
  // Solutions with n_1 < 3 sit outside the theorem's range; keep them off stdout.
  for (const auto& s : res.small) std::cerr << "flagged (n_1 < 3): " << solution_line(s) << "\n";
  return 0;
}

int cmd_verify(const Options& o) {
  auto r = resolve(o);
  const Instance& in = r.file.instance;
  auto s = analyze_spectrum(in.spec, r.precision, r.ceiling);
  ReportSummary summary;
  if (!o.report.empty()) {
    std::ifstream f(o.report);
    if (!f) fail(ErrorKind::InvalidInstance, "cannot open " + o.report);
    std::stringstream ss;
    ss << f.rdbuf();
    summary = parse_report(ss.str(), r.precision);
  } else {
    auto rep = compute_bound(in, s, certify_dominance(in, s, bound_config(r, o.threads).dominance),
                             bound_config(r, o.threads));
    summary = {rep.n1_bound, rep.z_bounds, rep.c2};
  }
  if (summary.z_bounds.size() != in.s()) fail(ErrorKind::InvalidInstance, "report has the wrong number of z bounds");
  auto found = search(in, r.cap, o.threads);
  auto outcome = verify_solutions(in, s, summary.n1_bound, summary.z_bounds, summary.c2, found);
  if (json_out(o)) {
    std::cout << verification_json(outcome).dump(2) << "\n";
  } else {
    std::cout << "checked " << outcome.checked << " solutions, " << outcome.violations.size() << " violations\n";
    for (const auto& v : outcome.violations) std::cout << "violation: " << solution_line(v.solution) << ": " << v.what << "\n";
  }
  return outcome.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective bounds and exhaustive search for sums of recurrence terms equal to S-units"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool with_cap, bool with_c2) {
    sub->add_option("file", o.file, "instance file (JSON)")->required();
    sub->add_option("--precision", o.precision, "working precision in bits (default 256)");
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--output", o.output, "output format")->check(CLI::IsMember({"json", "text"}));
    if (with_cap) sub->add_option("--cap", o.cap, "search cap on n_1 (default 200)");
    if (with_c2) sub->add_option("--c2", o.c2, "user-supplied dominance constant C_2 (decimal)");
  };

  auto* analyze = app.add_subcommand("analyze", "spectral summary of the recurrence");
  common(analyze, false, false);
  auto* bound = app.add_subcommand("bound", "compute the bound report");
  common(bound, false, true);
  auto* srch = app.add_subcommand("search", "enumerate solutions with n_1 <= cap");
  common(srch, true, false);
  auto* verify = app.add_subcommand("verify", "check a bound report against the exhaustive search");
  common(verify, true, true);
  verify->add_option("--report", o.report, "bound report (JSON) to check; computed afresh when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (*analyze) return cmd_analyze(o);
    if (*bound) return cmd_bound(o);
    if (*srch) return cmd_search(o);
    return cmd_verify(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
