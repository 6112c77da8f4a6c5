#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>

#include <CLI11.hpp>

#include "rankone/verify.hpp"

namespace {

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void print_summary(const rankone::VerificationReport& rep) {
  const int fails = static_cast<int>(rep.cases.size()) - rep.n_pass();
  std::printf("suite %-24s model %-3s cases %5zu  pass %5d  fail %4d  "
              "max_rel_err %.3e  [%s]\n",
              rep.suite.c_str(), rep.model.c_str(), rep.cases.size(),
              rep.n_pass(), fails, rep.max_rel_err(),
              rep.overall_pass() ? "PASS" : "FAIL");
  if (!rep.overall_pass()) {
    int shown = 0;
    for (const auto& c : rep.cases) {
      if (c.pass) continue;
      std::printf("  failed case %-28s rel_err %.3e tol %.3e %s\n",
                  c.name.c_str(), c.rel_err, c.tol, c.note.c_str());
      if (++shown >= 10) {
        std::printf("  ... (%d more failures)\n", fails - shown);
        break;
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rankone-ps: verification harness for rank-one symmetric "
               "space harmonic analysis (H2/H3)"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string config_path, suite_override, format = "json", out_path;
  int parallelism = 0;
  bool no_timestamp = false;
  verify->add_option("config", config_path, "suite config file (JSON)")
      ->required();
  verify->add_option("--suite", suite_override, "override the config's suite");
  verify->add_option("--format", format, "report format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", out_path, "write the report to this path");
  verify->add_option("--parallelism", parallelism, "worker threads");
  verify->add_flag("--no-timestamp", no_timestamp,
                   "omit timestamp and wall time (byte-stable reports)");

  auto* list_suites = app.add_subcommand("list-suites", "list suite names");
  auto* list_symbols =
      app.add_subcommand("list-symbols", "list built-in symbol names");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_suites->parsed()) {
      for (const auto& s : rankone::suite_names()) std::printf("%s\n", s.c_str());
      return 0;
    }
    if (list_symbols->parsed()) {
      for (const auto& s : rankone::symbol_names())
        std::printf("%s\n", s.c_str());
      return 0;
    }

    rankone::SuiteConfig cfg = rankone::load_config(config_path);
    if (!suite_override.empty()) {
      rankone::json doc = cfg.echo;
      doc["suite"] = suite_override;
      cfg = rankone::parse_config(doc);
    }
    if (parallelism > 0) cfg.parallelism = parallelism;
    cfg.parallelism = rankone::resolve_parallelism(cfg, parallelism);

    rankone::VerificationReport rep = rankone::run_suite(cfg);
    if (!no_timestamp) rep.timestamp = iso_timestamp();

    const rankone::ReportFormat rf = format == "csv"
                                         ? rankone::ReportFormat::Csv
                                         : rankone::ReportFormat::Json;
    if (!out_path.empty()) {
      rankone::emit_report(rep, rf, out_path);
      std::printf("report written to %s\n", out_path.c_str());
    } else {
      std::fputs(rankone::format_report(rep, rf).c_str(), stdout);
    }
    print_summary(rep);
    return rep.overall_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
