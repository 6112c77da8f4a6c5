// Acceptance suite: one pass/fail line per criterion, nonzero exit code
// on any failure. Each criterion pins its tolerance in code and reports
// the measured extremes and wall time.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rankone/verify.hpp"

using namespace rankone;

namespace {

struct Criterion {
  int id;
  std::string label;
  bool pass;
  std::string detail;
  double seconds;
};

std::vector<Criterion> g_results;

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

SuiteConfig config_for(const std::string& suite, Model model) {
  json doc;
  doc["model"] = model == Model::H2 ? "h2" : "h3";
  doc["suite"] = suite;
  doc["seed"] = 20240901;
  SuiteConfig cfg = parse_config(doc);
  cfg.parallelism = 1;
  return cfg;
}

// worst rel_err over the named cases; pass iff all named cases pass
struct SubsetStats {
  bool pass = true;
  double worst = 0.0;
  int count = 0;
};

SubsetStats subset(const VerificationReport& rep,
                   const std::vector<std::string>& names) {
  SubsetStats s;
  for (const auto& c : rep.cases) {
    bool match = false;
    for (const auto& n : names)
      if (c.name == n) match = true;
    if (!match) continue;
    ++s.count;
    s.pass = s.pass && c.pass;
    if (std::isfinite(c.rel_err)) s.worst = std::max(s.worst, c.rel_err);
  }
  if (s.count == 0) s.pass = false;
  return s;
}

void run_criterion(int id, const std::string& label, double budget_s,
                   const std::function<std::pair<bool, std::string>()>& body) {
  const double t0 = now_s();
  bool pass = false;
  std::string detail;
  try {
    auto [p, d] = body();
    pass = p;
    detail = d;
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  const double dt = now_s() - t0;
  if (budget_s > 0 && dt > budget_s) {
    pass = false;
    detail += " [over runtime budget]";
  }
  std::printf("[%s] criterion %2d: %-58s (%s; %.1f s)\n",
              pass ? "PASS" : "FAIL", id, label.c_str(), detail.c_str(), dt);
  std::fflush(stdout);
  g_results.push_back({id, label, pass, detail, dt});
}

char buf[256];

}  // namespace

int main() {
  std::printf("acceptance suite: rank-one symmetric space harmonic analysis\n");

  // reports reused across criteria 1/2 and 3
  VerificationReport iwa_h2, iwa_h3;

  run_criterion(1, "Iwasawa roundtrip 1e-10 + H-cocycle 1e-10, both models", 10.0,
                [&]() -> std::pair<bool, std::string> {
                  iwa_h2 = run_suite(config_for("iwasawa", Model::H2));
                  iwa_h3 = run_suite(config_for("iwasawa", Model::H3));
                  SubsetStats a = subset(iwa_h2, {"roundtrip", "h-cocycle"});
                  SubsetStats b = subset(iwa_h3, {"roundtrip", "h-cocycle"});
                  std::snprintf(buf, sizeof buf,
                                "cases %d+%d, worst abs resid %.2e",
                                a.count, b.count, std::max(a.worst, b.worst));
                  return {a.pass && b.pass, buf};
                });

  run_criterion(2, "measure normalization 1e-8 + Gram H(nbar_1)=log2 1e-12", 0,
                [&]() -> std::pair<bool, std::string> {
                  SubsetStats a = subset(iwa_h2, {"nbar-normalization"});
                  SubsetStats b = subset(iwa_h3, {"nbar-normalization"});
                  SubsetStats g = subset(iwa_h2, {"h-nbar-one"});
                  std::snprintf(buf, sizeof buf,
                                "normalization err %.2e, gram err %.2e",
                                std::max(a.worst, b.worst), g.worst);
                  return {a.pass && b.pass && g.pass, buf};
                });

  run_criterion(
      3, "horocycle bracket suite 1e-10 + disk Poisson kernel oracle", 0,
      [&]() -> std::pair<bool, std::string> {
        const VerificationReport r2 = run_suite(config_for("bracket", Model::H2));
        const VerificationReport r3 = run_suite(config_for("bracket", Model::H3));
        std::snprintf(buf, sizeof buf, "cases %zu+%zu, max rel %.2e",
                      r2.cases.size(), r3.cases.size(),
                      std::max(r2.max_rel_err(), r3.max_rel_err()));
        return {r2.overall_pass() && r3.overall_pass(), buf};
      });

  run_criterion(
      4, "Poisson eigenfunction FD 1e-4 + intertwining 1e-9, both models", 0,
      [&]() -> std::pair<bool, std::string> {
        const VerificationReport r2 = run_suite(config_for("poisson", Model::H2));
        const VerificationReport r3 = run_suite(config_for("poisson", Model::H3));
        SubsetStats fd2 = subset(r2, {"fd-eigenvalue"});
        SubsetStats fd3 = subset(r3, {"fd-eigenvalue"});
        std::snprintf(buf, sizeof buf, "fd worst %.2e, overall %s/%s",
                      std::max(fd2.worst, fd3.worst),
                      r2.overall_pass() ? "ok" : "fail",
                      r3.overall_pass() ? "ok" : "fail");
        return {r2.overall_pass() && r3.overall_pass(), buf};
      });

  run_criterion(5, "principal series unitarity 1e-7 on 100 random (g,lambda,f)",
                0, [&]() -> std::pair<bool, std::string> {
                  const VerificationReport r =
                      run_suite(config_for("principal-series", Model::H2));
                  std::snprintf(buf, sizeof buf, "cases %zu, max rel %.2e",
                                r.cases.size(), r.max_rel_err());
                  return {r.overall_pass(), buf};
                });

  run_criterion(
      6, "diagonal key formula rel 1e-6 (lambda {1,2,5,10} x 3 pairs x 2 symbols)",
      300.0, [&]() -> std::pair<bool, std::string> {
        const VerificationReport r =
            run_suite(config_for("intertwining-diagonal", Model::H2));
        std::snprintf(buf, sizeof buf, "cases %zu, max rel %.2e",
                      r.cases.size(), r.max_rel_err());
        return {r.overall_pass(), buf};
      });

  run_criterion(
      7, "flagship Wigner = PS pairing rel 1e-6 ((lj,lk) in {1,2,5,10}^2, 3+3 atoms)",
      900.0, [&]() -> std::pair<bool, std::string> {
        const VerificationReport r =
            run_suite(config_for("intertwining-offdiag", Model::H2));
        std::snprintf(buf, sizeof buf, "cases %zu, max rel %.2e",
                      r.cases.size(), r.max_rel_err());
        return {r.overall_pass(), buf};
      });

  run_criterion(
      8, "PS invariances 1e-8 (flow, time reversal, gamma-twist), both models", 0,
      [&]() -> std::pair<bool, std::string> {
        const VerificationReport r2 =
            run_suite(config_for("ps-invariance", Model::H2));
        const VerificationReport r3 =
            run_suite(config_for("ps-invariance", Model::H3));
        std::snprintf(buf, sizeof buf, "cases %zu+%zu, max rel %.2e",
                      r2.cases.size(), r3.cases.size(),
                      std::max(r2.max_rel_err(), r3.max_rel_err()));
        return {r2.overall_pass() && r3.overall_pass(), buf};
      });

  run_criterion(
      9, "stationary phase: H2 rate slope -1+-0.15, H3 prefactor slope -1+-0.15",
      300.0, [&]() -> std::pair<bool, std::string> {
        const VerificationReport r2 = run_suite(config_for("msp-rate", Model::H2));
        const VerificationReport r3 = run_suite(config_for("msp-rate", Model::H3));
        double s2 = 0, s3 = 0;
        for (const auto& c : r2.cases)
          if (c.name == "msp-rate-slope") s2 = c.lhs.real();
        for (const auto& c : r3.cases)
          if (c.name == "msp-prefactor-slope") s3 = c.lhs.real();
        std::snprintf(buf, sizeof buf, "slopes %.3f (H2), %.3f (H3)", s2, s3);
        return {r2.overall_pass() && r3.overall_pass(), buf};
      });

  run_criterion(10, "Fourier inversion rel L2 < 5% at Lambda=30, coarse grid",
                600.0, [&]() -> std::pair<bool, std::string> {
                  const VerificationReport r =
                      run_suite(config_for("fourier-inversion", Model::H2));
                  double l2 = -1;
                  for (const auto& c : r.cases)
                    if (c.name == "relative-l2-error") l2 = c.lhs.real();
                  std::snprintf(buf, sizeof buf, "rel L2 error %.4f", l2);
                  return {r.overall_pass(), buf};
                });

  int failures = 0;
  for (const auto& c : g_results) failures += c.pass ? 0 : 1;
  double total = 0;
  for (const auto& c : g_results) total += c.seconds;
  std::printf("---\n%zu criteria, %d failed, total %.1f s\n", g_results.size(),
              failures, total);
  return failures == 0 ? 0 : 1;
}
