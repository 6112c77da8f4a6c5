#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rankone/asymptotics.hpp"

namespace rankone {

using json = nlohmann::ordered_json;

// Built-in parametric symbol family ("gaussian bump in z" x "trig in b").
// Keeping symbols declarative keeps the CLI sandbox-safe and the reports
// reproducible.
struct SymbolSpec {
  std::string name = "bump-trig";
  std::vector<double> center;  // (x,y) for H2, (x1,x2,y) for H3
  double width = 0.5;
  int trig_m = 2;
  double trig_eps = 0.5;
};

struct CutoffSpec {
  std::vector<double> center;
  double plateau = 0.0;  // chi == 1 inside this radius; 0 -> derived
  double radius = 0.0;   // support radius; 0 -> derived
};

struct AtomSpec {
  cplx weight{1.0, 0.0};
  std::vector<double> position;  // (theta) for H2, (x1,x2,x3) for H3
};

struct SuiteConfig {
  Model model = Model::H2;
  std::string suite;
  std::vector<double> lambda_grid;
  std::vector<AtomSpec> atoms;    // T_j
  std::vector<AtomSpec> atoms_k;  // T_k; empty -> derived from atoms
  SymbolSpec symbol;
  CutoffSpec cutoff;
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 1;
  int parallelism = 0;  // 0 -> env RANKONE_PS_THREADS, then 1
  json echo;            // raw parsed document, round-tripped into reports

  double tol_or(const std::string& key, double fallback) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }
};

// Parses and validates a config document; unknown suite or symbol names
// are rejected with the list of valid names.
SuiteConfig parse_config(const json& doc);
SuiteConfig load_config(const std::string& path);

const std::vector<std::string>& suite_names();
const std::vector<std::string>& symbol_names();

struct CaseResult {
  std::string name;
  std::map<std::string, double> params;
  cplx lhs{0, 0};
  cplx rhs{0, 0};
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string note;
};

struct VerificationReport {
  std::string suite;
  std::string model;
  json config_echo;
  std::vector<CaseResult> cases;
  double wall_ms = 0.0;
  std::string timestamp;  // empty when suppressed

  int n_pass() const;
  double max_rel_err() const;
  bool overall_pass() const;
};

VerificationReport run_suite(const SuiteConfig& config);

enum class ReportFormat { Json, Csv };

// Stable field ordering; CSV is one row per case; JSON carries
// "schema_version": 1. I/O failures surface with the path in the message.
void emit_report(const VerificationReport& report, ReportFormat format,
                 const std::string& path);
std::string format_report(const VerificationReport& report, ReportFormat format);

// Symbol / cutoff / boundary-data builders shared by suites and tests.
Symbol make_symbol(const SymbolSpec& spec, Model model);
Cutoff make_cutoff(const CutoffSpec& spec, const SymbolSpec& symbol, Model model);
BoundaryDistribution make_atoms(const std::vector<AtomSpec>& specs, Model model);
// deterministic fallback data when the config leaves atoms out
std::vector<AtomSpec> default_atoms(Model model, std::uint64_t seed, int count);
std::vector<AtomSpec> derived_second_atoms(const std::vector<AtomSpec>& first,
                                           Model model);

int resolve_parallelism(const SuiteConfig& config, int cli_override);

}  // namespace rankone
