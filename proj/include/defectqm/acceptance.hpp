#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace defectqm::acceptance {

struct Options {
  /// Criterion keys or numbers to run; empty runs everything.
  std::vector<std::string> only;
  /// System whose closed-form energy gets perturbed by +0.01 (mutation check).
  std::string inject_fault;
  int threads = 1;
  /// Receives one JSON line per published estimate the formulas do not reproduce.
  std::ostream* discrepancy_log = nullptr;
};

struct CriterionResult {
  int id = 0;
  std::string key;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Criterion {
  int id;
  const char* key;
  const char* title;
};

/// Keys: flat-limits, oracle, degeneracy, coulomb-m0, kratzer-dissociation,
/// kratzer-expansion, morse-audit, shift-report, specfun, oracle-self.
const std::vector<Criterion>& criteria();

/// Throws DomainError for unknown keys in opts.only.
std::vector<CriterionResult> run(const Options& opts = {});

/// "PASS  3 degeneracy  ...  detail"
std::string format_line(const CriterionResult& r);

}  // namespace defectqm::acceptance
