#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scenario.hpp"

namespace aqt::cli {

/// Fixed-column CSV artifact; written as <dir>/<scenario>.<name>.csv.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const;
};

struct Report {
  std::string scenario;
  Kind kind = Kind::gns;
  std::string source;
  std::vector<std::string> lines;
  std::vector<Table> tables;
  /// Names of failed checks; non-empty means exit code 2.
  std::vector<std::string> failures;

  int exit_code() const { return failures.empty() ? 0 : 2; }
  std::string text() const;
};

struct RunOptions {
  /// Replaces the default of every tolerance the scenario does not set.
  std::optional<double> tol;
};

/// Dispatches to the analysis for s.kind. Never throws for library
/// failures: they become failed checks.
Report run_scenario(const Scenario& s, const RunOptions& options = {});

}  // namespace aqt::cli
