#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"
#include "scenario.hpp"

namespace aqt::cli {

struct AppOptions {
  std::optional<double> tol;
  std::size_t jobs = 1;
  std::optional<std::string> csv_dir;
};

struct AppResult {
  int exit_code = 0;
  std::string out;  // stdout
  std::string err;  // stderr
};

/// Scenarios of a file, or of every *.json file of a directory in name order.
std::vector<Scenario> load_path(const std::string& path);

/// Runs scenarios on `jobs` workers; reports come back in input order.
std::vector<Report> run_batch(const std::vector<Scenario>& scenarios, const RunOptions& options, std::size_t jobs);

AppResult validate_command(const std::string& path);
AppResult run_command(const std::string& path, const AppOptions& options);
/// `which` is a kind name or "all".
AppResult demo_command(const std::string& which, const AppOptions& options);

}  // namespace aqt::cli
