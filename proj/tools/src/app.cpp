#include "app.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "demos.hpp"

namespace aqt::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ScenarioError(p.string(), "", "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Directory batches are parsed file by file so that every broken file is reported.
struct Loaded {
  std::vector<Scenario> scenarios;
  std::vector<std::string> errors;
};

Loaded load_collecting(const std::string& path) {
  Loaded out;
  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    for (const auto& e : fs::directory_iterator(path))
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
  } else if (fs::exists(path, ec)) {
    files.emplace_back(path);
  } else {
    out.errors.push_back(path + ": no such file or directory");
    return out;
  }
  std::map<std::string, std::string> names;
  for (const auto& f : files) {
    try {
      for (auto& s : parse_scenarios(read_file(f), f.string())) {
        if (auto [it, fresh] = names.emplace(s.name, s.source); !fresh) {
          out.errors.push_back(s.source + ": /name: scenario name '" + s.name + "' already used in " + it->second);
          continue;
        }
        out.scenarios.push_back(std::move(s));
      }
    } catch (const ScenarioError& e) {
      out.errors.push_back(e.what());
    }
  }
  return out;
}

void write_text(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

AppResult run_loaded(const std::vector<Scenario>& scenarios, const AppOptions& options) {
  AppResult r;
  const RunOptions ro{options.tol};
  const std::vector<Report> reports = run_batch(scenarios, ro, options.jobs);

  // Outputs are written on this thread, in input order.
  std::map<std::string, std::string> report_files;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const std::string text = reports[i].text();
    r.out += (i ? "\n" : "") + text;
    if (scenarios[i].report_path) report_files[*scenarios[i].report_path] += text;
    std::optional<std::string> dir = options.csv_dir ? options.csv_dir : scenarios[i].csv_dir;
    if (dir)
      for (const auto& t : reports[i].tables)
        write_text(fs::path(*dir) / (reports[i].scenario + "." + t.name + ".csv"), t.csv());
    if (!reports[i].failures.empty()) {
      r.exit_code = 2;
      for (const auto& f : reports[i].failures) r.err += "check failed: " + reports[i].scenario + ": " + f + "\n";
    }
  }
  for (const auto& [path, text] : report_files) write_text(path, text);
  return r;
}

}  // namespace

std::vector<Scenario> load_path(const std::string& path) {
  Loaded l = load_collecting(path);
  if (!l.errors.empty()) throw ScenarioError(path, "", l.errors.front());
  return std::move(l.scenarios);
}

std::vector<Report> run_batch(const std::vector<Scenario>& scenarios, const RunOptions& options, std::size_t jobs) {
  std::vector<Report> reports(scenarios.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, scenarios.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) reports[i] = run_scenario(scenarios[i], options);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return reports;
}

AppResult validate_command(const std::string& path) {
  AppResult r;
  const Loaded l = load_collecting(path);
  for (const auto& e : l.errors) r.err += "error: " + e + "\n";
  if (!l.errors.empty()) {
    r.exit_code = 1;
    return r;
  }
  for (const auto& s : l.scenarios) r.out += "valid " + s.name + " (kind " + to_string(s.kind) + ", source " + s.source + ")\n";
  r.out += fmt::format("{} scenario(s) valid\n", l.scenarios.size());
  return r;
}

AppResult run_command(const std::string& path, const AppOptions& options) {
  const Loaded l = load_collecting(path);
  if (!l.errors.empty()) {
    AppResult r;
    r.exit_code = 1;
    for (const auto& e : l.errors) r.err += "error: " + e + "\n";
    return r;
  }
  return run_loaded(l.scenarios, options);
}

AppResult demo_command(const std::string& which, const AppOptions& options) {
  std::vector<Kind> kinds;
  if (which == "all") {
    kinds = all_kinds();
  } else if (auto k = kind_from_string(which)) {
    kinds.push_back(*k);
  } else {
    AppResult r;
    r.exit_code = 1;
    r.err = "error: unknown demo '" + which + "' (allowed: all, gns, equiv, qubit, group, ccr, field, symmetry)\n";
    return r;
  }
  std::vector<Scenario> scenarios;
  for (Kind k : kinds)
    for (const auto& d : demos(k)) scenarios.push_back(parse_scenario(d.text, d.label));
  return run_loaded(scenarios, options);
}

}  // namespace aqt::cli
