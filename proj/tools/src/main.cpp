#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "app.hpp"

int main(int argc, char** argv) {
  CLI::App app{"aqt: scenario runner for finite-dimensional operator-algebra analyses"};
  app.require_subcommand(1);

  aqt::cli::AppOptions options;
  double tol = 0.0;
  std::string csv;
  std::string path;
  std::string which;

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--tol", tol, "Tolerance for every check the scenario does not override")->check(CLI::NonNegativeNumber);
    sub->add_option("--jobs", options.jobs, "Worker threads for a batch")->check(CLI::Range(1, 256));
    sub->add_option("--csv", csv, "Directory for CSV artifacts");
  };

  CLI::App* run = app.add_subcommand("run", "Run a scenario file or a directory of scenario files");
  run->add_option("path", path, "Scenario file or directory")->required();
  add_run_flags(run);

  CLI::App* validate = app.add_subcommand("validate", "Check scenario files against the schema without computing");
  validate->add_option("path", path, "Scenario file or directory")->required();

  CLI::App* demo = app.add_subcommand("demo", "Run the built-in scenarios of one kind, or all of them");
  demo->add_option("kind", which, "gns, equiv, qubit, group, ccr, field, symmetry or all")->required();
  add_run_flags(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  for (CLI::App* sub : {run, demo}) {
    if (sub->count("--tol")) options.tol = tol;
    if (sub->count("--csv")) options.csv_dir = csv;
  }

  aqt::cli::AppResult r;
  try {
    if (*run) r = aqt::cli::run_command(path, options);
    else if (*validate) r = aqt::cli::validate_command(path);
    else r = aqt::cli::demo_command(which, options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::fwrite(r.out.data(), 1, r.out.size(), stdout);
  std::fwrite(r.err.data(), 1, r.err.size(), stderr);
  return r.exit_code;
}
