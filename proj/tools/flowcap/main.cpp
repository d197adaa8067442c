#include <CLI11.hpp>

#include <iostream>

#include "experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"flowcap - flow-map composition and analysis experiments"};
  app.require_subcommand(1);

  std::string run_path, validate_path;
  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", run_path, "JSON experiment config")->required();
  auto* validate =
      app.add_subcommand("validate", "check a config without running it");
  validate->add_option("config", validate_path, "JSON experiment config")
      ->required();
  auto* list = app.add_subcommand(
      "list", "list built-in named fields and example configs");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return flowcap::cli::run_config(run_path);
  if (validate->parsed()) {
    const auto issues = flowcap::cli::validate_config(validate_path);
    for (const auto& msg : issues) std::cout << msg << "\n";
    if (issues.empty()) std::cout << "ok\n";
    return issues.empty() ? flowcap::cli::kOk : flowcap::cli::kConfigError;
  }
  if (list->parsed()) flowcap::cli::print_catalog();
  return 0;
}
