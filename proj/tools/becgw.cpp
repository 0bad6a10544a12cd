// Command-line front end: parses arguments, hands off to run_command, and
// maps failures to exit codes (2 = invalid input, 3 = numerical failure).

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "becgw/errors.hpp"
#include "becgw/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Phonon dynamics in modulated condensates: simulate mode evolution, scan "
      "drive frequencies, plan magnetic-field schedules, derive binary-source "
      "wave parameters, and verify the curved-chart reduction."};
  app.require_subcommand(1);

  becgw::RunOptions opt;
  double tolerance = 0.0;
  int threads = 0;
  std::string format;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", opt.scenario_path, "scenario file (.toml or .json)")
        ->required();
    sub->add_option("--out", opt.out_dir, "output directory for artifacts")->required();
    sub->add_option("--tolerance", tolerance, "integrator tolerance override");
    sub->add_option("--threads", threads, "worker thread override");
    sub->add_option("--format", format, "artifact format override: csv or json");
  };

  add_common(app.add_subcommand(
      "simulate", "evolve the mode ensemble through the configured drive"));
  add_common(app.add_subcommand(
      "scan", "sweep drive frequencies and fit conversion growth per mode"));
  add_common(app.add_subcommand(
      "plan", "derive the magnetic-field schedule realizing a target amplitude"));
  add_common(app.add_subcommand(
      "source", "compute far-field wave parameters for a compact binary"));
  add_common(app.add_subcommand(
      "verify", "check the curved-chart pullback against the strained form"));

  CLI11_PARSE(app, argc, argv);

  opt.command = app.get_subcommands().front()->get_name();
  if (tolerance != 0.0) opt.tolerance = tolerance;
  if (threads != 0) opt.threads = threads;
  if (!format.empty()) opt.format = format;

  try {
    becgw::run_command(opt);
  } catch (const becgw::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const becgw::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cout << "wrote artifacts to " << opt.out_dir << "\n";
  return 0;
}
