// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: reads a problem config, runs the sweep /
// crossing-form / bifurcation pipeline, and writes the CSV + text reports.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "starbif/pipeline.hpp"
#include "starbif/report.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw starbif::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conjugate-point and bifurcation detector for shrinking star-shaped domains"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int grid_n = 0;
  int rgrid = 0;
  bool skip_bifurcation = false;

  CLI::App* run = app.add_subcommand("run", "run the full pipeline on a config file");
  run->add_option("config", config_path, "path to the problem config")->required();
  run->add_option("--out", out_dir, "output directory (overrides [output] dir)");
  run->add_option("--grid", grid_n, "override nodes per direction n");
  run->add_option("--rgrid", rgrid, "override the number of r grid points");
  run->add_flag("--skip-bifurcation", skip_bifurcation, "skip the branch-probing stage");

  CLI11_PARSE(app, argc, argv);

  try {
    starbif::ProblemSpec spec = starbif::parse_config(slurp(config_path));
    if (!out_dir.empty()) spec.output_dir = out_dir;
    if (grid_n > 0) spec.n = grid_n;
    if (rgrid > 0) spec.sweep.r_points = rgrid;
    if (skip_bifurcation) spec.run_bifurcation = false;

    const starbif::ReportBundle bundle = starbif::run_pipeline(spec);
    starbif::emit_reports(bundle, spec.output_dir);
    std::cout << starbif::format_report(bundle);
    if (bundle.partial) {
      std::cerr << "error: pipeline incomplete: " << bundle.partial_reason << "\n";
      return 3;
    }
    return 0;
  } catch (const starbif::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  } catch (const starbif::AssumptionViolation& err) {
    std::cerr << "assumption violated: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
}
