// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "starbif/pipeline.hpp"
#include "starbif/report.hpp"

using namespace starbif;

namespace {

ProblemSpec small_benchmark() {
  return parse_config(
      "[domain]\nkind = interval\n"
      "[potential]\nconstant = -100\n"
      "[nonlinearity]\nkappa = 1\n"
      "[sweep]\nn = 300\nr_points = 80\n");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("benchmark pipeline: six crossings, identity, six bifurcation points") {
  ReportBundle bundle = run_pipeline(small_benchmark());
  CHECK_FALSE(bundle.partial);
  CHECK(bundle.trace.morse_full == 6);
  CHECK(bundle.crossings.size() == 6);
  CHECK(bundle.smale.identity_holds);
  CHECK(bundle.smale.sgn_gamma_sum == -6);
  CHECK(bundle.smale.signed_identity_holds);
  CHECK(bundle.bifurcation_ran);
  CHECK(bundle.scan.points.size() == 6);
  CHECK(bundle.verdict_index_identity);
  CHECK(bundle.verdict_signed_identity);
  CHECK(bundle.verdict_equivalence);
  CHECK(bundle.verdict_count_bound);
}

TEST_CASE("a weak potential yields an empty but vacuously verified bundle") {
  ProblemSpec spec = parse_config(
      "[domain]\nkind = interval\n[potential]\nconstant = -0.1\n"
      "[nonlinearity]\nkappa = 1\n[sweep]\nn = 200\nr_points = 40\n");
  ReportBundle bundle = run_pipeline(spec);
  CHECK(bundle.trace.morse_full == 0);
  CHECK(bundle.crossings.empty());
  CHECK(bundle.scan.points.empty());
  CHECK(bundle.verdict_index_identity);
  CHECK(bundle.verdict_signed_identity);
  CHECK(bundle.verdict_equivalence);
  CHECK(bundle.verdict_count_bound);
}

TEST_CASE("disk pipeline with a non-constant radial potential verifies its own identity") {
  // no closed form here: the run is validated by its internal
  // cross-checks (index identity, route agreement, signed sum)
  ProblemSpec spec = parse_config(
      "[domain]\nkind = disk\nradius = 1\n"
      "[potential]\nradial_poly = -36 -10\n"
      "[sweep]\nn = 400\nr_points = 80\nnu_max = 4\nk = 10\n"
      "[bifurcation]\nenabled = false\n");
  ReportBundle bundle = run_pipeline(spec);
  CHECK_FALSE(bundle.partial);
  CHECK(bundle.trace.morse_full > 0);
  CHECK(bundle.smale.identity_holds);
  CHECK(bundle.smale.signed_identity_holds);
  for (const auto& cp : bundle.crossings) {
    CHECK(cp.regular);
    CHECK(cp.n_minus == cp.multiplicity);
    CHECK(cp.boundary_rel_err <= 0.005);
  }
}

TEST_CASE("endpoint degeneracy propagates as an assumption violation") {
  const double c = 1.5 * M_PI;
  std::ostringstream cfg;
  cfg << "[domain]\nkind = interval\n[potential]\nconstant = " << -c * c
      << "\n[sweep]\nn = 400\nr_points = 40\n";
  CHECK_THROWS_AS(run_pipeline(parse_config(cfg.str())), AssumptionViolation);
}

TEST_CASE("non-star-shaped domains are rejected before any assembly") {
  ProblemSpec spec = small_benchmark();
  spec.domain.a = 0.25;
  CHECK_THROWS_AS(run_pipeline(spec), NotStarShaped);
}

TEST_CASE("report emission writes the five artifacts with exact headers") {
  ProblemSpec spec = small_benchmark();
  spec.sweep.r_points = 40;
  spec.n = 200;
  ReportBundle bundle = run_pipeline(spec);

  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "starbif_report_test";
  std::filesystem::remove_all(dir);
  emit_reports(bundle, dir.string());

  for (const char* name :
       {"trace.csv", "conjugate_points.csv", "bifurcation.csv", "report.txt", "run.meta"})
    CHECK(std::filesystem::exists(dir / name));

  const std::string trace = slurp(dir / "trace.csv");
  CHECK(trace.rfind("r,mu_1,", 0) == 0);
  CHECK(trace.find(",morse_index") != std::string::npos);
  // header + one row per r grid point
  CHECK(std::count(trace.begin(), trace.end(), '\n') == 1 + spec.sweep.r_points);

  const std::string conj = slurp(dir / "conjugate_points.csv");
  CHECK(conj.rfind("r_star,multiplicity,signature,residual,gamma_eigenvalues,boundary_rel_err,"
                   "fd_check_error",
                   0) == 0);
  CHECK(std::count(conj.begin(), conj.end(), '\n') == 1 + 6);

  const std::string bif = slurp(dir / "bifurcation.csv");
  CHECK(bif.rfind("r_star_detected,matched_conjugate_r,distance,side,norms", 0) == 0);

  const std::string report = slurp(dir / "report.txt");
  CHECK(report.find("PASS") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("two runs of the same config produce identical bytes") {
  ProblemSpec spec = small_benchmark();
  spec.sweep.r_points = 30;
  spec.n = 150;

  const std::filesystem::path dir1 = std::filesystem::temp_directory_path() / "starbif_det_1";
  const std::filesystem::path dir2 = std::filesystem::temp_directory_path() / "starbif_det_2";
  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);
  emit_reports(run_pipeline(spec), dir1.string());
  emit_reports(run_pipeline(spec), dir2.string());

  for (const char* name : {"trace.csv", "conjugate_points.csv", "bifurcation.csv"})
    CHECK(slurp(dir1 / name) == slurp(dir2 / name));
  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("empty results still produce files with headers") {
  ProblemSpec spec = parse_config(
      "[domain]\nkind = interval\n[potential]\nconstant = 5\n"
      "[sweep]\nn = 100\nr_points = 20\n");
  ReportBundle bundle = run_pipeline(spec);
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "starbif_empty";
  std::filesystem::remove_all(dir);
  emit_reports(bundle, dir.string());
  const std::string conj = slurp(dir / "conjugate_points.csv");
  CHECK(std::count(conj.begin(), conj.end(), '\n') == 1);
  const std::string bif = slurp(dir / "bifurcation.csv");
  CHECK(std::count(bif.begin(), bif.end(), '\n') == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("unwritable output locations raise an I/O failure") {
  ProblemSpec spec = parse_config(
      "[domain]\nkind = interval\n[potential]\nconstant = 5\n"
      "[sweep]\nn = 100\nr_points = 20\n");
  ReportBundle bundle = run_pipeline(spec);
  CHECK_THROWS_AS(emit_reports(bundle, "/proc/starbif_forbidden/out"), NumericalFailure);
}

TEST_CASE("skipping bifurcation leaves the scan empty but verdicts defined") {
  ProblemSpec spec = small_benchmark();
  spec.run_bifurcation = false;
  spec.sweep.r_points = 40;
  spec.n = 200;
  ReportBundle bundle = run_pipeline(spec);
  CHECK_FALSE(bundle.bifurcation_ran);
  CHECK(bundle.scan.points.empty());
  CHECK(bundle.verdict_index_identity);
}
