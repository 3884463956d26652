// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "starbif/bifurcation.hpp"
#include "starbif/config.hpp"
#include "starbif/crossing_form.hpp"
#include "starbif/sweep.hpp"

namespace starbif {

/// Everything one run produces, plus per-theorem verdicts derived from it.
struct ReportBundle {
  ProblemSpec spec;
  double star_margin = 0.0;
  EigenTrace trace;
  std::vector<ConjugatePoint> crossings;
  std::vector<CrossingFormResult> forms;
  SmaleReport smale;
  ScanFindings scan;
  bool bifurcation_ran = false;
  bool partial = false;          // a fatal stage aborted the remainder
  std::string partial_reason;

  // verdicts (pure functions of the data above)
  bool verdict_index_identity = false;   // M = sum m(r)
  bool verdict_signed_identity = false;  // spectral-flow form
  bool verdict_equivalence = false;      // bifurcation points == conjugate points
  bool verdict_count_bound = false;      // floor(M / max m) distinct points

  double runtime_seconds = 0.0;
  std::vector<std::string> warnings;
};

/// geometry check -> assembly -> sweep -> crossing forms -> index
/// identity -> bifurcation scan. Stages after a fatal error are skipped
/// and the bundle is marked partial. Assumption violations at the sweep
/// endpoints propagate as AssumptionViolation.
ReportBundle run_pipeline(const ProblemSpec& spec);

}  // namespace starbif
