// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "starbif/pipeline.hpp"

namespace starbif {

/// Writes trace.csv, conjugate_points.csv, bifurcation.csv, report.txt
/// and run.meta into `dir` (created if missing). Floating point is
/// serialized with 17 significant digits; two runs of the same config
/// produce identical bytes. I/O failures raise NumericalFailure with the
/// offending path.
void emit_reports(const ReportBundle& bundle, const std::string& dir);

/// The human-readable verdict summary (contents of report.txt).
std::string format_report(const ReportBundle& bundle);

}  // namespace starbif
