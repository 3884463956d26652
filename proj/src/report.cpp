// SPDX-License-Identifier: Apache-2.0
#include "starbif/report.hpp"

#include <Eigen/Dense>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace starbif {

namespace {

std::string f17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw NumericalFailure("cannot open '" + p.string() + "' for writing");
  return out;
}

std::string joined_gamma_eigenvalues(const Eigen::MatrixXd& gamma) {
  if (gamma.size() == 0) return "";
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma, Eigen::EigenvaluesOnly);
  std::string out;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (i) out += ';';
    out += f17(es.eigenvalues()[i]);
  }
  return out;
}

void write_trace_csv(const ReportBundle& b, const std::filesystem::path& p) {
  std::ofstream out = open_out(p);
  out << "r";
  for (int i = 1; i <= b.trace.k; ++i) out << ",mu_" << i;
  out << ",morse_index\n";
  for (std::size_t i = 0; i < b.trace.r_values.size(); ++i) {
    out << f17(b.trace.r_values[i]);
    for (int j = 0; j < b.trace.k; ++j) {
      out << ',';
      if (j < static_cast<int>(b.trace.mu[i].size())) out << f17(b.trace.mu[i][j]);
    }
    out << ',' << b.trace.morse[i] << '\n';
  }
  if (!out) throw NumericalFailure("write failed for '" + p.string() + "'");
}

void write_conjugate_csv(const ReportBundle& b, const std::filesystem::path& p) {
  std::ofstream out = open_out(p);
  out << "r_star,multiplicity,signature,residual,gamma_eigenvalues,boundary_rel_err,"
         "fd_check_error\n";
  for (const ConjugatePoint& cp : b.crossings) {
    out << f17(cp.r_star) << ',' << cp.multiplicity << ',' << cp.n_plus << ';' << cp.n_minus
        << ';' << cp.n_zero << ',' << f17(cp.max_eigen_residual) << ','
        << joined_gamma_eigenvalues(cp.gamma) << ',' << f17(cp.boundary_rel_err) << ','
        << f17(cp.fd_check_error) << '\n';
  }
  if (!out) throw NumericalFailure("write failed for '" + p.string() + "'");
}

void write_bifurcation_csv(const ReportBundle& b, const std::filesystem::path& p) {
  std::ofstream out = open_out(p);
  out << "r_star_detected,matched_conjugate_r,distance,side,norms\n";
  for (const BifurcationPoint& bp : b.scan.points) {
    out << f17(bp.r_detected) << ','
        << f17(b.crossings.at(bp.conjugate_index).r_star) << ',' << f17(bp.distance) << ','
        << bp.witness.side << ',';
    for (std::size_t i = 0; i < bp.witness.h1_norms.size(); ++i) {
      if (i) out << ';';
      out << f17(bp.witness.h1_norms[i]);
    }
    out << '\n';
  }
  if (!out) throw NumericalFailure("write failed for '" + p.string() + "'");
}

void write_meta(const ReportBundle& b, const std::filesystem::path& p) {
  std::ofstream out = open_out(p);
  const auto& s = b.spec;
  out << "domain = " << (s.domain.kind == DomainKind::Interval ? "interval" : "disk") << '\n';
  if (s.domain.kind == DomainKind::Interval)
    out << "a = " << f17(s.domain.a) << "\nb = " << f17(s.domain.b) << '\n';
  else
    out << "radius = " << f17(s.domain.radius) << '\n';
  out << "n = " << s.n << '\n';
  out << "nu_max = " << s.nu_max << '\n';
  out << "r_min = " << f17(s.sweep.r_min) << '\n';
  out << "r_points = " << s.sweep.r_points << '\n';
  out << "k = " << s.sweep.k << '\n';
  out << "tol_zero = " << f17(b.trace.tol_zero) << '\n';
  out << "refine_tol_r = " << f17(s.sweep.refine_tol_r) << '\n';
  out << "star_shape_margin = " << f17(b.star_margin) << '\n';
  out << "morse_index = " << b.trace.morse_full << '\n';
  out << "morse_index_rmin = " << b.trace.morse_rmin << '\n';
  out << "conjugate_points = " << b.crossings.size() << '\n';
  out << "bifurcation_points = " << b.scan.points.size() << '\n';
  out << "bifurcation_ran = " << (b.bifurcation_ran ? "true" : "false") << '\n';
  out << "partial = " << (b.partial ? "true" : "false") << '\n';
  out << "runtime_seconds = " << f17(b.runtime_seconds) << '\n';
  if (!out) throw NumericalFailure("write failed for '" + p.string() + "'");
}

const char* pass(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

std::string format_report(const ReportBundle& b) {
  std::ostringstream os;
  const auto& s = b.spec;
  os << "=== shrinking-domain spectral sweep report ===\n\n";
  if (s.domain.kind == DomainKind::Interval)
    os << "domain: interval (" << f17(s.domain.a) << ", " << f17(s.domain.b) << ")\n";
  else
    os << "domain: disk of radius " << f17(s.domain.radius) << " (modes 0.." << s.nu_max << ")\n";
  os << "star-shape margin: " << f17(b.star_margin) << "\n";
  os << "grid: n = " << s.n << ", r in [" << f17(s.sweep.r_min) << ", 1] with "
     << s.sweep.r_points << " points, tol_zero = " << f17(b.trace.tol_zero) << "\n\n";

  os << "Morse index at r = 1:      M = " << b.trace.morse_full << "\n";
  os << "Morse index at r_min:      " << b.trace.morse_rmin << "\n";
  os << "conjugate points found:    " << b.crossings.size() << "\n\n";

  for (std::size_t i = 0; i < b.crossings.size(); ++i) {
    const ConjugatePoint& cp = b.crossings[i];
    os << "  [" << i + 1 << "] r* = " << f17(cp.r_star) << "  m = " << cp.multiplicity
       << "  signature = (" << cp.n_plus << ", " << cp.n_minus << ", " << cp.n_zero << ")"
       << (cp.regular ? "" : "  DEGENERATE") << "\n";
    if (cp.gamma.size() > 0)
      os << "      crossing form eigenvalues: " << joined_gamma_eigenvalues(cp.gamma)
         << "\n      volume/boundary discrepancy: " << f17(cp.boundary_rel_err)
         << "   derivative probe deviation: " << f17(cp.fd_check_error) << "\n";
  }
  os << "\n";

  os << "index identity  M = sum m(r*):          " << b.smale.morse_full << " vs "
     << b.smale.sum_multiplicities << "  -> " << pass(b.verdict_index_identity) << "\n";
  os << "signed identity M(r_min) - M(1) = sum sgn Gamma: " << b.smale.morse_rmin << " - "
     << b.smale.morse_full << " vs " << b.smale.sgn_gamma_sum << "  -> "
     << pass(b.verdict_signed_identity) << "\n";

  if (b.bifurcation_ran) {
    os << "\nbifurcation scan:\n";
    for (const BifurcationPoint& bp : b.scan.points) {
      os << "  detected r = " << f17(bp.r_detected) << "  matches conjugate point "
         << bp.conjugate_index + 1 << " (distance " << f17(bp.distance) << ", side "
         << (bp.witness.side > 0 ? "+" : "-") << ")\n";
    }
    for (int idx : b.scan.undetected)
      os << "  NO branch found at conjugate point " << idx + 1 << "\n";
    for (std::size_t i = 0; i < b.scan.midpoint_rs.size(); ++i)
      os << "  midpoint probe at r = " << f17(b.scan.midpoint_rs[i])
         << " -> residual branch norm " << f17(b.scan.midpoint_norms[i]) << "\n";
    os << "bifurcation points are exactly the conjugate points: "
       << pass(b.verdict_equivalence) << "\n";
    os << "distinct bifurcation points >= floor(M / max m) = " << b.scan.corollary_bound << ": "
       << pass(b.verdict_count_bound) << " (" << b.scan.points.size() << " found)\n";
  } else {
    os << "\nbifurcation scan: skipped\n";
  }

  for (const std::string& note : b.smale.notes) os << "note: " << note << "\n";
  for (const std::string& warn : b.warnings) os << "warning: " << warn << "\n";
  if (b.partial) os << "PARTIAL RUN: " << b.partial_reason << "\n";
  os << "\nruntime: " << f17(b.runtime_seconds) << " s\n";
  return os.str();
}

void emit_reports(const ReportBundle& bundle, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::filesystem::path base(dir);
  if (!std::filesystem::is_directory(base))
    throw NumericalFailure("cannot create output directory '" + dir + "'");

  write_trace_csv(bundle, base / "trace.csv");
  write_conjugate_csv(bundle, base / "conjugate_points.csv");
  write_bifurcation_csv(bundle, base / "bifurcation.csv");
  {
    std::ofstream out = open_out(base / "report.txt");
    out << format_report(bundle);
    if (!out) throw NumericalFailure("write failed for report.txt");
  }
  write_meta(bundle, base / "run.meta");
}

}  // namespace starbif
