// SPDX-License-Identifier: Apache-2.0
#include "starbif/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace starbif {

double default_tol_zero(const Grid& g, const PotentialField& f) {
  double fmax = std::fabs(f(0.0));
  for (int j = 0; j < g.n; ++j) fmax = std::max(fmax, std::fabs(f(g.nodes[j])));
  return 10.0 * g.h * g.h * fmax + 1e-9;
}

namespace {

std::vector<double> make_r_grid(double r_min, int points) {
  if (!(r_min > 0.0 && r_min < 1.0)) throw ConfigError("r_min must lie in (0, 1)");
  if (points < 2) throw ConfigError("the r grid needs at least 2 points");
  std::vector<double> r(points);
  for (int i = 0; i < points; ++i)
    r[i] = r_min + (1.0 - r_min) * static_cast<double>(i) / (points - 1);
  r.back() = 1.0;
  return r;
}

}  // namespace

EigenTrace sweep_eigenvalues(const Grid& g, const OperatorTriple& ops, const PotentialField& f,
                             const SweepParams& params) {
  EigenTrace trace;
  trace.k = params.k;
  trace.tol_zero = params.tol_zero < 0.0 ? default_tol_zero(g, f) : params.tol_zero;
  trace.r_values = make_r_grid(params.r_min, params.r_points);
  trace.mu.reserve(trace.r_values.size());
  trace.morse.reserve(trace.r_values.size());
  trace.indeterminate.reserve(trace.r_values.size());

  for (double r : trace.r_values) {
    const PotentialDiag W = assemble_potential(g, f, r);
    const SpectrumSlice slice = compute_slice(ops, W, r, params.k, trace.tol_zero);
    std::vector<double> mus;
    mus.reserve(params.k);
    for (const EigenPair& p : slice.pairs) {
      for (int copy = 0; copy < p.degeneracy && static_cast<int>(mus.size()) < params.k; ++copy)
        mus.push_back(p.mu);
      if (static_cast<int>(mus.size()) >= params.k) break;
    }
    trace.mu.push_back(std::move(mus));
    trace.morse.push_back(slice.negative_count);
    trace.indeterminate.push_back(slice.indeterminate);
  }

  if (trace.indeterminate.back()) {
    std::ostringstream msg;
    msg << "degenerate endpoint: an eigenvalue lies within " << trace.tol_zero
        << " of zero at r = 1, so the full-domain problem has a near-kernel (the method "
           "requires m(1) = 0); rerun with the sweep endpoint moved to 1 - eps or perturb "
           "the coefficient";
    throw AssumptionViolation(msg.str());
  }
  if (trace.indeterminate.front()) {
    std::ostringstream msg;
    msg << "degenerate start: an eigenvalue lies within " << trace.tol_zero << " of zero at r = "
        << trace.r_values.front() << "; decrease r_min";
    throw AssumptionViolation(msg.str());
  }
  trace.morse_rmin = trace.morse.front();
  trace.morse_full = trace.morse.back();
  return trace;
}

namespace {

struct RawCrossing {
  double r_star;
  int jump;
  bool nonmonotone;
};

void localize(const std::function<int(double)>& count_at, double ra, int ca, double rb, int cb,
              double tol_r, int depth, int max_depth, bool flagged,
              std::vector<RawCrossing>& out) {
  if (cb == ca) return;
  if (rb - ra <= tol_r || depth >= max_depth) {
    out.push_back(RawCrossing{0.5 * (ra + rb), cb - ca, flagged});
    return;
  }
  const double rm = 0.5 * (ra + rb);
  const int cm = count_at(rm);
  // a count outside [ca, cb] means the index oscillates inside the
  // bracket; both halves are then localized and reported
  const bool osc = cm < std::min(ca, cb) || cm > std::max(ca, cb);
  localize(count_at, ra, ca, rm, cm, tol_r, depth + 1, max_depth, flagged || osc, out);
  localize(count_at, rm, cm, rb, cb, tol_r, depth + 1, max_depth, flagged || osc, out);
}

}  // namespace

std::vector<ConjugatePoint> locate_conjugate_points(const Grid& g, const OperatorTriple& ops,
                                                    const PotentialField& f,
                                                    const EigenTrace& trace,
                                                    const SweepParams& params) {
  auto count_at = [&](double r) {
    const PotentialDiag W = assemble_potential(g, f, r);
    return negative_count(ops, W, 0.0);
  };

  std::vector<RawCrossing> raw;
  // brackets run between consecutive determinate grid points; flagged
  // (indeterminate) points sit inside some bracket by construction
  int prev = 0;
  for (std::size_t i = 1; i < trace.r_values.size(); ++i) {
    if (trace.indeterminate[i]) continue;
    if (trace.morse[i] != trace.morse[prev]) {
      localize(count_at, trace.r_values[prev], trace.morse[prev], trace.r_values[i],
               trace.morse[i], params.refine_tol_r, 0, params.max_bisect, false, raw);
    }
    prev = static_cast<int>(i);
  }
  std::sort(raw.begin(), raw.end(),
            [](const RawCrossing& a, const RawCrossing& b) { return a.r_star < b.r_star; });

  // merge crossings closer than 2 refine_tol_r
  std::vector<ConjugatePoint> crossings;
  for (std::size_t i = 0; i < raw.size();) {
    double r_star = raw[i].r_star;
    int jump = raw[i].jump;
    bool flagged = raw[i].nonmonotone;
    bool merged = false;
    std::size_t j = i + 1;
    while (j < raw.size() && raw[j].r_star - raw[j - 1].r_star < 2.0 * params.refine_tol_r) {
      jump += raw[j].jump;
      flagged = flagged || raw[j].nonmonotone;
      merged = true;
      ++j;
    }
    if (merged) {
      double acc = 0.0;
      for (std::size_t t = i; t < j; ++t) acc += raw[t].r_star;
      r_star = acc / static_cast<double>(j - i);
    }
    if (jump != 0) {
      ConjugatePoint cp;
      cp.r_star = r_star;
      cp.multiplicity = std::abs(jump);
      cp.merged = merged;
      cp.nonmonotone = flagged || jump < 0;
      crossings.push_back(std::move(cp));
    }
    i = j;
  }

  const double tol_kernel = 5.0 * trace.tol_zero;
  for (ConjugatePoint& cp : crossings) {
    const PotentialDiag W = assemble_potential(g, f, cp.r_star);
    cp.kernel = kernel_basis(ops, W, tol_kernel);
    cp.kernel_dim = static_cast<int>(cp.kernel.size());
    double worst = 0.0;
    for (const KernelVector& kv : cp.kernel) {
      const OperatorBlock& blk = ops.blocks[kv.block];
      Eigen::VectorXd Au = blk.K.apply(kv.radial) + W.blocks[kv.block].cwiseProduct(kv.radial);
      const double mu = kv.radial.dot(Au);
      Au -= mu * blk.B.cwiseProduct(kv.radial);
      worst = std::max(worst, Au.norm());
    }
    cp.max_eigen_residual = worst;
  }
  return crossings;
}

SmaleReport smale_check(const EigenTrace& trace, const std::vector<ConjugatePoint>& crossings) {
  SmaleReport rep;
  rep.morse_full = trace.morse_full;
  rep.morse_rmin = trace.morse_rmin;
  for (const ConjugatePoint& cp : crossings) rep.sum_multiplicities += cp.multiplicity;
  rep.identity_holds = (rep.morse_full == rep.sum_multiplicities);

  for (const ConjugatePoint& cp : crossings) {
    if (cp.regular)
      rep.sgn_gamma_sum += cp.n_plus - cp.n_minus;
    else
      ++rep.irregular_crossings;
  }
  rep.signed_identity_holds = (rep.morse_rmin - rep.morse_full == rep.sgn_gamma_sum);

  if (rep.morse_rmin != 0) {
    std::ostringstream note;
    note << "Morse index at r_min is " << rep.morse_rmin
         << " (expected 0): crossings below r_min are outside the sweep, and the identity "
            "is checked relative to the r_min endpoint";
    rep.notes.push_back(note.str());
  }
  if (rep.irregular_crossings > 0) {
    std::ostringstream note;
    note << rep.irregular_crossings
         << " crossing(s) have degenerate crossing forms and are excluded from the signed "
            "sum; the bifurcation and index theorems do not apply there (under-resolution "
            "is the likely cause)";
    rep.notes.push_back(note.str());
  }
  for (const ConjugatePoint& cp : crossings) {
    if (cp.kernel_dim != cp.multiplicity) {
      std::ostringstream note;
      note << "kernel dimension " << cp.kernel_dim << " != index jump " << cp.multiplicity
           << " at r* = " << cp.r_star << " (regular-crossing consistency violated)";
      rep.notes.push_back(note.str());
    }
    if (cp.merged)
      rep.notes.push_back("crossings closer than twice the refinement tolerance were merged");
    if (cp.nonmonotone)
      rep.notes.push_back(
          "index oscillation inside a bracket; sub-crossings reported (refine the r grid)");
  }
  return rep;
}

}  // namespace starbif
