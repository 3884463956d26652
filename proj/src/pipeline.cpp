// SPDX-License-Identifier: Apache-2.0
#include "starbif/pipeline.hpp"

#include <chrono>
#include <algorithm>
#include <sstream>

namespace starbif {

ReportBundle run_pipeline(const ProblemSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  ReportBundle bundle;
  bundle.spec = spec;

  // geometry gate
  const Domain d = domain_of(spec);
  bundle.star_margin = star_shape_margin(d);
  if (!(bundle.star_margin > 0.0))
    throw NotStarShaped("boundary support function is not strictly positive");

  // assembly
  const Grid grid = build_grid(d, spec.n, spec.nu_max);
  const PotentialField f = potential_of(spec, d);
  const OperatorTriple ops = assemble_stiffness(grid);

  // spectral sweep and crossing localization; endpoint degeneracies
  // propagate as AssumptionViolation (exit code 2)
  bundle.trace = sweep_eigenvalues(grid, ops, f, spec.sweep);
  bundle.crossings = locate_conjugate_points(grid, ops, f, bundle.trace, spec.sweep);

  if (d.kind == DomainKind::Disk && !ops.blocks.empty()) {
    // a top mode active at r = 1 means higher modes may contribute too
    OperatorTriple top;
    top.blocks.push_back(ops.blocks.back());
    PotentialDiag W1;
    W1.r = 1.0;
    W1.blocks.push_back(assemble_potential(grid, f, 1.0).blocks.back());
    if (negative_count(top, W1, 0.0) > 0) {
      std::ostringstream w;
      w << "angular mode " << ops.blocks.back().mode.nu
        << " still carries negative eigenvalues at r = 1; increase nu_max to be sure no "
           "crossings are missed";
      bundle.warnings.push_back(w.str());
    }
  }

  try {
    // crossing forms, both routes
    const BoundarySample bs = boundary_sample(d, 256);
    for (ConjugatePoint& cp : bundle.crossings)
      bundle.forms.push_back(evaluate_crossing_forms(grid, ops, bs, f, cp));

    // index identity ledger (uses the signatures just computed)
    bundle.smale = smale_check(bundle.trace, bundle.crossings);

    // bifurcation scan
    if (spec.run_bifurcation) {
      const NonlinearitySpec gs = nonlinearity_of(spec, d);
      if (gs.is_linear()) {
        bundle.warnings.push_back(
            "nonlinearity is linear (kappa = q = 0): branch probing is skipped, since no "
            "solutions exist off the kernel");
      } else {
        // the reduced Fourier space must cover every crossing mode
        int harmonics = 6;
        for (const ConjugatePoint& cp : bundle.crossings)
          for (const KernelVector& kv : cp.kernel) harmonics = std::max(harmonics, kv.nu);
        NonlinearProblem problem(grid, gs, harmonics);
        bundle.scan =
            bifurcation_scan(problem, bundle.crossings, bundle.trace.morse_full, spec.probe);
        bundle.bifurcation_ran = true;
      }
    }
  } catch (const Error& err) {
    bundle.partial = true;
    bundle.partial_reason = err.what();
  }

  // verdicts
  bundle.verdict_index_identity = !bundle.partial && bundle.smale.identity_holds;
  bundle.verdict_signed_identity = !bundle.partial && bundle.smale.signed_identity_holds;
  bundle.verdict_equivalence =
      bundle.bifurcation_ran ? (bundle.scan.equivalence_holds && bundle.scan.no_spurious) : true;
  bundle.verdict_count_bound = bundle.bifurcation_ran ? bundle.scan.corollary_holds : true;

  bundle.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return bundle;
}

}  // namespace starbif
