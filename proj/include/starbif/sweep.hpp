// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "starbif/spectrum.hpp"

namespace starbif {

struct SweepParams {
  double r_min = 0.02;
  int r_points = 200;       // uniform grid on [r_min, 1]
  int k = 8;                // eigenvalues tracked per r
  double tol_zero = -1.0;   // < 0: auto = 10 h^2 |f|_inf + 1e-9
  double refine_tol_r = 1e-6;
  int max_bisect = 60;
};

/// Lowest-k eigenvalue curves and the Morse index along the r grid.
struct EigenTrace {
  std::vector<double> r_values;
  std::vector<std::vector<double>> mu;   // per r, ascending, degeneracy-expanded
  std::vector<int> morse;                // #{mu < -tol_zero}
  std::vector<bool> indeterminate;       // |mu| <= tol_zero hit at this grid point
  double tol_zero = 0.0;
  int k = 0;
  int morse_rmin = 0;
  int morse_full = 0;                    // Morse index at r = 1
};

/// A refined crossing of the Hessian path: location, kernel, and (after
/// crossing-form evaluation) the form matrix and its signature.
struct ConjugatePoint {
  double r_star = 0.0;
  int multiplicity = 0;          // Morse-index jump across r_star
  int kernel_dim = 0;            // near-null cluster dimension found at r_star
  std::vector<KernelVector> kernel;
  Eigen::MatrixXd gamma;         // crossing form on the kernel basis (volume route)
  int n_plus = 0, n_minus = 0, n_zero = 0;
  bool regular = false;          // n_zero == 0
  double max_eigen_residual = 0.0;
  double boundary_rel_err = 0.0; // volume/boundary route discrepancy
  double fd_check_error = 0.0;
  bool merged = false;           // coalesced from crossings closer than 2 refine_tol_r
  bool nonmonotone = false;      // index oscillated inside the bracket
};

/// Ledger for the index identity M = sum of crossing multiplicities and
/// its signed spectral-flow form.
struct SmaleReport {
  int morse_full = 0;            // M at r = 1
  int morse_rmin = 0;            // expected 0
  int sum_multiplicities = 0;
  bool identity_holds = false;   // morse_full == sum_multiplicities
  int sgn_gamma_sum = 0;         // sum of signatures over regular crossings
  bool signed_identity_holds = false;  // morse_rmin - morse_full == sgn_gamma_sum
  int irregular_crossings = 0;   // excluded from the signed sum, reported
  std::vector<std::string> notes;
};

/// Eigensolves over the r grid. Throws AssumptionViolation if the index
/// is indeterminate at r = 1 (endpoint kernel; rerun with endpoint 1-eps)
/// or at r_min.
EigenTrace sweep_eigenvalues(const Grid& g, const OperatorTriple& ops, const PotentialField& f,
                             const SweepParams& params);

/// Bisection on Morse-index jumps between adjacent determinate grid
/// points; multiplicity = total jump; kernel extracted at the refined
/// location. Crossings closer than 2 refine_tol_r merge.
std::vector<ConjugatePoint> locate_conjugate_points(const Grid& g, const OperatorTriple& ops,
                                                    const PotentialField& f,
                                                    const EigenTrace& trace,
                                                    const SweepParams& params);

/// Verifies M = sum m(r*) and the signed form using the signatures
/// filled in by the crossing-form evaluation. A false identity is a
/// reported result, not an error.
SmaleReport smale_check(const EigenTrace& trace, const std::vector<ConjugatePoint>& crossings);

/// Auto tolerance: 10 h^2 |f|_inf + 1e-9, with |f|_inf sampled on the grid.
double default_tol_zero(const Grid& g, const PotentialField& f);

}  // namespace starbif
