// Upper bounds from the generalized problem A x = lambda B x.
#pragma once

#include "fraclap/basis.hpp"
#include "fraclap/matrix.hpp"
#include "fraclap/xreal.hpp"

#include <vector>

namespace fraclap {

/// Lower-triangular L with L L^T = B; throws NotPositiveDefinite on a pivot
/// that is not certainly positive.
Matrix<XReal> cholesky(const Matrix<XReal>& B);

struct SymEigen {
  std::vector<XReal> values;  // ascending; each ball holds exactly one eigenvalue
  Matrix<Real> vectors;       // columns, matching `values`
  int sweeps = 0;
};

/// Cyclic Jacobi on the midpoints of C, then residual certification
/// |C v - theta v| / |v| evaluated in ball arithmetic over the whole of C.
/// Throws NonConvergence if the sweep limit is hit or enclosures overlap.
SymEigen sym_eigen(const Matrix<XReal>& C, double tol = 0.0);

struct UpperBounds {
  ProblemParams params;
  std::vector<XReal> enclosures;  // enclosure of the n-th pencil eigenvalue, ascending

  /// Certified upper bound for index n (+inf for n >= N).
  Real upper(int n) const;
  int size() const { return static_cast<int>(enclosures.size()); }
};

UpperBounds upper_bounds(const ProblemParams& params);
UpperBounds upper_bounds_serial(const ProblemParams& params);

}  // namespace fraclap
