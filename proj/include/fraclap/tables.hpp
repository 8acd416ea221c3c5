// Reference tables, directed decimal rendering and table reproduction.
#pragma once

#include "fraclap/spectrum.hpp"

#include <limits>
#include <string>
#include <vector>

namespace fraclap {

/// One printed cell: row N shows lambda_upper^(N)_{d,n} and lambda_lower^(N-1)_{d,n}.
struct ReferenceCell {
  int table = 0;
  int d = 0;
  int n = 0;
  int N = 0;
  std::string alpha;
  std::string lower;  // 9 decimals
  std::string upper;  // 9 decimals or "inf"
};

const std::vector<ReferenceCell>& reference_tables();
std::vector<ReferenceCell> reference_table(int which);

/// `digits` significant digits, rounded down for a lower bound and up for an upper bound.
std::string render_bound(const Real& x, int digits, bool upper);
/// Fixed-point with `decimals` digits after the point, directed as above.
std::string render_fixed(const Real& x, int decimals, bool upper);
/// Radius rounded up to three significant digits; "0" for an exact ball.
std::string render_radius(const Real& rad);

inline constexpr long long kUnitsInfinite = std::numeric_limits<long long>::max();
/// Signed difference computed - printed in units of the last place of `printed`;
/// kUnitsInfinite when exactly one side is "inf".
long long units_apart(const std::string& computed, const std::string& printed);

struct TableCell {
  ReferenceCell ref;
  RadialBound bound;
  Precision precision = 0;
  std::string lower, upper;  // rendered with the printed decimals
  long long lower_units = 0, upper_units = 0;
  bool matches() const;      // both within one unit
};

/// Every cell of table `which` (1..4), computed at `precision`; cells run in parallel.
std::vector<TableCell> compute_table(int which, Precision precision = kDefaultPrecision, double tol = kDefaultTol);

}  // namespace fraclap
