// Radial bound pairs with precision escalation, the full spectrum assembled
// over angular degrees, and the comparison with the alpha = 2 spectrum.
#pragma once

#include "fraclap/basis.hpp"
#include "fraclap/xreal.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fraclap {

struct RadialBound {
  int n = 0;
  XReal lower_enc{kMinPrecision};  // enclosure of lambda_lower^(N-1)_{d,n}
  XReal upper_enc{kMinPrecision};  // enclosure of lambda_upper^(N)_{d,n}; unused when n >= N
  Real lower{kMinPrecision};       // certified, rounded down
  Real upper{kMinPrecision};       // certified, rounded up; +inf for n >= N
  bool finite_upper() const { return upper.is_finite(); }
};

struct BoundsResult {
  ProblemParams params;  // at the precision that met tol
  std::vector<RadialBound> entries;
  int escalations = 0;
};

/// Row N pairs lambda_upper^(N) with lambda_lower^(N-1) (N = 0: mu_n and +inf).
/// Escalates precision by 64 bits while any certified radius exceeds
/// tol * max(1, |value|) or a NumericFailure occurs; PrecisionExhausted past 4096 bits.
BoundsResult radial_bounds(const ProblemParams& params, int n_max);
BoundsResult radial_bounds_serial(const ProblemParams& params, int n_max);

struct SpectrumEntry {
  int l = 0;
  int n = 0;
  std::uint64_t multiplicity = 0;
  Real lower{kMinPrecision};
  Real upper{kMinPrecision};
  bool ambiguous = false;  // interval overlaps a neighbour's
};

struct Spectrum {
  std::vector<SpectrumEntry> entries;
  bool complete = true;  // omitted families certified to lie above the last reported upper bound
  std::string warning;
};

/// Merge of radial_bounds at dimensions d + 2l, l = 0..l_max, sorted by lower
/// bound and truncated once the multiplicities reach count.  Throws InvalidCut
/// when family l_max + 1 certainly enters before the count-th eigenvalue.
Spectrum full_spectrum(const ProblemParams& params, int l_max, int count);
Spectrum full_spectrum_serial(const ProblemParams& params, int l_max, int count);

struct CrossCheck {
  Real lower_alpha{kMinPrecision}, upper_alpha{kMinPrecision};  // bounds at alpha
  Real lower_two{kMinPrecision}, upper_two{kMinPrecision};      // bounds at alpha = 2
  Real window_lo{kMinPrecision}, window_hi{kMinPrecision};      // (1/2) lower_two^{a/2}, upper_two^{a/2}
  bool lower_ok = false;  // lower_alpha >= window_lo
  bool upper_ok = false;  // upper_alpha <= window_hi
  bool consistent() const { return lower_ok && upper_ok; }
};
/// (1/2) lambda_n(2)^{a/2} <= lambda_n(a) <= lambda_n(2)^{a/2}, checked against both computed intervals.
CrossCheck cs05_crosscheck(const ProblemParams& params, int n);

}  // namespace fraclap
