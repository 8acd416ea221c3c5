// mu_n, sigma_n, pi_{m,n}, the Rayleigh-Ritz matrices and angular multiplicities.
#pragma once

#include "fraclap/matrix.hpp"
#include "fraclap/xreal.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fraclap {

inline constexpr Precision kDefaultPrecision = 256;
inline constexpr Precision kMaxPrecision = 4096;
inline constexpr double kDefaultTol = 1e-12;

struct ProblemParams {
  int d = 1;
  std::string alpha_text = "1";  // decimal as given by the caller
  XReal alpha{Precision{kDefaultPrecision}};
  int N = 1;
  Precision precision = kDefaultPrecision;
  double tol = kDefaultTol;

  /// Validates and builds; alpha is parsed from decimal into a ball at `precision`.
  static ProblemParams make(int d, std::string_view alpha, int N, Precision precision = kDefaultPrecision,
                            double tol = kDefaultTol);
  ProblemParams with_precision(Precision p) const;
  ProblemParams with_N(int n) const;
  ProblemParams with_d(int dim) const;

  XReal half_d() const;       // d/2
  XReal beta() const;         // alpha/2
  XReal half_d_alpha() const; // (d + alpha)/2
};

XReal mu(int n, const ProblemParams& params);
XReal sigma(int n, const ProblemParams& params);
/// pi_{m,n} straight from the gamma formula, with 1/Gamma for the paired factors.
XReal pi_mn(int m, int n, const ProblemParams& params);

/// mu_0..mu_{count-1}, sigma_0..sigma_{count-1} and the pi block of size pi_size.
struct BasisScalars {
  std::vector<XReal> mu;
  std::vector<XReal> sigma;
  Matrix<XReal> pi;

  static BasisScalars compute(const ProblemParams& params, int count, int pi_size, bool parallel = true);
};

/// A = diag(mu_n sigma_n), B = (pi_{m,n}), 0 <= m, n < N.
struct ABMatrices {
  std::vector<XReal> A;
  Matrix<XReal> B;
};

ABMatrices assemble_AB(const ProblemParams& params);
ABMatrices assemble_AB_serial(const ProblemParams& params);

/// Dimension of the space of degree-l spherical harmonics in R^d.
std::uint64_t multiplicity(int d, int l);

}  // namespace fraclap
