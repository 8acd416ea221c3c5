// Lower bounds from the Weinstein-Aronszajn determinant w^(N)(lambda).
#pragma once

#include "fraclap/basis.hpp"
#include "fraclap/matrix.hpp"
#include "fraclap/specfun.hpp"
#include "fraclap/xreal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fraclap {

/// Q_n = P_n - P_{n+1}; constant coefficient exactly zero.
RadialPolynomial q_poly(int n, const ProblemParams& params);

/// int over the unit ball of |x|^{2k} (1 - |x|^2)^s dx
///   = pi^{d/2} Gamma(d/2 + k) Gamma(s + 1) / (Gamma(d/2) Gamma(d/2 + k + s + 1)).
XReal weighted_moment(long k, const XReal& s, int d);

struct SeriesValue {
  XReal value;       // includes the tail bound in its radius
  Real tail_bound;
  long terms = 0;    // truncation index J
};

/// I_{m,n} = sum_{j >= 1} sum_k c_k weighted_moment(k, j alpha/2, d), c = coeffs of Q_m Q_n,
/// truncated where the log-convexity tail bound drops below tol.  Throws
/// SeriesCapExceeded when the required J exceeds kSeriesCap.
inline constexpr long kSeriesCap = 1000000;
SeriesValue i_mn_series(int m, int n, const ProblemParams& params, double tol);

enum class IMethod { BetaSum, TanhSinh };
const char* to_string(IMethod m);

struct IMatrix {
  Matrix<XReal> entries;  // 0 <= m, n < size
  IMethod method = IMethod::BetaSum;
  Real error_estimate{Precision{kRadiusPrecision}};  // quadrature: largest level difference

  int size() const { return static_cast<int>(entries.rows()); }
};

/// q with alpha = 2/q exactly, when such an integer q <= 10^5 exists.
std::optional<long> alpha_reciprocal(const ProblemParams& params);

/// I-matrix of the given size at working precision params.precision + guard.
IMatrix imatrix(const ProblemParams& params, int size, bool parallel = true);
IMatrix imatrix_serial(const ProblemParams& params, int size);
/// Forces the quadrature route (used to cross-check the exact route).
IMatrix imatrix_quadrature(const ProblemParams& params, int size, bool parallel = true);

XReal i_mn(int m, int n, const ProblemParams& params);

/// W_{m,n}(lambda); throws PoleProximity when lambda is within 2^(-p/2) of a pole.
XReal wa_entry(int m, int n, const XReal& lambda, const BasisScalars& scalars, const IMatrix& I);

/// w^(N)(lambda) with N = I.size(), as the determinant of the pole-free bordered matrix
/// [[I, E^T S], [-E, D]], S = diag(lambda sigma_k), D = diag(mu_k - lambda), k = 0..N.
XReal w_eval(const XReal& lambda, const BasisScalars& scalars, const IMatrix& I);
/// Same determinant in midpoint arithmetic (root scanning).
Real w_eval_mid(const Real& lambda, const BasisScalars& scalars, const IMatrix& I);

/// The N+1 zeros of w^(N) as certified enclosures, ascending.
std::vector<XReal> w_roots(const BasisScalars& scalars, const IMatrix& I);
/// Eigenvalue route: zeros are 1/nu for the eigenvalues nu of the symmetric
/// matrix diag(mu)^{-1/2} (Id - S^{1/2} E I^{-1} E^T S^{1/2}) diag(mu)^{-1/2}.
std::vector<XReal> w_roots_pencil(const BasisScalars& scalars, const IMatrix& I);
/// Sign-change scan over breakpoints {0, mu_0..mu_N, Lambda_hi}, Illinois
/// refinement, endpoint signs certified in ball arithmetic.
std::vector<XReal> w_roots_scan(const BasisScalars& scalars, const IMatrix& I);

struct LowerBounds {
  ProblemParams params;
  std::vector<XReal> roots;      // N+1 zeros of w^(N) (empty for N = 0)
  std::vector<XReal> values;     // merged nondecreasing sequence (enclosures)
  std::vector<int> from_mu;      // -1 for a root, else the index n of mu_n

  /// Certified lower bound for index n (rounded down).
  Real lower(int n) const;
  int size() const { return static_cast<int>(values.size()); }
};

/// lambda_lower^(N)_{d,n} for n < length.
LowerBounds lower_bounds(const ProblemParams& params, int length);
LowerBounds lower_bounds_serial(const ProblemParams& params, int length);

}  // namespace fraclap
