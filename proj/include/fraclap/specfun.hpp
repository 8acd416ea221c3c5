// Special functions on XReal balls: log-gamma, gamma ratios, reciprocal gamma,
// and the radial polynomials P_n(s) = 2F1(-n, (d+a)/2 + n; d/2; s), s = |x|^2.
#pragma once

#include "fraclap/xreal.hpp"

#include <vector>

namespace fraclap {

/// Guard bits g in the log-gamma contract |err| <= 2^(-p+g) * max(1, |ln Gamma(x)|).
inline constexpr int kLogGammaGuardBits = 8;

/// ln Gamma(x) for a ball x > 0.  The input radius is propagated through a
/// bound on the digamma function over the ball.
XReal log_gamma(const XReal& x);
XReal log_gamma(long x, Precision prec);

/// Gamma(a) / Gamma(b) for a, b > 0.
XReal gamma_ratio(const XReal& a, const XReal& b);

/// 1 / Gamma(x) for any real x.  Exactly zero when x is within 2^(-p/2) of a
/// nonpositive integer; throws PoleProximity when the ball straddles such a
/// point without its midpoint being that close.
XReal recip_gamma(const XReal& x);

/// Pochhammer symbol (a)_k.
XReal pochhammer(const XReal& a, long k);

struct RadialPolynomial {
  std::vector<XReal> coeffs;  // coefficient of s^k at index k

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Precision precision() const { return coeffs.front().precision(); }
};

/// P_n for dimension d and order alpha.
RadialPolynomial radial_poly(int n, int d, const XReal& alpha);
XReal poly_eval(const RadialPolynomial& p, const XReal& s);

RadialPolynomial operator-(const RadialPolynomial& a, const RadialPolynomial& b);
RadialPolynomial operator*(const RadialPolynomial& a, const RadialPolynomial& b);

/// Values P_0(s), ..., P_count-1(s) by the three-term Jacobi recurrence
/// (P_n = n!/(d/2)_n * P_n^{(d/2-1, alpha/2)}(1 - 2s)).  Plain midpoint
/// arithmetic; used inside quadrature where the rule error dominates.
void radial_values(int count, int d, const Real& alpha, const Real& s, std::vector<Real>& out);

}  // namespace fraclap
