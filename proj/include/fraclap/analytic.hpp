// Closed-form N = 1, 2 bounds, elementary estimates of I, and the numeric
// checks behind the antisymmetric-second-eigenfunction result.
#pragma once

#include "fraclap/basis.hpp"
#include "fraclap/xreal.hpp"

#include <string>
#include <vector>

namespace fraclap {

/// Roots of (mu0 s0 - pi00 l)(mu1 s1 - pi11 l) - pi01^2 l^2 = 0.
struct Upper2 {
  XReal upper0{kMinPrecision}, upper1{kMinPrecision};
  XReal K{kMinPrecision};  // mu0 s0 pi11 + mu1 s1 pi00
  XReal L{kMinPrecision};  // pi00 pi11 - pi01^2
};
Upper2 upper2_closed(const ProblemParams& params);
/// Same bound through the simplified Gamma form with M = (a+2)(d^2 + 2ad + 4d + 2a^2 + 2a).
XReal upper2_gamma_form(const ProblemParams& params);
/// alpha = 1: 3 pi (d+2)(d+4)(3(d^2+6d+4) -/+ sqrt((d^2+6d+16)^2 - 112)) / (32 (d+1)(d+3)(d+5)).
Upper2 upper2_alpha1(int d, Precision precision = kDefaultPrecision);

/// Lambda(d): relaxed upper bound for upper0.
XReal upper2_relaxed(const ProblemParams& params);

/// Roots of (mu0 - l)(mu1 - l) I + l s0 (mu1 - l) + l s1 (mu0 - l) = 0.
struct Lower1 {
  XReal lower0{kMinPrecision};
  XReal lower1{kMinPrecision};  // min(larger root, mu_2)
  XReal root1{kMinPrecision};   // larger root
  XReal P{kMinPrecision}, Q{kMinPrecision};
};
/// Throws DomainError unless I > sigma_0 + sigma_1 with certainty.
Lower1 lower1_closed(const ProblemParams& params, const XReal& I);
/// The root of the linear equation obtained at I = sigma_0 + sigma_1:
/// mu0 mu1 (s0 + s1) / (mu0 s0 + mu1 s1).
XReal lower1_degenerate_root(const ProblemParams& params);

/// I_{0,0} at alpha = 1.
XReal i_closed_alpha1(int d, Precision precision = kDefaultPrecision);
/// sigma_0 + sigma_1 via (d+2)(d+a+2)^2 pi^{d/2} G(a/2+1) / (4 d G((d+a)/2+3)).
XReal sigma01_closed(const ProblemParams& params);
/// Upper bound for I_{0,0}: J exact terms plus the log-convexity tail.
XReal i_upper_zeta(const ProblemParams& params, long J);
/// Partial sum of the same series (a lower bound for I_{0,0}).
XReal i_lower_partial(const ProblemParams& params, long J);
/// 2 (d + a + 2) sigma_0 / (a d).
XReal i_upper_concavity(const ProblemParams& params);

/// (lower1(d))^{1/a} - (upper0(d+2))^{1/a}; positive means lambda_{d+2,0} < lambda_{d,1}.
struct Margin {
  XReal value{kMinPrecision};
  XReal lower1{kMinPrecision};       // lambda_lower^(1)_{d,1}
  XReal upper0_next{kMinPrecision};  // lambda_upper^(2)_{d+2,0}
  bool certified() const { return value.is_positive(); }
};
Margin theorem2_margin(int d, const std::string& alpha, Precision precision = kDefaultPrecision);

struct Alpha1Checks {
  int d = 0;
  bool upper_ok = false;  // upper0(d) < 3 pi (d+3) / 16
  bool lower_ok = false;  // lower1(d) > min(3 pi (d+5) / 16, mu_2)
  bool mu2_ok = false;    // mu_2 > 3 pi (d+5) / 16
  double upper_margin = 0, lower_margin = 0, mu2_margin = 0;
  XReal upper_quadratic_at_threshold{kMinPrecision};  // left side of the alpha = 1 upper quadratic at 3 pi (d+3)/16
  XReal upper_quadratic_closed{kMinPrecision};        // its stated closed form
  XReal lower_quadratic_at_threshold{kMinPrecision};  // left side of the alpha = 1 lower quadratic at 3 pi (d+5)/16
  XReal lower_quadratic_closed{kMinPrecision};        // -pi^2 (d+3) poly(d, B) / (256 d^3 (d+2)(d+4) B^3)
};
Alpha1Checks alpha1_threshold_checks(int d, Precision precision = kDefaultPrecision);

enum class Lemma { Five, Six };
/// Lemma 5: G(a+3) G(a/2+9/2) / (G(a/2+2) G(a+9/2)); Lemma 6: G(a/2+2) G(a+7/2) / (G(a/2+9/2) G(a+1)).
XReal lemma_h(Lemma which, const XReal& alpha);
struct MonotonicityScan {
  std::vector<double> alphas;
  std::vector<XReal> values;
  bool monotone = false;  // every consecutive difference certified positive
  double min_step = 0;
};
MonotonicityScan lemma_monotonicity_scan(Lemma which, int grid_size, Precision precision = 128);

/// The d <= 2 argument: g(t) = a t^2 + b t + alpha + 2 and T, with F(Lambda(d+2)).
struct SmallDimQuantities {
  XReal a{kMinPrecision}, b{kMinPrecision}, T{kMinPrecision}, gT{kMinPrecision};
  XReal Lambda_next{kMinPrecision};  // Lambda(d+2)
  XReal F_direct{kMinPrecision};     // F(Lambda(d+2)) from mu, sigma and the concavity bound J
  XReal F_factored{kMinPrecision};   // (d+a)(d+a+2) mu0^2 sigma0 / (d^2 a) g(T)
  XReal mu2{kMinPrecision};
};
SmallDimQuantities small_dim_quantities(int d, const std::string& alpha, Precision precision = kDefaultPrecision);

/// Uniform grid 2k/steps, k = 1..steps, as decimal strings.
std::vector<std::string> alpha_grid(int steps);

}  // namespace fraclap
