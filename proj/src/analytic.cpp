#include "fraclap/analytic.hpp"

#include "fraclap/aronszajn.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/specfun.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace fraclap {

namespace {

XReal gam(const XReal& x) { return exp(log_gamma(x)); }

// ball minimum: [min lower, min upper]
XReal ball_min(const XReal& a, const XReal& b) {
  if ((b - a).is_positive()) return a;
  if ((a - b).is_positive()) return b;
  return hull(XReal(min(a.lower(), b.lower())), XReal(min(a.upper(), b.upper())));
}

XReal pi_pow_half_d(int d, Precision p) { return exp(log(XReal::pi(p)) * XReal(d, p) / 2L); }

}  // namespace

Upper2 upper2_closed(const ProblemParams& params) {
  const XReal m0 = mu(0, params), m1 = mu(1, params);
  const XReal s0 = sigma(0, params), s1 = sigma(1, params);
  const XReal p00 = pi_mn(0, 0, params), p01 = pi_mn(0, 1, params), p11 = pi_mn(1, 1, params);
  Upper2 u;
  u.K = m0 * s0 * p11 + m1 * s1 * p00;
  u.L = p00 * p11 - sqr(p01);
  const XReal c = m0 * m1 * s0 * s1;
  const XReal root = sqrt(sqr(u.K) - c * u.L * 4L);
  // smaller root as 2c / (K + root) avoids the cancellation in K - root
  u.upper0 = c * 2L / (u.K + root);
  u.upper1 = (u.K + root) / (u.L * 2L);
  return u;
}

XReal upper2_gamma_form(const ProblemParams& params) {
  const Precision p = params.precision;
  const XReal a = params.alpha;
  const XReal d(params.d, p);
  const XReal M = (a + 2L) * (sqr(d) + a * d * 2L + d * 4L + sqr(a) * 2L + a * 2L);
  const XReal disc = sqr(M) - d * (d + a) * (a + 1L) * (d + a + 4L) * (d + a * 2L + 4L) * 4L;
  const XReal pref = mu(0, params) * gam(a / 2L + 2L) * gam(d / 2L + a + 2L) /
                     (d * 4L * gam((d + a) / 2L + 3L) * gam(a + 2L));
  return pref * (M - sqrt(disc));
}

Upper2 upper2_alpha1(int d, Precision precision) {
  if (d < 1) throw DomainError("d must be >= 1");
  const XReal x(d, precision);
  const XReal pi = XReal::pi(precision);
  const XReal r = sqrt(sqr(sqr(x) + x * 6L + 16L) - 112L);
  const XReal c = sqr(x) * 3L + x * 18L + 12L;
  const XReal pref = pi * 3L * (x + 2L) * (x + 4L) / ((x + 1L) * (x + 3L) * (x + 5L) * 32L);
  Upper2 u;
  u.upper0 = pref * (c - r);
  u.upper1 = pref * (c + r);
  return u;
}

XReal upper2_relaxed(const ProblemParams& params) {
  const Precision p = params.precision;
  const XReal a = params.alpha;
  const XReal d(params.d, p);
  return mu(0, params) * gam(a / 2L + 2L) * gam(d / 2L + a + 2L) * (sqr(d) * 2L + a * d * 4L + d * 8L - a) /
         (d * 4L * gam((d + a) / 2L + 3L) * gam(a + 2L));
}

Lower1 lower1_closed(const ProblemParams& params, const XReal& I) {
  const XReal m0 = mu(0, params), m1 = mu(1, params), m2 = mu(2, params);
  const XReal s0 = sigma(0, params), s1 = sigma(1, params);
  Lower1 l;
  l.Q = I - s0 - s1;
  if (!l.Q.is_positive()) throw DomainError("lower1_closed: I must exceed sigma_0 + sigma_1");
  l.P = (m0 + m1) * I - m0 * s1 - m1 * s0;
  const XReal c = m0 * m1 * I;
  const XReal root = sqrt(sqr(l.P) - c * l.Q * 4L);
  l.lower0 = c * 2L / (l.P + root);
  l.root1 = (l.P + root) / (l.Q * 2L);
  l.lower1 = ball_min(l.root1, m2);
  return l;
}

XReal lower1_degenerate_root(const ProblemParams& params) {
  const XReal m0 = mu(0, params), m1 = mu(1, params);
  const XReal s0 = sigma(0, params), s1 = sigma(1, params);
  // lambda^2 terms cancel; the linear coefficient is -(mu0 s0 + mu1 s1)
  return m0 * m1 * (s0 + s1) / (m0 * s0 + m1 * s1);
}

XReal i_closed_alpha1(int d, Precision precision) {
  if (d < 1) throw DomainError("d must be >= 1");
  const XReal x(d, precision);
  const XReal pi = XReal::pi(precision);
  const XReal t1 = XReal(4, precision) / ((x + 2L) * (x + 4L) * gam(x / 2L));
  const XReal t2 = sqrt(pi) * x / ((x + 1L) * (x + 3L) * gam((x + 1L) / 2L));
  return sqr(x + 3L) * pi_pow_half_d(d, precision) / sqr(x) * (t1 + t2);
}

XReal sigma01_closed(const ProblemParams& params) {
  const Precision p = params.precision;
  const XReal a = params.alpha;
  const XReal d(params.d, p);
  return (d + 2L) * sqr(d + a + 2L) * pi_pow_half_d(params.d, p) * gam(a / 2L + 1L) /
         (d * 4L * gam((d + a) / 2L + 3L));
}

namespace {

XReal series_prefactor(const ProblemParams& params) {
  const XReal d(params.d, params.precision);
  return (d + 2L) * sqr(d + params.alpha + 2L) * pi_pow_half_d(params.d, params.precision) / (d * 4L);
}

XReal partial_sum(const ProblemParams& params, long J) {
  const XReal d(params.d, params.precision);
  XReal s(params.precision);
  for (long j = 1; j <= J; ++j) {
    const XReal x = params.alpha * j / 2L;
    s += exp(log_gamma(x + 1L) - log_gamma(x + d / 2L + 3L));
  }
  return s;
}

}  // namespace

XReal i_upper_zeta(const ProblemParams& params, long J) {
  if (J < 1) throw DomainError("i_upper_zeta: J must be >= 1");
  const XReal d(params.d, params.precision);
  const XReal a = params.alpha;
  const XReal tail = XReal(4, params.precision) / ((d + 2L) * a * pow(a * J / 2L + 1L, d / 2L + 1L));
  return series_prefactor(params) * (partial_sum(params, J) + tail);
}

XReal i_lower_partial(const ProblemParams& params, long J) {
  if (J < 1) throw DomainError("i_lower_partial: J must be >= 1");
  return series_prefactor(params) * partial_sum(params, J);
}

XReal i_upper_concavity(const ProblemParams& params) {
  const XReal d(params.d, params.precision);
  return (d + params.alpha + 2L) * sigma(0, params) * 2L / (params.alpha * d);
}

Margin theorem2_margin(int d, const std::string& alpha, Precision precision) {
  const ProblemParams here = ProblemParams::make(d, alpha, 1, precision);
  const ProblemParams next = ProblemParams::make(d + 2, alpha, 2, precision);
  Margin m;
  m.lower1 = lower1_closed(here, i_mn(0, 0, here)).lower1;
  m.upper0_next = upper2_closed(next).upper0;
  const XReal e = XReal(1, precision) / here.alpha;
  m.value = pow(m.lower1, e) - pow(m.upper0_next, e);
  return m;
}

Alpha1Checks alpha1_threshold_checks(int d, Precision precision) {
  const ProblemParams params = ProblemParams::make(d, "1", 1, precision);
  const XReal x(d, precision);
  const XReal pi = XReal::pi(precision);
  Alpha1Checks c;
  c.d = d;

  const XReal up_thr = pi * 3L * (x + 3L) / 16L;
  const XReal lo_thr = pi * 3L * (x + 5L) / 16L;
  const XReal m2 = mu(2, params);
  const XReal upper0 = upper2_alpha1(d, precision).upper0;
  const XReal lower1 = lower1_closed(params, i_closed_alpha1(d, precision)).lower1;

  c.upper_ok = (up_thr - upper0).is_positive();
  c.upper_margin = (up_thr - upper0).to_double();
  const XReal floor = ball_min(lo_thr, m2);
  c.lower_ok = (lower1 - floor).is_positive();
  c.lower_margin = (lower1 - floor).to_double();
  c.mu2_ok = (m2 - lo_thr).is_positive();
  c.mu2_margin = (m2 - lo_thr).to_double();

  // upper quadratic (scaled) at 3 pi (d+3)/16
  {
    const XReal l = up_thr;
    c.upper_quadratic_at_threshold =
        (pi / (x + 1L) - l * 4L / (x * (x + 2L))) * (pi / (x + 5L) - l * 4L / ((x + 4L) * (x + 6L))) -
        sqr(l) * 16L / (sqr((x + 2L) * (x + 4L)) * 9L);
    const XReal x2 = sqr(x), x3 = x2 * x, x4 = x3 * x;
    c.upper_quadratic_closed = -(sqr(pi) * (x4 * 8L + x3 * 96L + x2 * 409L + x * 726L + 459L)) /
                               (x * 2L * (x + 1L) * sqr((x + 2L) * (x + 4L)) * (x + 5L) * (x + 6L));
  }
  // lower quadratic (scaled) at 3 pi (d+5)/16, B = B(d/2, 1/2)
  {
    const XReal B = sqrt(pi) * gam(x / 2L) / gam((x + 1L) / 2L);
    const XReal l = lo_thr;
    const XReal u = pi / B;
    const XReal v = pi * 3L * (x + 1L) / (x * 2L * B);
    c.lower_quadratic_at_threshold =
        (x + 3L) / x * (XReal(1, precision) + (x + 1L) * (x + 3L) * 4L / (x * (x + 2L) * (x + 4L) * B)) * (u - l) *
            (v - l) +
        l * (v - l) + l * 6L / (x * (x + 5L)) * (u - l);
    const XReal B2 = sqr(B), B3 = B2 * B;
    const XReal x2 = sqr(x), x3 = x2 * x, x4 = x3 * x, x5 = x4 * x;
    const XReal poly = x5 * B2 * 12L + x4 * B * 96L - x5 * B3 * 27L - x3 * 1536L + x4 * B2 * 240L + x3 * B * 1920L -
                       x4 * B3 * 297L - x2 * 7680L + x3 * B2 * 1032L + x2 * B * 8256L - x3 * B3 * 1026L -
                       x * 10752L + x2 * B2 * 1128L + x * B * 10752L - x2 * B3 * 1080L - XReal(4608, precision) +
                       x * B2 * 180L + B * 4320L;
    c.lower_quadratic_closed = -(sqr(pi) * (x + 3L)) / (x3 * 256L * (x + 2L) * (x + 4L) * B3) * poly;
  }
  return c;
}

XReal lemma_h(Lemma which, const XReal& alpha) {
  const XReal& a = alpha;
  if (which == Lemma::Five) {
    return exp(log_gamma(a + 3L) + log_gamma(a / 2L + XReal(9, a.precision()) / 2L) - log_gamma(a / 2L + 2L) -
               log_gamma(a + XReal(9, a.precision()) / 2L));
  }
  return exp(log_gamma(a / 2L + 2L) + log_gamma(a + XReal(7, a.precision()) / 2L) -
             log_gamma(a / 2L + XReal(9, a.precision()) / 2L) - log_gamma(a + 1L));
}

MonotonicityScan lemma_monotonicity_scan(Lemma which, int grid_size, Precision precision) {
  if (grid_size < 2) throw DomainError("grid_size must be >= 2");
  MonotonicityScan s;
  s.values.resize(grid_size, XReal(precision));
  s.alphas.resize(grid_size);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < grid_size; ++k) {
    const XReal a = XReal(2L * k, precision) / static_cast<long>(grid_size - 1);
    s.alphas[k] = a.to_double();
    s.values[k] = lemma_h(which, a);
  }
  s.monotone = true;
  s.min_step = std::numeric_limits<double>::infinity();
  for (int k = 1; k < grid_size; ++k) {
    const XReal step = s.values[k] - s.values[k - 1];
    if (!step.is_positive()) s.monotone = false;
    s.min_step = std::min(s.min_step, step.to_double());
  }
  return s;
}

SmallDimQuantities small_dim_quantities(int d, const std::string& alpha, Precision precision) {
  const ProblemParams params = ProblemParams::make(d, alpha, 1, precision);
  const ProblemParams next = ProblemParams::make(d + 2, alpha, 2, precision);
  const XReal a = params.alpha;
  const XReal x(d, precision);
  SmallDimQuantities q;
  q.a = (XReal(8, precision) + x * 2L - a * x) * (x + a) / (x * 16L * sqr(x + 2L) * (x + a + 4L));
  q.b = -(a * 16L + sqr(a) * 12L + sqr(a) * a * 2L + x * 32L + a * x * 16L - sqr(a) * a * x + sqr(x) * 8L -
          sqr(a) * sqr(x)) /
        (x * 8L * (x + 2L) * (x + a + 4L));
  q.T = (sqr(x + 2L) * 2L + (a * 4L + 8L) * (x + 2L) - a) * gam(a / 2L + 2L) * gam(x / 2L + a + 3L) /
        (gam((x + a) / 2L + 4L) * gam(a + 2L));
  q.gT = q.a * sqr(q.T) + q.b * q.T + a + 2L;
  q.Lambda_next = upper2_relaxed(next);
  q.mu2 = mu(2, params);

  const XReal m0 = mu(0, params), m1 = mu(1, params);
  const XReal s0 = sigma(0, params), s1 = sigma(1, params);
  const XReal J = i_upper_concavity(params);
  const XReal& l = q.Lambda_next;
  q.F_direct = (m0 - l) * (m1 - l) * J + l * s0 * (m1 - l) + l * s1 * (m0 - l);
  q.F_factored = (x + a) * (x + a + 2L) * sqr(m0) * s0 / (sqr(x) * a) * q.gT;
  return q;
}

std::vector<std::string> alpha_grid(int steps) {
  if (steps < 1) throw DomainError("alpha grid needs at least one step");
  std::vector<std::string> out;
  char buf[64];
  for (int k = 1; k <= steps; ++k) {
    const double v = 2.0 * k / steps;
    // shortest decimal that round-trips
    for (int digits = 1; digits <= 17; ++digits) {
      std::snprintf(buf, sizeof buf, "%.*g", digits, v);
      if (std::strtod(buf, nullptr) == v) break;
    }
    out.emplace_back(buf);
  }
  return out;
}

}  // namespace fraclap
