#include "fraclap/specfun.hpp"

#include "fraclap/errors.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace fraclap {

namespace {

// Stirling series coefficients B_2k / (2k (2k-1)), k = 1, 2, ...
// via B_2k = (-1)^(k+1) 2 (2k)! zeta(2k) / (2 pi)^2k.
using CoeffTable = std::vector<XReal>;

double shift_threshold(Precision p) {
  // Past this point the smallest Stirling term is far below 2^-p.
  return p <= 1024 ? 0.2 * static_cast<double>(p) + 10.0 : 0.5 * static_cast<double>(p);
}

int terms_needed(Precision p, double z) {
  // log|c_k z^(1-2k)| ~ lgamma(2k-1) + log 2 - 2k log(2 pi) - (2k-1) log z
  const double target = -static_cast<double>(p) * std::log(2.0) - 10.0;
  for (int k = 1; k < 100000; ++k) {
    const double t = std::lgamma(2.0 * k - 1.0) + std::log(2.0) - 2.0 * k * std::log(2.0 * M_PI) -
                     (2.0 * k - 1.0) * std::log(z);
    if (t < target) return k + 2;
  }
  throw NumericFailure(NumericFailure::Kind::NonConvergence, "Stirling series: no usable truncation");
}

std::shared_ptr<const CoeffTable> stirling_table(Precision p) {
  static std::mutex mutex;
  static std::map<Precision, std::shared_ptr<const CoeffTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;

  const int count = terms_needed(p, shift_threshold(p));
  const Precision q = p + 32;
  auto table = std::make_shared<CoeffTable>();
  table->reserve(count);
  Real two_pi_sq(q);
  mpfr_const_pi(two_pi_sq.get(), MPFR_RNDN);
  mpfr_mul_2ui(two_pi_sq.get(), two_pi_sq.get(), 1, MPFR_RNDN);
  mpfr_sqr(two_pi_sq.get(), two_pi_sq.get(), MPFR_RNDN);
  Real c(q), z(q), denom(q);
  for (int k = 1; k <= count; ++k) {
    mpfr_fac_ui(c.get(), static_cast<unsigned long>(2 * k - 2), MPFR_RNDN);
    mpfr_zeta_ui(z.get(), static_cast<unsigned long>(2 * k), MPFR_RNDN);
    mpfr_mul(c.get(), c.get(), z.get(), MPFR_RNDN);
    mpfr_mul_2ui(c.get(), c.get(), 1, MPFR_RNDN);
    mpfr_pow_ui(denom.get(), two_pi_sq.get(), static_cast<unsigned long>(k), MPFR_RNDN);
    mpfr_div(c.get(), c.get(), denom.get(), MPFR_RNDN);
    if (k % 2 == 0) mpfr_neg(c.get(), c.get(), MPFR_RNDN);
    // at most ~2k+6 correctly rounded steps at q bits
    Real rad(kRadiusPrecision);
    mpfr_abs(rad.get(), c.get(), MPFR_RNDU);
    mpfr_mul_ui(rad.get(), rad.get(), static_cast<unsigned long>(2 * k + 8), MPFR_RNDU);
    mpfr_mul_2si(rad.get(), rad.get(), -static_cast<long>(q), MPFR_RNDU);
    table->push_back(XReal(Real(c, p), std::move(rad)).with_precision(p));
  }
  cache.emplace(p, table);
  return table;
}

XReal log_gamma_point(const Real& x) {
  const Precision p = x.precision();
  const Precision q = p + 32;
  const XReal xq(Real(x, q));
  const double x0 = shift_threshold(q);
  const double xd = x.to_double();
  long shift = 0;
  if (xd < x0) shift = static_cast<long>(std::ceil(x0 - xd));

  XReal z = xq;
  XReal prod(1, q);
  for (long j = 0; j < shift; ++j) {
    prod *= z;
    z = z + 1L;
  }

  // (z - 1/2) log z - z + log(2 pi)/2 + sum c_k z^(1-2k)
  XReal logz = log(z);
  XReal two_pi = XReal::pi(q) * 2L;
  XReal sum = (z - XReal::from_double(0.5, q)) * logz - z + log(two_pi) / 2L;
  const auto table = stirling_table(q);
  XReal inv = XReal(1, q) / z;
  XReal inv2 = inv * inv;
  XReal zp = inv;
  Real cutoff(q);
  mpfr_set_ui_2exp(cutoff.get(), 1, -static_cast<long>(q) - 4, MPFR_RNDN);
  bool converged = false;
  for (std::size_t k = 0; k + 1 < table->size(); ++k) {
    XReal term = (*table)[k] * zp;
    sum += term;
    zp *= inv2;
    Real scale = max(abs(sum.mid()), Real(1L, q));
    if (abs(term.mid()) < cutoff * scale) {
      // remainder bounded by the first omitted term
      XReal next = (*table)[k + 1] * zp;
      sum.widen(abs(next.mid()));
      sum.widen(next.rad());
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NumericFailure(NumericFailure::Kind::NonConvergence, "Stirling series did not converge");
  }
  if (shift > 0) sum -= log(prod);
  return sum.with_precision(p);
}

// |psi(y)| <= 1/y + max(gamma, log(y + 1)) for y > 0.
Real digamma_bound(const XReal& x) {
  Real lo = x.lower();
  Real hi = x.upper();
  Real r(kRadiusPrecision);
  mpfr_ui_div(r.get(), 1, lo.get(), MPFR_RNDU);
  Real l(kRadiusPrecision);
  mpfr_add_ui(l.get(), hi.get(), 1, MPFR_RNDU);
  mpfr_log(l.get(), l.get(), MPFR_RNDU);
  Real g(0.5773, kRadiusPrecision);
  mpfr_max(l.get(), l.get(), g.get(), MPFR_RNDU);
  mpfr_add(r.get(), r.get(), l.get(), MPFR_RNDU);
  return r;
}

}  // namespace

XReal log_gamma(const XReal& x) {
  if (x.mid().is_nan() || !x.mid().is_finite()) throw DomainError("log_gamma: argument is not finite");
  if (!x.is_positive()) throw DomainError("log_gamma: argument must be positive");
  XReal r = log_gamma_point(x.mid());
  if (!x.is_exact()) {
    Real w(kRadiusPrecision);
    mpfr_mul(w.get(), x.rad().get(), digamma_bound(x).get(), MPFR_RNDU);
    r.widen(w);
  }
  return r;
}

XReal log_gamma(long x, Precision prec) { return log_gamma(XReal(x, prec)); }

XReal gamma_ratio(const XReal& a, const XReal& b) {
  if (!a.is_positive() || !b.is_positive()) throw DomainError("gamma_ratio: arguments must be positive");
  return exp(log_gamma(a) - log_gamma(b));
}

XReal recip_gamma(const XReal& x) {
  const Precision p = x.precision();
  if (x.mid().sign() <= 0 || !x.is_positive()) {
    // distance of the midpoint to the nearest integer
    Real n(p);
    mpfr_round(n.get(), x.mid().get());
    Real dist = abs(x.mid() - n);
    Real tol(p);
    mpfr_set_ui_2exp(tol.get(), 1, -static_cast<long>(p / 2), MPFR_RNDN);
    if (n.sign() <= 0 && dist <= tol) {
      if (x.rad() > tol) {
        throw NumericFailure(NumericFailure::Kind::PoleProximity, "recip_gamma: ball too wide to resolve a pole");
      }
      return XReal(p);
    }
    if (n.sign() <= 0 && x.contains(n)) {
      throw NumericFailure(NumericFailure::Kind::PoleProximity, "recip_gamma: argument straddles a pole");
    }
  }
  if (x.is_positive()) return exp(-log_gamma(x));
  // reflection: 1/Gamma(x) = Gamma(1 - x) sin(pi x) / pi
  XReal one_minus = XReal(1, p) - x;
  return exp(log_gamma(one_minus)) * sin_pi(x) / XReal::pi(p);
}

XReal pochhammer(const XReal& a, long k) {
  XReal r(1, a.precision());
  for (long j = 0; j < k; ++j) r *= a + j;
  return r;
}

RadialPolynomial radial_poly(int n, int d, const XReal& alpha) {
  if (n < 0 || d < 1) throw DomainError("radial_poly: need n >= 0 and d >= 1");
  const Precision p = alpha.precision();
  const XReal h = XReal(d, p) / 2L;
  const XReal a = (XReal(d, p) + alpha) / 2L + static_cast<long>(n);
  RadialPolynomial out;
  out.coeffs.reserve(static_cast<std::size_t>(n) + 1);
  out.coeffs.emplace_back(1, p);
  for (int k = 0; k < n; ++k) {
    // c_{k+1} = c_k (k - n)(a + k) / ((h + k)(k + 1))
    XReal c = out.coeffs.back() * static_cast<long>(k - n) * (a + k) / ((h + k) * static_cast<long>(k + 1));
    out.coeffs.push_back(std::move(c));
  }
  return out;
}

XReal poly_eval(const RadialPolynomial& p, const XReal& s) {
  XReal acc = p.coeffs.back();
  for (int k = p.degree() - 1; k >= 0; --k) acc = acc * s + p.coeffs[static_cast<std::size_t>(k)];
  return acc;
}

RadialPolynomial operator-(const RadialPolynomial& a, const RadialPolynomial& b) {
  const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
  const Precision p = std::max(a.precision(), b.precision());
  RadialPolynomial r;
  r.coeffs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    XReal x = k < a.coeffs.size() ? a.coeffs[k] : XReal(p);
    if (k < b.coeffs.size()) x -= b.coeffs[k];
    r.coeffs.push_back(std::move(x));
  }
  return r;
}

RadialPolynomial operator*(const RadialPolynomial& a, const RadialPolynomial& b) {
  const Precision p = std::max(a.precision(), b.precision());
  RadialPolynomial r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, XReal(p));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return r;
}

void radial_values(int count, int d, const Real& alpha, const Real& s, std::vector<Real>& out) {
  const Precision p = s.precision();
  out.resize(static_cast<std::size_t>(count), Real(p));
  if (count <= 0) return;
  // Jacobi parameters a = d/2 - 1, b = alpha/2, argument x = 1 - 2s
  const Real a = Real(static_cast<long>(d), p) / 2L - 1L;
  const Real b = Real(alpha, p) / 2L;
  const Real ab = a + b;
  const Real x = Real(1L, p) - s * 2L;
  const Real a2b2 = a * a - b * b;
  mpfr_set_ui(out[0].get(), 1, MPFR_RNDN);
  if (count == 1) return;
  // P_1 = 1 - (d + alpha + 2) s / d
  out[1] = Real(1L, p) - (ab + 2L) * s / (a + 1L);
  Real t(p), num(p), den(p), c(p);
  for (int n = 2; n < count; ++n) {
    const long nn = n;
    c = ab + 2 * nn;  // 2n + a + b
    // (2n+a+b-1) [ (2n+a+b)(2n+a+b-2) x + a^2 - b^2 ] R_{n-1}
    t = c * (c - 2L) * x + a2b2;
    num = (c - 1L) * t * out[static_cast<std::size_t>(n - 1)];
    // - 2 (n-1)(n+b-1)(2n+a+b) R_{n-2}
    num -= (b + (nn - 1)) * c * out[static_cast<std::size_t>(n - 2)] * (2 * (nn - 1));
    den = (a + nn) * (ab + nn) * (c - 2L) * 2L;
    out[static_cast<std::size_t>(n)] = num / den;
  }
}

}  // namespace fraclap
