#include "fraclap/xreal.hpp"

#include "fraclap/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>
#include <vector>

namespace fraclap {

// ---------------------------------------------------------------------------
// Real

Real::Real(Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Real::Real(double v, Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_d(value_, v, MPFR_RNDN);
}

Real::Real(long v, Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_si(value_, v, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(const Real& other, Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  // Steal the limbs; leave `other` as a valid minimal-precision zero.
  value_[0] = other.value_[0];
  mpfr_init2(other.value_, MPFR_PREC_MIN);
  mpfr_set_zero(other.value_, 1);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    if (precision() != other.precision()) mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::parse(std::string_view text, Precision prec, mpfr_rnd_t rnd) {
  Real r(prec);
  const std::string s(text);
  if (mpfr_set_str(r.value_, s.c_str(), 10, rnd) != 0) {
    throw DomainError("not a decimal number: '" + s + "'");
  }
  return r;
}

Real Real::pi(Precision prec, mpfr_rnd_t rnd) {
  Real r(prec);
  mpfr_const_pi(r.value_, rnd);
  return r;
}

Real Real::infinity(Precision prec) {
  Real r(prec);
  mpfr_set_inf(r.value_, 1);
  return r;
}

std::string Real::to_string(int digits, mpfr_rnd_t rnd) const {
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  if (mpfr_nan_p(value_)) return "nan";
  char mode = 'N';
  switch (rnd) {
    case MPFR_RNDU: mode = 'U'; break;
    case MPFR_RNDD: mode = 'D'; break;
    case MPFR_RNDZ: mode = 'Z'; break;
    default: break;
  }
  std::string fmt = "%." + std::to_string(std::max(digits - 1, 0)) + "R" + mode + "e";
  char* buf = nullptr;
  mpfr_asprintf(&buf, fmt.c_str(), value_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string Real::to_fixed(int decimals, mpfr_rnd_t rnd) const {
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  if (mpfr_nan_p(value_)) return "nan";
  char mode = 'N';
  switch (rnd) {
    case MPFR_RNDU: mode = 'U'; break;
    case MPFR_RNDD: mode = 'D'; break;
    case MPFR_RNDZ: mode = 'Z'; break;
    default: break;
  }
  std::string fmt = "%." + std::to_string(decimals) + "R" + mode + "f";
  char* buf = nullptr;
  mpfr_asprintf(&buf, fmt.c_str(), value_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Real& Real::operator+=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(value_, o.precision(), MPFR_RNDN);
  mpfr_add(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(value_, o.precision(), MPFR_RNDN);
  mpfr_sub(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(value_, o.precision(), MPFR_RNDN);
  mpfr_mul(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(value_, o.precision(), MPFR_RNDN);
  mpfr_div(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

namespace {
Precision wider(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

Real operator-(const Real& a) {
  Real r(a.precision());
  mpfr_neg(r.value_, a.value_, MPFR_RNDN);
  return r;
}
Real operator+(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
Real operator+(const Real& a, long b) {
  Real r(a.precision());
  mpfr_add_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, long b) {
  Real r(a.precision());
  mpfr_sub_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, long b) {
  Real r(a.precision());
  mpfr_mul_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, long b) {
  Real r(a.precision());
  mpfr_div_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, double b) {
  Real r(a.precision());
  mpfr_mul_d(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, long b) {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

Real abs(const Real& x) {
  Real r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}
Real sqrt(const Real& x) {
  Real r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}
Real exp(const Real& x) {
  Real r(x.precision());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}
Real log(const Real& x) {
  Real r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}
Real min(const Real& a, const Real& b) { return (b < a) ? b : a; }
Real max(const Real& a, const Real& b) { return (a < b) ? b : a; }

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.to_string(20); }

// ---------------------------------------------------------------------------
// XReal

namespace {

Real zero_radius() { return Real(kRadiusPrecision); }

// rad += |mid| * 2^(1-p): covers one round-to-nearest step at precision p.
void add_rounding(Real& rad, const Real& mid) {
  if (mid.is_zero() || !mid.is_finite()) return;
  Real u(kRadiusPrecision);
  mpfr_abs(u.get(), mid.get(), MPFR_RNDU);
  mpfr_mul_2si(u.get(), u.get(), 1 - static_cast<long>(mid.precision()), MPFR_RNDU);
  mpfr_add(rad.get(), rad.get(), u.get(), MPFR_RNDU);
}

// Upward-rounded |x| at radius precision.
Real abs_up(const Real& x) {
  Real r(kRadiusPrecision);
  mpfr_abs(r.get(), x.get(), MPFR_RNDU);
  return r;
}

Real add_up(const Real& a, const Real& b) {
  Real r(kRadiusPrecision);
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

Real mul_up(const Real& a, const Real& b) {
  Real r(kRadiusPrecision);
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

Precision wider(const XReal& a, const XReal& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

XReal::XReal(Precision prec) : mid_(prec), rad_(zero_radius()) {}
XReal::XReal(Real mid) : mid_(std::move(mid)), rad_(zero_radius()) {}
XReal::XReal(Real mid, Real rad) : mid_(std::move(mid)), rad_(zero_radius()) {
  mpfr_abs(rad_.get(), rad.get(), MPFR_RNDU);
}
XReal::XReal(long v, Precision prec) : mid_(v, prec), rad_(zero_radius()) {
  if (mpfr_set_si(mid_.get(), v, MPFR_RNDN) != 0) add_rounding(rad_, mid_);
}

XReal XReal::from_decimal(std::string_view text, Precision prec) {
  Real lo = Real::parse(text, prec, MPFR_RNDD);
  Real hi = Real::parse(text, prec, MPFR_RNDU);
  if (lo == hi) return XReal(std::move(lo));
  XReal r(Real::parse(text, prec, MPFR_RNDN));
  Real w(kRadiusPrecision);
  mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
  r.rad_ = w;
  return r;
}

XReal XReal::from_double(double v, Precision prec) { return XReal(Real(v, std::max<Precision>(prec, 53))); }

XReal XReal::pi(Precision prec) {
  XReal r(Real::pi(prec));
  add_rounding(r.rad_, r.mid_);
  return r;
}

Real XReal::lower() const {
  Real r(precision());
  mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return r;
}

Real XReal::upper() const {
  Real r(precision());
  mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return r;
}

bool XReal::is_positive() const {
  if (mid_.is_nan() || rad_.is_nan()) return false;
  return lower().sign() > 0;
}
bool XReal::is_negative() const {
  if (mid_.is_nan() || rad_.is_nan()) return false;
  return upper().sign() < 0;
}
bool XReal::contains(const Real& x) const { return lower() <= x && x <= upper(); }
bool XReal::overlaps(const XReal& o) const { return lower() <= o.upper() && o.lower() <= upper(); }

XReal XReal::with_precision(Precision prec) const {
  XReal r(prec);
  const int inexact = mpfr_set(r.mid_.get(), mid_.get(), MPFR_RNDN);
  r.rad_ = rad_;
  if (inexact) add_rounding(r.rad_, r.mid_);
  return r;
}

void XReal::widen(const Real& extra) {
  Real e = abs_up(extra);
  mpfr_add(rad_.get(), rad_.get(), e.get(), MPFR_RNDU);
}

double XReal::relative_error() const {
  if (rad_.is_zero()) return 0.0;
  if (mid_.is_zero()) return std::numeric_limits<double>::infinity();
  Real q(kRadiusPrecision);
  Real m = abs_up(mid_);
  mpfr_div(q.get(), rad_.get(), m.get(), MPFR_RNDU);
  return q.to_double(MPFR_RNDU);
}

XReal& XReal::operator+=(const XReal& o) { return *this = *this + o; }
XReal& XReal::operator-=(const XReal& o) { return *this = *this - o; }
XReal& XReal::operator*=(const XReal& o) { return *this = *this * o; }
XReal& XReal::operator/=(const XReal& o) { return *this = *this / o; }

XReal operator-(const XReal& a) { return XReal(-a.mid_, a.rad_); }

XReal operator+(const XReal& a, const XReal& b) {
  XReal r(wider(a, b));
  const int inexact = mpfr_add(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  r.rad_ = add_up(a.rad_, b.rad_);
  if (inexact) add_rounding(r.rad_, r.mid_);
  return r;
}

XReal operator-(const XReal& a, const XReal& b) {
  XReal r(wider(a, b));
  const int inexact = mpfr_sub(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  r.rad_ = add_up(a.rad_, b.rad_);
  if (inexact) add_rounding(r.rad_, r.mid_);
  return r;
}

XReal operator*(const XReal& a, const XReal& b) {
  XReal r(wider(a, b));
  const int inexact = mpfr_mul(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  // |a|rb + |b|ra + ra rb
  Real rad = add_up(mul_up(abs_up(a.mid_), b.rad_), mul_up(abs_up(b.mid_), a.rad_));
  rad = add_up(rad, mul_up(a.rad_, b.rad_));
  r.rad_ = rad;
  if (inexact) add_rounding(r.rad_, r.mid_);
  return r;
}

XReal operator/(const XReal& a, const XReal& b) {
  if (b.contains_zero()) {
    throw NumericFailure(NumericFailure::Kind::UncertifiedSign, "division by a ball containing zero");
  }
  XReal r(wider(a, b));
  const int inexact = mpfr_div(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  if (!a.rad_.is_zero() || !b.rad_.is_zero()) {
    // |a/b - ma/mb| <= (|ma| rb + |mb| ra) / (|mb| (|mb| - rb))
    Real num = add_up(mul_up(abs_up(a.mid_), b.rad_), mul_up(abs_up(b.mid_), a.rad_));
    Real mb(kRadiusPrecision);
    mpfr_abs(mb.get(), b.mid_.get(), MPFR_RNDD);
    Real gap(kRadiusPrecision);
    mpfr_sub(gap.get(), mb.get(), b.rad_.get(), MPFR_RNDD);
    Real den(kRadiusPrecision);
    mpfr_mul(den.get(), mb.get(), gap.get(), MPFR_RNDD);
    mpfr_div(r.rad_.get(), num.get(), den.get(), MPFR_RNDU);
  }
  if (inexact) add_rounding(r.rad_, r.mid_);
  return r;
}

XReal operator+(const XReal& a, long b) { return a + XReal(b, a.precision()); }
XReal operator-(const XReal& a, long b) { return a - XReal(b, a.precision()); }
XReal operator*(const XReal& a, long b) { return a * XReal(b, a.precision()); }
XReal operator/(const XReal& a, long b) { return a / XReal(b, a.precision()); }

XReal abs(const XReal& x) {
  if (x.mid().sign() >= 0) return x;
  return -x;
}

XReal sqr(const XReal& x) { return x * x; }

XReal sqrt(const XReal& x) {
  if (!x.is_positive() && !(x.is_exact() && x.mid().is_zero())) {
    throw NumericFailure(NumericFailure::Kind::UncertifiedSign, "sqrt of a ball not certainly positive");
  }
  Real m(x.precision());
  const int inexact = mpfr_sqrt(m.get(), x.mid().get(), MPFR_RNDN);
  Real rad(kRadiusPrecision);
  if (!x.rad().is_zero()) {
    // |sqrt(y) - sqrt(m)| <= r / sqrt(m - r)
    Real lo(kRadiusPrecision);
    mpfr_sub(lo.get(), x.mid().get(), x.rad().get(), MPFR_RNDD);
    mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_div(rad.get(), x.rad().get(), lo.get(), MPFR_RNDU);
  }
  if (inexact) add_rounding(rad, m);
  return XReal(std::move(m), std::move(rad));
}

XReal exp(const XReal& x) {
  Real m(x.precision());
  const int inexact = mpfr_exp(m.get(), x.mid().get(), MPFR_RNDN);
  Real rad(kRadiusPrecision);
  if (!x.rad().is_zero()) {
    // |exp(y) - exp(m)| <= exp(m) (exp(r) - 1)
    Real e(kRadiusPrecision);
    mpfr_expm1(e.get(), x.rad().get(), MPFR_RNDU);
    Real em(kRadiusPrecision);
    mpfr_exp(em.get(), x.mid().get(), MPFR_RNDU);
    mpfr_mul(rad.get(), e.get(), em.get(), MPFR_RNDU);
  }
  if (inexact) add_rounding(rad, m);
  return XReal(std::move(m), std::move(rad));
}

XReal log(const XReal& x) {
  if (!x.is_positive()) {
    throw NumericFailure(NumericFailure::Kind::UncertifiedSign, "log of a ball not certainly positive");
  }
  Real m(x.precision());
  const int inexact = mpfr_log(m.get(), x.mid().get(), MPFR_RNDN);
  Real rad(kRadiusPrecision);
  if (!x.rad().is_zero()) {
    // |log(y) - log(m)| <= -log(1 - r/m)
    Real q(kRadiusPrecision);
    Real lo(kRadiusPrecision);
    mpfr_set(lo.get(), x.mid().get(), MPFR_RNDD);
    mpfr_div(q.get(), x.rad().get(), lo.get(), MPFR_RNDU);
    mpfr_neg(q.get(), q.get(), MPFR_RNDD);
    mpfr_log1p(q.get(), q.get(), MPFR_RNDD);
    mpfr_neg(rad.get(), q.get(), MPFR_RNDU);
  }
  if (inexact) add_rounding(rad, m);
  return XReal(std::move(m), std::move(rad));
}

XReal pow(const XReal& base, const XReal& exponent) { return exp(exponent * log(base)); }

XReal pow(const XReal& base, long exponent) {
  if (exponent < 0) return XReal(1, base.precision()) / pow(base, -exponent);
  XReal result(1, base.precision());
  XReal b = base;
  unsigned long e = static_cast<unsigned long>(exponent);
  while (e) {
    if (e & 1UL) result *= b;
    e >>= 1;
    if (e) b = b * b;
  }
  return result;
}

XReal sin_pi(const XReal& x) {
  const Precision p = x.precision();
  // Reduce to r in [-1, 1] exactly (mpfr_remainder is exact), then sin(pi r).
  Real r(p + 8), two(2L, 8);
  mpfr_remainder(r.get(), x.mid().get(), two.get(), MPFR_RNDN);
  Real m(p);
  Real pr(p + 8);
  mpfr_const_pi(pr.get(), MPFR_RNDN);
  mpfr_mul(pr.get(), pr.get(), r.get(), MPFR_RNDN);
  mpfr_sin(m.get(), pr.get(), MPFR_RNDN);
  Real rad(kRadiusPrecision);
  // |d/dx sin(pi x)| <= pi; the extra 2^(3-p) covers the rounded pi r
  Real slack(kRadiusPrecision);
  mpfr_set_ui_2exp(slack.get(), 1, 3 - static_cast<long>(p), MPFR_RNDU);
  mpfr_add(rad.get(), x.rad().get(), slack.get(), MPFR_RNDU);
  mpfr_mul_d(rad.get(), rad.get(), 3.1415926535897936, MPFR_RNDU);
  add_rounding(rad, m);
  return XReal(std::move(m), std::move(rad));
}

XReal hull(const XReal& a, const XReal& b) {
  const Precision p = wider(a, b);
  Real lo(p), hi(p);
  mpfr_min(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  Real m(p);
  mpfr_add(m.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  Real r1(kRadiusPrecision), r2(kRadiusPrecision);
  mpfr_sub(r1.get(), hi.get(), m.get(), MPFR_RNDU);
  mpfr_sub(r2.get(), m.get(), lo.get(), MPFR_RNDU);
  Real rad(kRadiusPrecision);
  mpfr_max(rad.get(), r1.get(), r2.get(), MPFR_RNDU);
  return XReal(std::move(m), std::move(rad));
}

std::ostream& operator<<(std::ostream& os, const XReal& x) {
  return os << x.mid().to_string(20) << " +/- " << x.rad().to_string(3, MPFR_RNDU);
}

const char* to_string(NumericFailure::Kind kind) {
  switch (kind) {
    case NumericFailure::Kind::NotPositiveDefinite: return "NotPositiveDefinite";
    case NumericFailure::Kind::NonConvergence: return "NonConvergence";
    case NumericFailure::Kind::PoleProximity: return "PoleProximity";
    case NumericFailure::Kind::RootCountMismatch: return "RootCountMismatch";
    case NumericFailure::Kind::SeriesCapExceeded: return "SeriesCapExceeded";
    case NumericFailure::Kind::UncertifiedSign: return "UncertifiedSign";
    case NumericFailure::Kind::PrecisionExhausted: return "PrecisionExhausted";
    case NumericFailure::Kind::InvalidCut: return "InvalidCut";
  }
  return "Unknown";
}

}  // namespace fraclap
