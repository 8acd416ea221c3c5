// Extended-precision reals on top of GNU MPFR.
//
// Real   - RAII value wrapper around mpfr_t, round-to-nearest arithmetic.
// XReal  - midpoint-radius ball: the exact quantity lies in [mid - rad, mid + rad].
//          Every operation widens the radius by the propagated input radii plus
//          one ulp of the rounded midpoint, so error tracking is never dropped.
#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace fraclap {

using Precision = mpfr_prec_t;

/// Smallest working precision accepted anywhere in the library.
inline constexpr Precision kMinPrecision = 64;
/// Precision used for error radii (they only need a few correct bits).
inline constexpr Precision kRadiusPrecision = 32;

class Real {
public:
  explicit Real(Precision prec);
  Real(double v, Precision prec);
  Real(long v, Precision prec);
  Real(const Real& other);
  Real(const Real& other, Precision prec);  // rounds to nearest at prec
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Parses a decimal string, rounding with `rnd`.
  static Real parse(std::string_view text, Precision prec, mpfr_rnd_t rnd = MPFR_RNDN);
  static Real pi(Precision prec, mpfr_rnd_t rnd = MPFR_RNDN);
  static Real infinity(Precision prec);

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  Precision precision() const { return mpfr_get_prec(value_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_nan() const { return mpfr_nan_p(value_) != 0; }
  bool is_integer() const { return mpfr_integer_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  /// Binary exponent e with 2^(e-1) <= |x| < 2^e; meaningless for zero.
  long exponent() const { return mpfr_get_exp(value_); }

  /// Decimal rendering with `digits` significant digits in the given rounding mode.
  std::string to_string(int digits = 20, mpfr_rnd_t rnd = MPFR_RNDN) const;
  /// Fixed-point rendering with `decimals` digits after the point.
  std::string to_fixed(int decimals, mpfr_rnd_t rnd = MPFR_RNDN) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator-(const Real& a);
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator+(const Real& a, long b);
  friend Real operator-(const Real& a, long b);
  friend Real operator*(const Real& a, long b);
  friend Real operator/(const Real& a, long b);
  friend Real operator*(const Real& a, double b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b);

private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
std::ostream& operator<<(std::ostream& os, const Real& x);

class XReal {
public:
  /// Zero ball at the given precision.
  explicit XReal(Precision prec);
  /// Exact ball (radius zero).
  explicit XReal(Real mid);
  XReal(Real mid, Real rad);
  XReal(long v, Precision prec);

  /// Ball containing the decimal number `text` exactly.
  static XReal from_decimal(std::string_view text, Precision prec);
  /// Ball containing the real number v exactly (doubles are exact in MPFR).
  static XReal from_double(double v, Precision prec);
  static XReal pi(Precision prec);

  const Real& mid() const { return mid_; }
  const Real& rad() const { return rad_; }
  Precision precision() const { return mid_.precision(); }

  /// Certified endpoints, rounded outward.
  Real lower() const;
  Real upper() const;
  double to_double() const { return mid_.to_double(); }

  bool is_exact() const { return rad_.is_zero(); }
  bool is_positive() const;   // whole ball > 0
  bool is_negative() const;   // whole ball < 0
  bool contains_zero() const { return !is_positive() && !is_negative(); }
  bool contains(const Real& x) const;
  bool overlaps(const XReal& o) const;
  /// Sign of every point in the ball, 0 when undetermined.
  int certified_sign() const { return is_positive() ? 1 : (is_negative() ? -1 : 0); }

  /// Same ball rounded to another working precision (radius grows by the rounding).
  XReal with_precision(Precision prec) const;

  /// Adds `extra` (>= 0) to the radius.
  void widen(const Real& extra);
  /// Relative radius rad/|mid| as a double (inf when mid is zero and rad > 0).
  double relative_error() const;

  XReal& operator+=(const XReal& o);
  XReal& operator-=(const XReal& o);
  XReal& operator*=(const XReal& o);
  XReal& operator/=(const XReal& o);

  friend XReal operator-(const XReal& a);
  friend XReal operator+(const XReal& a, const XReal& b);
  friend XReal operator-(const XReal& a, const XReal& b);
  friend XReal operator*(const XReal& a, const XReal& b);
  friend XReal operator/(const XReal& a, const XReal& b);
  friend XReal operator+(const XReal& a, long b);
  friend XReal operator-(const XReal& a, long b);
  friend XReal operator*(const XReal& a, long b);
  friend XReal operator/(const XReal& a, long b);

private:
  Real mid_;
  Real rad_;
};

XReal abs(const XReal& x);
XReal sqr(const XReal& x);
XReal sqrt(const XReal& x);
XReal exp(const XReal& x);
XReal log(const XReal& x);
XReal pow(const XReal& base, const XReal& exponent);  // base > 0
XReal pow(const XReal& base, long exponent);
XReal sin_pi(const XReal& x);  // sin(pi x)
/// Smallest ball containing both a and b.
XReal hull(const XReal& a, const XReal& b);
std::ostream& operator<<(std::ostream& os, const XReal& x);

}  // namespace fraclap
