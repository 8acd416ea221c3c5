#include "fraclap/errors.hpp"
#include "fraclap/specfun.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fraclap;

namespace {

constexpr Precision kP = 256;

// Independent oracle: MPFR's own log-gamma at a much higher precision.
Real lngamma_oracle(const Real& x) {
  Real r(kP + 128);
  Real xx(x, kP + 128);
  mpfr_lngamma(r.get(), xx.get(), MPFR_RNDN);
  return r;
}

bool near(const XReal& a, const Real& b, double tol) {
  return abs(a.mid() - b).to_double() <= tol;
}

bool encloses(const XReal& a, const Real& b) {
  return a.contains(Real(b, a.precision() + 64)) || abs(a.mid() - b) <= a.rad();
}

}  // namespace

TEST(XReal, ArithmeticKeepsRadius) {
  XReal a = XReal::from_decimal("0.1", kP);
  EXPECT_FALSE(a.is_exact());
  XReal b = a * a - a / 3L;
  EXPECT_GE(b.rad(), a.rad());
  EXPECT_TRUE(XReal::from_decimal("0.5", kP).is_exact());
}

TEST(XReal, ContainsExactValue) {
  XReal third = XReal(1, kP) / 3L;
  Real hi(1L, 512);
  hi /= Real(3L, 512);
  EXPECT_TRUE(third.contains(hi));
  XReal s = sqrt(XReal(2, kP));
  EXPECT_NEAR(s.to_double(), std::sqrt(2.0), 1e-15);
  XReal e = exp(log(XReal(7, kP)));
  EXPECT_TRUE(e.contains(Real(7L, kP)));
}

TEST(XReal, SinPiReduces) {
  EXPECT_NEAR(sin_pi(XReal::from_double(0.5, kP)).to_double(), 1.0, 1e-30);
  EXPECT_NEAR(sin_pi(XReal::from_double(-2.5, kP)).to_double(), -1.0, 1e-30);
  EXPECT_TRUE(sin_pi(XReal(7, kP)).contains(Real(kP)));
}

TEST(LogGamma, ExactPoints) {
  XReal one = log_gamma(XReal(1, kP));
  EXPECT_TRUE(one.contains(Real(kP)));
  EXPECT_LT(one.rad().to_double(), 1e-70);

  XReal half = log_gamma(XReal::from_double(0.5, kP));
  // ln sqrt(pi)
  Real ref = log(sqrt(Real::pi(kP + 64)));
  EXPECT_TRUE(encloses(half, ref));
  EXPECT_NEAR(half.to_double(), 0.57236494292470008707, 1e-15);

  XReal g45 = log_gamma(XReal::from_double(4.5, kP));
  // Gamma(4.5) = 3.5 * 2.5 * 1.5 * 0.5 * sqrt(pi)
  Real ref45 = log(Real(105L, kP + 64) * sqrt(Real::pi(kP + 64)) / 16L);
  EXPECT_TRUE(encloses(g45, ref45));
}

TEST(LogGamma, AgreesWithMpfrOracleOnGrid) {
  for (double x : {1e-6, 0.01, 0.3, 0.5, 0.999, 1.5, 2.0, 3.25, 7.0, 10.5, 33.3, 100.0, 1234.5, 1e6}) {
    XReal v = log_gamma(XReal::from_double(x, kP));
    Real ref = lngamma_oracle(Real(x, kP));
    EXPECT_TRUE(encloses(v, ref)) << x;
    // err <= 2^(-p+g) max(1, |lnGamma|)
    double bound = std::ldexp(1.0, -static_cast<int>(kP) + kLogGammaGuardBits) *
                   std::max(1.0, std::fabs(ref.to_double()));
    EXPECT_LE(v.rad().to_double(), bound) << x;
  }
}

TEST(LogGamma, HighPrecision) {
  for (Precision p : {64, 512, 1100, 2048}) {
    XReal v = log_gamma(XReal::from_double(2.75, p));
    Real r(p + 64);
    Real x(2.75, p + 64);
    mpfr_lngamma(r.get(), x.get(), MPFR_RNDN);
    EXPECT_TRUE(encloses(v, r)) << p;
  }
}

TEST(LogGamma, DuplicationFormula) {
  // Legendre: lnG(2x) = lnG(x) + lnG(x+1/2) + (2x-1) ln 2 - ln(pi)/2
  for (int i = 1; i <= 40; ++i) {
    XReal x = XReal::from_double(0.25 * i, kP);
    XReal lhs = log_gamma(x * 2L);
    XReal rhs = log_gamma(x) + log_gamma(x + XReal::from_double(0.5, kP)) + (x * 2L - 1L) * log(XReal(2, kP)) -
                log(XReal::pi(kP)) / 2L;
    XReal diff = lhs - rhs;
    EXPECT_TRUE(diff.contains_zero()) << x;
    EXPECT_LT(abs(diff.mid()).to_double(), std::ldexp(1.0, -static_cast<int>(kP) + kLogGammaGuardBits + 4));
  }
}

TEST(LogGamma, RejectsNonpositive) {
  EXPECT_THROW(log_gamma(XReal(0, kP)), DomainError);
  EXPECT_THROW(log_gamma(XReal(-3, kP)), DomainError);
  EXPECT_THROW(log_gamma(XReal(Real::infinity(kP))), DomainError);
}

TEST(LogGamma, BallInputIsEnclosed) {
  XReal x(Real(3L, kP), Real(1e-20, kRadiusPrecision));
  XReal v = log_gamma(x);
  EXPECT_GT(v.rad().to_double(), 1e-20);
  EXPECT_TRUE(v.contains(log(Real(2L, kP))));
}

TEST(GammaRatio, Recurrence) {
  EXPECT_TRUE(gamma_ratio(XReal(5, kP), XReal(4, kP)).contains(Real(4L, kP)));
  XReal r = gamma_ratio(XReal::from_double(4.5, kP), XReal::from_double(3.5, kP));
  EXPECT_TRUE(r.contains(Real(3.5, kP)));
  XReal sp = gamma_ratio(XReal::from_double(0.5, kP), XReal(1, kP));
  EXPECT_TRUE(encloses(sp, sqrt(Real::pi(kP + 64))));
  for (int i = 1; i < 30; ++i) {
    XReal x = XReal::from_double(0.37 * i, kP);
    XReal q = gamma_ratio(x + 1L, x);
    EXPECT_TRUE((q - x).contains_zero()) << i;
  }
  EXPECT_THROW(gamma_ratio(XReal(-1, kP), XReal(1, kP)), DomainError);
}

TEST(RecipGamma, PolesAreExactZeros) {
  for (long n : {0L, -1L, -2L, -7L}) {
    XReal r = recip_gamma(XReal(n, kP));
    EXPECT_TRUE(r.mid().is_zero());
    EXPECT_TRUE(r.is_exact());
  }
  EXPECT_TRUE(recip_gamma(XReal(3, kP)).contains(Real(0.5, kP)));
}

TEST(RecipGamma, NegativeNonIntegers) {
  // Gamma(-1/2) = -2 sqrt(pi)
  XReal r = recip_gamma(XReal::from_double(-0.5, kP));
  Real ref = Real(-1L, kP + 64) / (sqrt(Real::pi(kP + 64)) * 2L);
  EXPECT_TRUE(encloses(r, ref));
  // Gamma(-2.5) = -8 sqrt(pi)/15
  XReal r2 = recip_gamma(XReal::from_double(-2.5, kP));
  Real ref2 = Real(-15L, kP + 64) / (sqrt(Real::pi(kP + 64)) * 8L);
  EXPECT_TRUE(encloses(r2, ref2));
  XReal r3 = recip_gamma(XReal::from_double(-3.3, kP));
  Real g(kP + 64);
  Real x3(-3.3, kP + 64);
  mpfr_gamma(g.get(), x3.get(), MPFR_RNDN);
  EXPECT_TRUE(encloses(r3, Real(1L, kP + 64) / g));
}

TEST(RecipGamma, AmbiguousBallThrows) {
  XReal wide(Real(-2L, kP), Real(1e-3, kRadiusPrecision));
  EXPECT_THROW(recip_gamma(wide), NumericFailure);
}

TEST(RadialPoly, LowOrders) {
  XReal a1 = XReal::from_decimal("1", kP);
  auto p0 = radial_poly(0, 3, a1);
  ASSERT_EQ(p0.degree(), 0);
  EXPECT_TRUE(p0.coeffs[0].contains(Real(1L, kP)));

  for (int d = 1; d <= 5; ++d) {
    auto p1 = radial_poly(1, d, a1);
    ASSERT_EQ(p1.degree(), 1);
    Real want = Real(static_cast<long>(-(d + 3)), kP + 64) / static_cast<long>(d);
    EXPECT_TRUE(encloses(p1.coeffs[1], want));
  }
  // d = 1, alpha = 2, n = 2 -> [1, -14, 21]
  auto p2 = radial_poly(2, 1, XReal(2, kP));
  EXPECT_TRUE(p2.coeffs[0].contains(Real(1L, kP)));
  EXPECT_TRUE(p2.coeffs[1].contains(Real(-14L, kP)));
  EXPECT_TRUE(p2.coeffs[2].contains(Real(21L, kP)));
  EXPECT_TRUE(poly_eval(p2, XReal(1, kP)).contains(Real(8L, kP)));
}

TEST(RadialPoly, SignsAlternate) {
  for (int d : {1, 2, 3, 9}) {
    for (const char* a : {"0.01", "0.5", "1", "1.5", "2"}) {
      XReal alpha = XReal::from_decimal(a, kP);
      for (int n = 0; n <= 12; ++n) {
        auto p = radial_poly(n, d, alpha);
        for (int k = 0; k <= n; ++k) {
          EXPECT_EQ(p.coeffs[k].certified_sign(), (k % 2 == 0) ? 1 : -1) << d << " " << a << " " << n;
        }
      }
    }
  }
}

TEST(RadialPoly, ValueAtOneMatchesChuVandermonde) {
  // 2F1(-n, b; c; 1) = (c - b)_n / (c)_n
  for (int d : {1, 2, 5}) {
    for (const char* a : {"0.5", "1", "1.5"}) {
      XReal alpha = XReal::from_decimal(a, kP);
      XReal c = XReal(d, kP) / 2L;
      for (int n = 0; n <= 10; ++n) {
        XReal b = (XReal(d, kP) + alpha) / 2L + static_cast<long>(n);
        XReal want = pochhammer(c - b, n) / pochhammer(c, n);
        XReal got = poly_eval(radial_poly(n, d, alpha), XReal(1, kP));
        EXPECT_TRUE((got - want).contains_zero()) << d << " " << a << " " << n;
      }
    }
  }
}

TEST(RadialPoly, RecurrenceMatchesCoefficients) {
  std::vector<Real> vals;
  for (int d : {1, 2, 3, 9}) {
    for (const char* a : {"0.25", "1", "2"}) {
      XReal alpha = XReal::from_decimal(a, kP);
      for (double s : {0.0, 0.1, 0.5, 0.93, 1.0}) {
        radial_values(16, d, alpha.mid(), Real(s, kP), vals);
        for (int n = 0; n < 16; ++n) {
          XReal ref = poly_eval(radial_poly(n, d, alpha), XReal::from_double(s, kP));
          EXPECT_NEAR((vals[n] - ref.mid()).to_double(), 0.0, 1e-60) << d << a << s << n;
        }
      }
    }
  }
}

TEST(RadialPoly, DifferenceHasNoConstantTerm) {
  XReal alpha = XReal::from_decimal("0.5", kP);
  for (int n = 0; n < 6; ++n) {
    auto q = radial_poly(n, 2, alpha) - radial_poly(n + 1, 2, alpha);
    EXPECT_TRUE(q.coeffs[0].mid().is_zero());
    EXPECT_EQ(q.degree(), n + 1);
  }
}
