#include "fraclap/aronszajn.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/rayleigh_ritz.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fraclap;

namespace {

constexpr Precision kP = 256;

Real ratio(long num, long den) {
  Real v(num, 512);
  v /= Real(den, 512);
  return v;
}

std::vector<std::string> alphas() { return {"0.01", "0.1", "0.5", "1", "1.5", "2"}; }

}  // namespace

TEST(QPoly, LowOrders) {
  auto p = ProblemParams::make(3, "1", 1);
  auto q0 = q_poly(0, p);
  ASSERT_EQ(q0.degree(), 1);
  EXPECT_TRUE(q0.coeffs[0].is_exact() && q0.coeffs[0].mid().is_zero());
  EXPECT_TRUE(q0.coeffs[1].contains(ratio(6, 3)));  // (d+a+2)/d

  auto q1 = q_poly(1, ProblemParams::make(1, "2", 1));
  ASSERT_EQ(q1.degree(), 2);
  EXPECT_TRUE(q1.coeffs[1].contains(ratio(9, 1)));
  EXPECT_TRUE(q1.coeffs[2].contains(ratio(-21, 1)));
  for (int n = 0; n < 12; ++n) {
    auto q = q_poly(n, ProblemParams::make(2, "0.5", 1));
    EXPECT_EQ(q.degree(), n + 1);
    EXPECT_TRUE(q.coeffs[0].mid().is_zero());
  }
}

TEST(WeightedMoment, Values) {
  for (int d = 1; d <= 6; ++d) {
    XReal vol = weighted_moment(0, XReal(kP), d);
    double expect = std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1);
    EXPECT_NEAR(vol.to_double(), expect, 1e-13 * expect);
  }
  EXPECT_TRUE(weighted_moment(2, XReal(kP), 1).contains(ratio(2, 5)));
  // int_{-1}^{1} x^4 sqrt(1 - x^2) dx = pi/16
  XReal w = weighted_moment(2, XReal(1, kP) / 2L, 1);
  EXPECT_TRUE(w.contains(Real::pi(kP) / 16L));
  auto oracle_val = oracle::ball_integral(1, [](long double s, long double v) { return s * s * std::sqrt(v); });
  EXPECT_NEAR(w.to_double(), static_cast<double>(oracle_val), 1e-15);
  EXPECT_THROW(weighted_moment(1, XReal(-1, kP), 2), DomainError);
  EXPECT_THROW(weighted_moment(-1, XReal(kP), 2), DomainError);
}

TEST(IMatrix, ClosedFormAlphaOne) {
  auto p = ProblemParams::make(1, "1", 1);
  IMatrix I = imatrix(p, 1);
  EXPECT_EQ(I.method, IMethod::BetaSum);
  Real expect = ratio(64, 15) + Real::pi(512) * 2L;
  EXPECT_TRUE(I.entries(0, 0).contains(expect));
  EXPECT_LT(I.entries(0, 0).rad().to_double(), 1e-70);
}

TEST(IMatrix, RouteSelection) {
  for (const char* a : {"0.01", "0.1", "0.5", "1", "2", "0.4", "0.25"}) {
    EXPECT_TRUE(alpha_reciprocal(ProblemParams::make(2, a, 1)).has_value()) << a;
  }
  for (const char* a : {"1.5", "0.3", "0.7", "1.9"}) {
    EXPECT_FALSE(alpha_reciprocal(ProblemParams::make(2, a, 1)).has_value()) << a;
  }
  EXPECT_EQ(*alpha_reciprocal(ProblemParams::make(2, "0.01", 1)), 200);
  EXPECT_EQ(imatrix(ProblemParams::make(2, "1.5", 1), 2).method, IMethod::TanhSinh);
}

TEST(IMatrix, QuadratureOracle) {
  for (int d : {1, 2}) {
    for (const char* a : {"0.5", "1", "1.5", "2"}) {
      auto p = ProblemParams::make(d, a, 1);
      IMatrix I = imatrix(p, 3);
      const long double al = std::stold(a);
      for (int m = 0; m < 3; ++m) {
        for (int n = 0; n < 3; ++n) {
          const double o = static_cast<double>(oracle::i_mn(m, n, d, al));
          EXPECT_NEAR(I.entries(m, n).to_double(), o, 1e-8 * std::max(1.0, std::fabs(o))) << d << " " << a << " " << m << n;
        }
      }
    }
  }
}

TEST(IMatrix, ExactRouteMatchesQuadrature) {
  for (int d : {1, 2, 5, 9}) {
    for (const char* a : {"0.1", "0.5", "1", "2"}) {
      auto p = ProblemParams::make(d, a, 1);
      IMatrix e = imatrix(p, 6);
      IMatrix q = imatrix_quadrature(p, 6);
      ASSERT_EQ(e.method, IMethod::BetaSum);
      for (int m = 0; m < 6; ++m) {
        for (int n = 0; n < 6; ++n) {
          const Real diff = abs(e.entries(m, n).mid() - q.entries(m, n).mid());
          const Real scale = abs(e.entries(m, n).mid());
          EXPECT_LT(diff.to_double(), 1e-60 * std::max(1.0, scale.to_double())) << d << " " << a << " " << m << n;
          EXPECT_TRUE(e.entries(m, n).overlaps(q.entries(m, n)));
        }
      }
    }
  }
}

TEST(IMatrix, SymmetricPositiveDiagonal) {
  for (int d : {1, 3, 9}) {
    for (const auto& a : alphas()) {
      IMatrix I = imatrix(ProblemParams::make(d, a, 1), 5);
      for (int m = 0; m < 5; ++m) {
        EXPECT_TRUE(I.entries(m, m).is_positive());
        for (int n = 0; n < 5; ++n) EXPECT_TRUE(I.entries(m, n).mid() == I.entries(n, m).mid());
      }
      EXPECT_NO_THROW(cholesky(I.entries));
    }
  }
}

TEST(IMatrix, ParallelMatchesSerial) {
  for (const char* a : {"1", "1.5"}) {
    auto p = ProblemParams::make(2, a, 1);
    IMatrix x = imatrix(p, 5);
    IMatrix y = imatrix_serial(p, 5);
    for (int m = 0; m < 5; ++m) {
      for (int n = 0; n < 5; ++n) {
        EXPECT_TRUE(x.entries(m, n).mid() == y.entries(m, n).mid());
        EXPECT_TRUE(x.entries(m, n).rad() == y.entries(m, n).rad());
      }
    }
  }
}

TEST(IMatrix, ElementaryEstimates) {
  // sigma_0 + sigma_1 < I <= 2 (d + a + 2) sigma_0 / (a d), equality at alpha = 2 (t^{a/2} linear)
  for (int d = 1; d <= 9; ++d) {
    for (const auto& a : alphas()) {
      auto p = ProblemParams::make(d, a, 1);
      XReal I = i_mn(0, 0, p);
      XReal lo = sigma(0, p) + sigma(1, p);
      XReal hi = (XReal(d, kP) + p.alpha + 2L) * sigma(0, p) * 2L / (p.alpha * static_cast<long>(d));
      EXPECT_TRUE((I - lo).is_positive()) << d << " " << a;
      if (a == "2") {
        EXPECT_TRUE(hi.overlaps(I)) << d;
      } else {
        EXPECT_TRUE((hi - I).is_positive()) << d << " " << a;
      }
    }
  }
}

TEST(Series, AgreesWithExactRoute) {
  struct Case {
    int d;
    const char* a;
    int m, n;
    double tol;
  };
  for (Case c : {Case{9, "2", 0, 0, 1e-12}, Case{5, "1", 0, 1, 1e-9}, Case{1, "1", 0, 0, 1e-5}, Case{3, "2", 1, 1, 1e-7}}) {
    auto p = ProblemParams::make(c.d, c.a, 1);
    SeriesValue s = i_mn_series(c.m, c.n, p, c.tol);
    EXPECT_LE(s.tail_bound.to_double(), c.tol);
    EXPECT_GE(s.terms, 1);
    XReal exact = i_mn(c.m, c.n, p);
    EXPECT_TRUE(s.value.overlaps(exact)) << c.d << " " << c.a;
    EXPECT_NEAR(s.value.to_double(), exact.to_double(), c.tol * 1.01);
  }
}

TEST(Series, CapIsReported) {
  auto p = ProblemParams::make(1, "0.01", 1);
  try {
    i_mn_series(2, 2, p, 1e-14);
    FAIL() << "expected SeriesCapExceeded";
  } catch (const NumericFailure& e) {
    EXPECT_EQ(e.kind(), NumericFailure::Kind::SeriesCapExceeded);
  }
  EXPECT_THROW(i_mn_series(0, 0, p, 0.0), DomainError);
}

TEST(WaEntry, Formula) {
  auto p = ProblemParams::make(1, "1", 1);
  BasisScalars s = BasisScalars::compute(p, 3, 0);
  IMatrix I = imatrix(p, 2);
  // lambda = 0 gives I itself
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) EXPECT_TRUE(wa_entry(m, n, XReal(kP), s, I).overlaps(I.entries(m, n)));

  // N = 1 entry and the off-diagonal at lambda = mu_2 / 2
  const XReal lam = s.mu[2] / 2L;
  XReal w00 = I.entries(0, 0) + lam * s.sigma[0] / (s.mu[0] - lam) + lam * s.sigma[1] / (s.mu[1] - lam);
  EXPECT_TRUE(wa_entry(0, 0, lam, s, I).overlaps(w00));
  XReal w01 = I.entries(0, 1) - lam * s.sigma[1] / (s.mu[1] - lam);
  EXPECT_TRUE(wa_entry(0, 1, lam, s, I).overlaps(w01));
  EXPECT_TRUE(wa_entry(1, 0, lam, s, I).overlaps(w01));

  try {
    wa_entry(0, 0, s.mu[1], s, I);
    FAIL() << "expected PoleProximity";
  } catch (const NumericFailure& e) {
    EXPECT_EQ(e.kind(), NumericFailure::Kind::PoleProximity);
  }
}

TEST(WEval, MatchesProductTimesDeterminant) {
  auto p = ProblemParams::make(2, "1", 1);
  BasisScalars s = BasisScalars::compute(p, 2, 0);
  IMatrix I = imatrix(p, 1);
  for (double l : {0.0, 0.7, 3.3, 9.0, 40.0}) {
    XReal lam = XReal::from_double(l, kP);
    XReal expect = (s.mu[0] - lam) * (s.mu[1] - lam) * I.entries(0, 0) + lam * s.sigma[0] * (s.mu[1] - lam) +
                   lam * s.sigma[1] * (s.mu[0] - lam);
    XReal w = w_eval(lam, s, I);
    EXPECT_TRUE(w.overlaps(expect)) << l;
    EXPECT_NEAR(w_eval_mid(lam.mid(), s, I).to_double(), expect.to_double(), 1e-20 * std::fabs(expect.to_double()) + 1e-30);
  }
  // w(0) = det(I) prod mu > 0
  for (int N = 1; N <= 6; ++N) {
    auto q = ProblemParams::make(3, "0.5", N);
    BasisScalars t = BasisScalars::compute(q, N + 1, 0);
    EXPECT_TRUE(w_eval(XReal(kP), t, imatrix(q, N)).is_positive()) << N;
  }
}

TEST(WEval, DegreeViaDividedDifferences) {
  for (int d : {1, 2, 9}) {
    for (const char* a : {"0.5", "1", "1.5", "2"}) {
      for (int N = 1; N <= 5; ++N) {
        auto p = ProblemParams::make(d, a, N);
        BasisScalars s = BasisScalars::compute(p, N + 1, 0);
        IMatrix I = imatrix(p, N);
        // nodes spread over [0, 2 mu_N], avoiding nothing: w has no poles
        std::vector<XReal> x, f;
        for (int j = 0; j < N + 3; ++j) {
          x.push_back(s.mu[N] * static_cast<long>(2 * j) / static_cast<long>(N + 2) + XReal(1, kP) / 7L);
          f.push_back(w_eval(x.back(), s, I));
        }
        // Newton table; order N+1 must be nonzero, order N+2 must vanish
        std::vector<XReal> t = f;
        for (int k = 1; k <= N + 2; ++k) {
          for (int j = N + 2; j >= k; --j) t[j] = (t[j] - t[j - 1]) / (x[j] - x[j - k]);
          if (k == N + 1) EXPECT_FALSE(t[k].contains_zero()) << d << " " << a << " N=" << N;
        }
        EXPECT_TRUE(t[N + 2].contains_zero()) << d << " " << a << " N=" << N;
        const double rel = std::fabs(t[N + 2].to_double()) / std::fabs(t[N + 1].to_double());
        EXPECT_LT(rel, 1e-40);
      }
    }
  }
}

TEST(WRoots, NOneLocalisation) {
  for (int d : {1, 2, 5, 9}) {
    for (const auto& a : alphas()) {
      auto p = ProblemParams::make(d, a, 1);
      BasisScalars s = BasisScalars::compute(p, 3, 0);
      auto r = w_roots(s, imatrix(p, 1));
      ASSERT_EQ(r.size(), 2u);
      EXPECT_TRUE((r[0] - s.mu[0]).is_positive() && (s.mu[1] - r[0]).is_positive()) << d << " " << a;
      EXPECT_TRUE((r[1] - s.mu[1]).is_positive()) << d << " " << a;
    }
  }
}

TEST(WRoots, PencilAgreesWithScan) {
  for (int d : {1, 2, 9}) {
    for (const char* a : {"0.1", "1", "1.5", "2"}) {
      for (int N : {1, 3, 6}) {
        auto p = ProblemParams::make(d, a, N);
        BasisScalars s = BasisScalars::compute(p, N + 2, 0);
        IMatrix I = imatrix(p, N);
        auto x = w_roots_pencil(s, I);
        auto y = w_roots_scan(s, I);
        ASSERT_EQ(x.size(), static_cast<std::size_t>(N + 1));
        ASSERT_EQ(y.size(), x.size());
        for (std::size_t k = 0; k < x.size(); ++k) {
          EXPECT_TRUE(x[k].overlaps(y[k])) << d << " " << a << " N=" << N << " k=" << k;
          EXPECT_TRUE(x[k].is_positive());
          // w changes sign across each certified enclosure
          Real lo = x[k].lower(), hi = x[k].upper();
          Real pad = max(hi - lo, Real(1e-40, kP) * hi);
          int sl = w_eval(XReal(lo - pad), s, I).certified_sign();
          int sh = w_eval(XReal(hi + pad), s, I).certified_sign();
          EXPECT_EQ(sl * sh, -1);
        }
      }
    }
  }
}

TEST(WRoots, DecreaseWhenIIncreases) {
  auto p = ProblemParams::make(2, "1", 1);
  BasisScalars s = BasisScalars::compute(p, 3, 0);
  IMatrix I = imatrix(p, 1);
  auto base = w_roots(s, I);
  for (double bump : {1e-6, 1e-3, 0.1, 1.0}) {
    IMatrix J = I;
    J.entries(0, 0) += XReal::from_double(bump, kP);
    auto r = w_roots(s, J);
    EXPECT_TRUE((base[0] - r[0]).is_positive()) << bump;
    EXPECT_TRUE((base[1] - r[1]).is_positive()) << bump;
  }
}

TEST(LowerBounds, NZeroIsMu) {
  auto p = ProblemParams::make(2, "1", 0);
  LowerBounds lb = lower_bounds(p, 5);
  ASSERT_EQ(lb.size(), 5);
  for (int n = 0; n < 5; ++n) {
    EXPECT_EQ(lb.from_mu[n], n);
    EXPECT_TRUE(lb.values[n].overlaps(mu(n, p)));
  }
  EXPECT_NEAR(lb.lower(0).to_double(), 1.570796326, 1e-9);
  EXPECT_THROW(lower_bounds(p, 0), DomainError);
}

TEST(LowerBounds, PrintedValues) {
  // row N shows the lower bound computed with N - 1
  EXPECT_NEAR(lower_bounds(ProblemParams::make(1, "1", 1), 1).lower(0).to_double(), 1.157615128, 1e-9);
  EXPECT_NEAR(lower_bounds(ProblemParams::make(9, "2", 3), 1).lower(0).to_double(), 48.828376987, 1e-9);
  EXPECT_NEAR(lower_bounds(ProblemParams::make(2, "2", 4), 1).lower(0).to_double(), 5.783185962, 1e-9);
  EXPECT_NEAR(lower_bounds(ProblemParams::make(1, "0.5", 1), 1).lower(0).to_double(), 0.969571203, 1e-9);
  EXPECT_NEAR(lower_bounds(ProblemParams::make(1, "0.5", 0), 1).lower(0).to_double(), 0.886226925, 1e-9);
}

TEST(LowerBounds, MergePlateau) {
  // d = 2, alpha = 1: index 3 stays at mu_3 for N = 0, 1
  for (int N : {0, 1}) {
    LowerBounds lb = lower_bounds(ProblemParams::make(2, "1", N), 4);
    EXPECT_EQ(lb.from_mu[3], 3) << N;
    EXPECT_NEAR(lb.lower(3).to_double(), 7.516505860, 1e-9);
  }
  LowerBounds lb = lower_bounds(ProblemParams::make(2, "1", 3), 6);
  for (int n = 0; n + 1 < lb.size(); ++n) EXPECT_LE(lb.lower(n), lb.lower(n + 1));
}

TEST(LowerBounds, MonotoneInNAndBelowUpper) {
  for (int d : {1, 2, 9}) {
    for (const auto& a : alphas()) {
      std::vector<Real> prev;
      for (int N = 0; N <= 7; ++N) {
        LowerBounds lb = lower_bounds(ProblemParams::make(d, a, N), 4);
        UpperBounds ub = upper_bounds(ProblemParams::make(d, a, N + 1));
        for (int n = 0; n < 4; ++n) {
          if (!prev.empty()) EXPECT_GE(lb.lower(n), prev[n]) << d << " " << a << " N=" << N << " n=" << n;
          EXPECT_LE(lb.lower(n), ub.upper(n)) << d << " " << a << " N=" << N << " n=" << n;
        }
        prev.clear();
        for (int n = 0; n < 4; ++n) prev.push_back(lb.lower(n));
      }
    }
  }
}

TEST(LowerBounds, ParallelMatchesSerial) {
  auto p = ProblemParams::make(2, "1.5", 5);
  LowerBounds x = lower_bounds(p, 8);
  LowerBounds y = lower_bounds_serial(p, 8);
  for (int n = 0; n < 8; ++n) EXPECT_TRUE(x.lower(n) == y.lower(n));
}
