#include "fraclap/analytic.hpp"
#include "fraclap/aronszajn.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/rayleigh_ritz.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fraclap;

namespace {

constexpr Precision kP = 256;

std::vector<std::string> quarter_grid() { return {"0.25", "0.5", "0.75", "1", "1.25", "1.5", "1.75", "2"}; }

// Lambda(d) transcribed independently in doubles
double lambda_relaxed_double(int d, double a) {
  const double mu0 = std::pow(2.0, a) * std::tgamma(a / 2 + 1) * std::tgamma((d + a) / 2) / std::tgamma(d / 2.0);
  return mu0 * std::tgamma(a / 2 + 2) * std::tgamma(d / 2.0 + a + 2) * (2.0 * d * d + 4 * a * d + 8 * d - a) /
         (4 * d * std::tgamma((d + a) / 2 + 3) * std::tgamma(a + 2));
}

}  // namespace

TEST(Upper2, PrintedValues) {
  EXPECT_NEAR(upper2_closed(ProblemParams::make(1, "1", 2)).upper0.to_double(), 1.157795514, 1e-9);
  EXPECT_NEAR(upper2_closed(ProblemParams::make(2, "2", 2)).upper0.to_double(), 5.784128281, 1e-9);
  // 3 pi 3 5 (33 - sqrt 417) / 1536
  const double v = 45 * M_PI * (33 - std::sqrt(417.0)) / 1536;
  EXPECT_NEAR(upper2_alpha1(1).upper0.to_double(), v, 1e-14);
}

TEST(Upper2, ThreePathsAgree) {
  for (int d = 1; d <= 9; ++d) {
    for (const auto& a : quarter_grid()) {
      auto p = ProblemParams::make(d, a, 2);
      Upper2 u = upper2_closed(p);
      UpperBounds rr = upper_bounds(p);
      EXPECT_TRUE(u.upper0.overlaps(rr.enclosures[0])) << d << " " << a;
      EXPECT_TRUE(u.upper1.overlaps(rr.enclosures[1])) << d << " " << a;
      EXPECT_TRUE(u.upper0.overlaps(upper2_gamma_form(p))) << d << " " << a;
      if (a == "1") {
        Upper2 c = upper2_alpha1(d);
        EXPECT_TRUE(u.upper0.overlaps(c.upper0)) << d;
        EXPECT_TRUE(u.upper1.overlaps(c.upper1)) << d;
      }
    }
  }
}

TEST(Upper2, RelaxedDominates) {
  for (int d = 1; d <= 11; ++d) {
    for (const auto& a : quarter_grid()) {
      auto p = ProblemParams::make(d, a, 2);
      XReal lam = upper2_relaxed(p);
      EXPECT_TRUE((lam - upper2_closed(p).upper0).is_positive()) << d << " " << a;
      EXPECT_NEAR(lam.to_double(), lambda_relaxed_double(d, std::stod(a)), 1e-12 * lam.to_double());
    }
  }
  // alpha = 1: upper0 < 3 pi (d+3)/16 for every d
  for (int d = 1; d <= 30; ++d) {
    XReal thr = XReal::pi(kP) * 3L * static_cast<long>(d + 3) / 16L;
    EXPECT_TRUE((thr - upper2_alpha1(d).upper0).is_positive()) << d;
  }
}

TEST(Lower1, PrintedAndGeneric) {
  auto p = ProblemParams::make(1, "1", 1);
  Lower1 l = lower1_closed(p, i_closed_alpha1(1));
  EXPECT_NEAR(l.lower0.to_double(), 1.157615128, 1e-9);
  EXPECT_TRUE(l.lower1.overlaps(XReal(5, kP)) || (XReal(5, kP) - l.lower1).is_positive());

  for (int d = 1; d <= 9; ++d) {
    for (const auto& a : quarter_grid()) {
      auto q = ProblemParams::make(d, a, 1);
      Lower1 c = lower1_closed(q, i_mn(0, 0, q));
      LowerBounds lb = lower_bounds(q, 2);
      EXPECT_TRUE(c.lower0.overlaps(lb.values[0])) << d << " " << a;
      EXPECT_TRUE(c.lower1.overlaps(lb.values[1])) << d << " " << a;
      // lower0 in (mu0, mu1), larger root beyond mu1
      EXPECT_TRUE((c.lower0 - mu(0, q)).is_positive() && (mu(1, q) - c.lower0).is_positive());
      EXPECT_TRUE((c.root1 - mu(1, q)).is_positive());
    }
  }
}

TEST(Lower1, DegenerateLimitAndDomain) {
  for (int d : {1, 2, 5}) {
    for (const char* a : {"0.5", "1", "2"}) {
      auto p = ProblemParams::make(d, a, 1);
      XReal s01 = sigma(0, p) + sigma(1, p);
      XReal r = lower1_degenerate_root(p);
      EXPECT_TRUE((r - mu(0, p)).is_positive() && (mu(1, p) - r).is_positive());
      Lower1 l = lower1_closed(p, s01 + XReal::from_double(1e-40, kP));
      EXPECT_NEAR(l.lower0.to_double(), r.to_double(), 1e-30);
      // r solves (mu0 - l)(mu1 - l) I + l s0 (mu1 - l) + l s1 (mu0 - l) = 0 at I = s0 + s1
      XReal w = (mu(0, p) - r) * (mu(1, p) - r) * s01 + r * sigma(0, p) * (mu(1, p) - r) + r * sigma(1, p) * (mu(0, p) - r);
      EXPECT_TRUE(w.contains_zero());
      EXPECT_THROW(lower1_closed(p, s01), DomainError);
      EXPECT_THROW(lower1_closed(p, s01 - XReal(1, kP)), DomainError);
    }
  }
}

TEST(IClosed, AlphaOne) {
  Real expect = Real(64L, 512) / Real(15L, 512) + Real::pi(512) * 2L;
  EXPECT_TRUE(i_closed_alpha1(1).contains(expect));
  for (int d = 1; d <= 9; ++d) {
    auto p = ProblemParams::make(d, "1", 1);
    XReal c = i_closed_alpha1(d);
    XReal s = i_mn(0, 0, p);
    EXPECT_NEAR(c.to_double(), s.to_double(), 1e-10);
    EXPECT_TRUE(c.overlaps(s));
    EXPECT_TRUE((c - sigma(0, p) - sigma(1, p)).is_positive());
  }
}

TEST(IEstimates, Sigma01AndBounds) {
  for (int d = 1; d <= 9; ++d) {
    for (const auto& a : quarter_grid()) {
      auto p = ProblemParams::make(d, a, 1);
      EXPECT_TRUE(sigma01_closed(p).overlaps(sigma(0, p) + sigma(1, p)));
      XReal I = i_mn(0, 0, p);
      EXPECT_TRUE((i_upper_zeta(p, 50) - I).is_positive()) << d << " " << a;
      EXPECT_TRUE((I - i_lower_partial(p, 50)).is_positive()) << d << " " << a;
      EXPECT_TRUE((i_upper_zeta(p, 1) - i_upper_zeta(p, 10)).is_positive());
      XReal J = i_upper_concavity(p);
      EXPECT_FALSE((I - J).is_positive()) << d << " " << a;
    }
  }
  auto p = ProblemParams::make(1, "1", 1);
  // J = 50 leaves about 1.2e-2; 1e-3 is reached near J = 134
  const double I = i_closed_alpha1(1).to_double();
  EXPECT_LT(i_upper_zeta(p, 50).to_double() - I, 1.5e-2);
  EXPECT_LT(i_upper_zeta(p, 150).to_double() - I, 1e-3);
  auto q = ProblemParams::make(2, "1", 1);
  EXPECT_TRUE(i_upper_concavity(q).overlaps(sigma(0, q) * 5L));
}

TEST(Theorem2, MarginsPositive) {
  for (int d = 1; d <= 10; ++d) EXPECT_TRUE(theorem2_margin(d, "1").certified()) << d;
  EXPECT_NEAR(theorem2_margin(10, "1").value.to_double(), 0.1146, 1e-4);
  for (int d : {1, 2}) {
    for (const auto& a : alpha_grid(16)) EXPECT_TRUE(theorem2_margin(d, a).certified()) << d << " " << a;
  }
}

TEST(Theorem2, AlphaOneThresholds) {
  for (int d = 1; d <= 9; ++d) {
    Alpha1Checks c = alpha1_threshold_checks(d);
    EXPECT_TRUE(c.upper_ok && c.lower_ok && c.mu2_ok) << d;
    EXPECT_TRUE(c.upper_quadratic_at_threshold.overlaps(c.upper_quadratic_closed)) << d;
    EXPECT_TRUE(c.lower_quadratic_at_threshold.overlaps(c.lower_quadratic_closed)) << d;
    EXPECT_TRUE(c.upper_quadratic_closed.is_negative());
    EXPECT_TRUE(c.lower_quadratic_closed.is_negative());
  }
  Alpha1Checks c10 = alpha1_threshold_checks(10);
  EXPECT_FALSE(c10.mu2_ok);
  EXPECT_TRUE(c10.upper_ok);
  // d = 1: mu_2 = 5 > 9 pi / 8
  Alpha1Checks c1 = alpha1_threshold_checks(1);
  EXPECT_NEAR(c1.mu2_margin, 5 - 9 * M_PI / 8, 1e-14);
}

TEST(Lemmas, MonotoneScans) {
  for (Lemma w : {Lemma::Five, Lemma::Six}) {
    MonotonicityScan s = lemma_monotonicity_scan(w, 101);
    EXPECT_TRUE(s.monotone);
    EXPECT_GT(s.min_step, 0);
    EXPECT_EQ(s.values.size(), 101u);
  }
  EXPECT_TRUE(lemma_h(Lemma::Five, XReal(128)).contains(Real(2L, 128)));
  Real two_sevenths = Real(2L, 128) / Real(7L, 128);
  EXPECT_TRUE(lemma_h(Lemma::Six, XReal(128)).contains(two_sevenths));
  EXPECT_THROW(lemma_monotonicity_scan(Lemma::Five, 1), DomainError);
}

TEST(SmallDim, FactorisationAndSigns) {
  for (int d : {1, 2}) {
    for (const auto& a : alpha_grid(32)) {
      SmallDimQuantities q = small_dim_quantities(d, a);
      const double al = std::stod(a);
      EXPECT_TRUE(q.F_direct.overlaps(q.F_factored)) << d << " " << a;
      EXPECT_TRUE(q.gT.is_negative()) << d << " " << a;
      EXPECT_TRUE((q.mu2 - q.Lambda_next).is_positive()) << d << " " << a;
      if (d == 1) {
        EXPECT_GT(q.T.to_double(), (2 * al + 12) / (al + 1));
        EXPECT_LT(q.T.to_double(), 6 * al + 12);
        EXPECT_NEAR(q.a.to_double(), (10 - al) * (al + 1) / (144 * (al + 5)), 1e-14);
        EXPECT_NEAR(q.b.to_double(), -(al * al * al + 11 * al * al + 32 * al + 40) / (24 * (al + 5)), 1e-14);
      } else {
        const double T = 8 * (15 * al + 64) * (al + 2) * (al + 3) / ((al + 4) * (al + 6) * (al + 8));
        EXPECT_NEAR(q.T.to_double(), T, 1e-12);
        EXPECT_GT(T, 16);
        EXPECT_LT(T, 32 * (al + 2) * (al + 6) / (3 * (al + 8)));
        EXPECT_NEAR(q.a.to_double(), (6 - al) * (al + 2) / (256 * (al + 6)), 1e-14);
      }
    }
  }
}

TEST(AlphaGrid, Decimals) {
  auto g = alpha_grid(64);
  ASSERT_EQ(g.size(), 64u);
  EXPECT_EQ(g.front(), "0.03125");
  EXPECT_EQ(g.back(), "2");
  EXPECT_EQ(alpha_grid(10)[0], "0.2");
  for (const auto& a : g) EXPECT_TRUE(ProblemParams::make(1, a, 1).alpha.is_exact()) << a;
}
