#include "fraclap/verify.hpp"

#include "fraclap/analytic.hpp"
#include "fraclap/aronszajn.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/rayleigh_ritz.hpp"
#include "fraclap/tables.hpp"

#include <sstream>

namespace fraclap {

namespace {

std::string num(const XReal& x, int digits = 6) { return x.mid().to_string(digits); }

template <class... Ts>
std::string cat(const Ts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

std::vector<CheckResult> theorem2(Precision p) {
  std::vector<CheckResult> out;
  for (int d = 1; d <= 9; ++d) {
    Margin m = theorem2_margin(d, "1", p);
    out.push_back({"theorem2", cat("margin d=", d, " alpha=1"), m.certified(), "margin " + num(m.value)});
  }
  for (int d : {1, 2}) {
    for (const auto& a : alpha_grid(64)) {
      Margin m = theorem2_margin(d, a, p);
      out.push_back({"theorem2", cat("margin d=", d, " alpha=", a), m.certified(), "margin " + num(m.value)});
    }
  }
  for (int d = 1; d <= 9; ++d) {
    Alpha1Checks c = alpha1_threshold_checks(d, p);
    out.push_back({"theorem2", cat("alpha=1 thresholds d=", d), c.upper_ok && c.lower_ok && c.mu2_ok,
                   cat("upper ", c.upper_margin, " lower ", c.lower_margin, " mu2 ", c.mu2_margin)});
  }
  // mu_2 > 3 pi (d+5)/16 stops holding at d = 10
  Alpha1Checks c10 = alpha1_threshold_checks(10, p);
  out.push_back({"theorem2", "mu2 comparison fails at d=10", !c10.mu2_ok, cat("mu2 margin ", c10.mu2_margin)});
  return out;
}

std::vector<CheckResult> lemmas(Precision p) {
  std::vector<CheckResult> out;
  for (Lemma w : {Lemma::Five, Lemma::Six}) {
    MonotonicityScan s = lemma_monotonicity_scan(w, 201, p);
    out.push_back({"lemmas", w == Lemma::Five ? "lemma 5 increasing on (0,2]" : "lemma 6 increasing on (0,2]", s.monotone,
                   cat("min step ", s.min_step)});
  }
  return out;
}

std::vector<CheckResult> invariants(Precision p) {
  std::vector<CheckResult> out;
  constexpr int kN = 6;
  for (int d : {1, 2, 3}) {
    for (const char* a : {"0.25", "1", "1.75", "2"}) {
      const std::string tag = cat(" d=", d, " alpha=", a);
      auto base = ProblemParams::make(d, a, kN, p);
      std::vector<std::vector<Real>> lo(kN + 1), up(kN + 1);
      for (int N = 0; N <= kN; ++N) {
        LowerBounds lb = lower_bounds(base.with_N(N), 2);
        for (int n = 0; n < 2; ++n) lo[N].push_back(lb.lower(n));
        if (N >= 1) {
          UpperBounds ub = upper_bounds(base.with_N(N));
          for (int n = 0; n < 2; ++n) up[N].push_back(ub.upper(n));
        }
      }
      bool lo_mono = true, up_mono = true, ordered = true;
      for (int N = 1; N <= kN; ++N) {
        for (int n = 0; n < 2; ++n) {
          lo_mono = lo_mono && lo[N - 1][n] <= lo[N][n];
          if (N >= 2) up_mono = up_mono && up[N][n] <= up[N - 1][n];
          ordered = ordered && lo[N][n] <= up[N][n] && lo[N - 1][n] <= up[N][n];
        }
      }
      out.push_back({"invariants", "lower nondecreasing in N" + tag, lo_mono, ""});
      out.push_back({"invariants", "upper nonincreasing in N" + tag, up_mono, ""});
      out.push_back({"invariants", "lower <= upper" + tag, ordered, ""});

      auto p1 = base.with_N(1);
      XReal I = i_mn(0, 0, p1);
      XReal s01 = sigma(0, p1) + sigma(1, p1);
      XReal Jc = i_upper_concavity(p1);
      const bool alpha_two = std::string(a) == "2";
      const bool est = (I - s01).is_positive() && (i_upper_zeta(p1, 50) - I).is_positive() &&
                       (alpha_two ? !(I - Jc).is_positive() : (Jc - I).is_positive());
      out.push_back({"invariants", "sigma0+sigma1 < I00 < zeta and concavity bounds" + tag, est, "I00 " + num(I, 12)});

      Upper2 u2 = upper2_closed(base.with_N(2));
      UpperBounds rr = upper_bounds(base.with_N(2));
      Lower1 l1 = lower1_closed(p1, I);
      LowerBounds lb1 = lower_bounds(p1, 2);
      const bool closed = u2.upper0.overlaps(rr.enclosures[0]) && u2.upper1.overlaps(rr.enclosures[1]) &&
                          l1.lower0.overlaps(lb1.values[0]) && l1.lower1.overlaps(lb1.values[1]);
      out.push_back({"invariants", "N=1,2 closed forms match generic path" + tag, closed, ""});
    }
  }
  for (int d = 1; d <= 9; ++d) {
    auto q = ProblemParams::make(d, "1", 1, p);
    XReal diff = i_closed_alpha1(d, p) - i_mn(0, 0, q);
    const bool ok = abs(diff).upper() <= Real(1e-10, p);
    out.push_back({"invariants", cat("alpha=1 closed I00 d=", d), ok, "difference " + num(diff, 3)});
  }
  return out;
}

std::vector<CheckResult> tables(Precision p) {
  std::vector<CheckResult> out;
  for (int t = 1; t <= 4; ++t) {
    for (const TableCell& c : compute_table(t, p)) {
      std::string detail;
      if (!c.matches())
        detail = cat("computed ", c.lower, "/", c.upper, " printed ", c.ref.lower, "/", c.ref.upper);
      out.push_back({"tables", cat("table ", t, " N=", c.ref.N, " alpha=", c.ref.alpha), c.matches(), detail});
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"theorem2", "lemmas", "invariants", "tables"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, Precision precision) {
  if (suite == "theorem2") return theorem2(precision);
  if (suite == "lemmas") return lemmas(precision);
  if (suite == "invariants") return invariants(precision);
  if (suite == "tables") return tables(precision);
  throw DomainError("unknown suite: " + suite);
}

}  // namespace fraclap
