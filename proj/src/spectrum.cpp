#include "fraclap/spectrum.hpp"

#include "fraclap/aronszajn.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/rayleigh_ritz.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

namespace fraclap {

namespace {

bool tight(const XReal& x, double tol) {
  const double scale = std::max(1.0, std::fabs(x.to_double()));
  return x.rad().to_double(MPFR_RNDU) <= tol * scale;
}

BoundsResult radial_once(const ProblemParams& p, int n_max, bool parallel) {
  BoundsResult r{p, {}, 0};
  const int len = n_max + 1;
  LowerBounds lb = parallel ? lower_bounds(p.with_N(std::max(p.N - 1, 0)), len)
                            : lower_bounds_serial(p.with_N(std::max(p.N - 1, 0)), len);
  std::vector<XReal> up;
  if (p.N >= 1) up = (parallel ? upper_bounds(p) : upper_bounds_serial(p)).enclosures;
  for (int n = 0; n <= n_max; ++n) {
    RadialBound b;
    b.n = n;
    b.lower_enc = lb.values[static_cast<std::size_t>(n)];
    b.lower = b.lower_enc.lower();
    if (n < static_cast<int>(up.size())) {
      b.upper_enc = up[static_cast<std::size_t>(n)];
      b.upper = b.upper_enc.upper();
    } else {
      b.upper_enc = XReal(Real::infinity(p.precision));
      b.upper = Real::infinity(p.precision);
    }
    r.entries.push_back(std::move(b));
  }
  return r;
}

bool meets_tol(const BoundsResult& r) {
  for (const auto& b : r.entries) {
    if (!tight(b.lower_enc, r.params.tol)) return false;
    if (b.finite_upper() && !tight(b.upper_enc, r.params.tol)) return false;
  }
  return true;
}

BoundsResult radial(const ProblemParams& params, int n_max, bool parallel) {
  if (n_max < 0) throw DomainError("radial_bounds: n_max must be >= 0");
  std::string last = "radius above tolerance";
  int escalations = 0;
  for (Precision p = params.precision; p <= kMaxPrecision; p += 64, ++escalations) {
    try {
      BoundsResult r = radial_once(params.with_precision(p), n_max, parallel);
      if (meets_tol(r)) {
        r.escalations = escalations;
        return r;
      }
      last = "radius above tolerance";
    } catch (const NumericFailure& e) {
      if (e.kind() == NumericFailure::Kind::PrecisionExhausted) throw;
      last = e.what();
    }
  }
  std::ostringstream os;
  os << "radial_bounds d=" << params.d << " alpha=" << params.alpha_text << " N=" << params.N
     << ": no certificate up to " << kMaxPrecision << " bits (" << last << ")";
  throw NumericFailure(NumericFailure::Kind::PrecisionExhausted, os.str());
}

Spectrum assemble(const ProblemParams& params, int l_max, int count, bool parallel) {
  if (l_max < 0) throw DomainError("full_spectrum: l_max must be >= 0");
  if (count < 1) throw DomainError("full_spectrum: count must be >= 1");

  // families with M_{d,l} = 0 (d = 1, l >= 2) carry no eigenvalues
  std::vector<int> ls;
  for (int l = 0; l <= l_max; ++l) {
    if (multiplicity(params.d, l) > 0) ls.push_back(l);
  }
  const int n_max = count - 1;
  std::vector<BoundsResult> fam(ls.size());
  std::vector<std::exception_ptr> errs(ls.size());
  const int nf = static_cast<int>(ls.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int i = 0; i < nf; ++i) {
    try {
      fam[static_cast<std::size_t>(i)] = radial(params.with_d(params.d + 2 * ls[static_cast<std::size_t>(i)]), n_max, parallel);
    } catch (...) {
      errs[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errs) {
    if (e) std::rethrow_exception(e);
  }

  Spectrum s;
  for (int i = 0; i < nf; ++i) {
    const int l = ls[static_cast<std::size_t>(i)];
    for (const auto& b : fam[static_cast<std::size_t>(i)].entries) {
      SpectrumEntry e;
      e.l = l;
      e.n = b.n;
      e.multiplicity = multiplicity(params.d, l);
      e.lower = b.lower;
      e.upper = b.upper;
      s.entries.push_back(std::move(e));
    }
  }
  std::stable_sort(s.entries.begin(), s.entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    if (a.lower != b.lower) return a.lower < b.lower;
    return a.l != b.l ? a.l < b.l : a.n < b.n;
  });

  std::uint64_t total = 0;
  std::size_t keep = 0;
  while (keep < s.entries.size() && total < static_cast<std::uint64_t>(count)) total += s.entries[keep++].multiplicity;
  s.entries.resize(keep);

  // an entry is ambiguous when its interval meets a neighbour's
  for (std::size_t i = 0; i + 1 < s.entries.size(); ++i) {
    if (s.entries[i + 1].lower <= s.entries[i].upper) s.entries[i].ambiguous = s.entries[i + 1].ambiguous = true;
  }

  const bool more_families = !(params.d == 1 && l_max >= 1);
  if (more_families && !s.entries.empty()) {
    const int l_next = l_max + 1;
    ProblemParams next = params.with_d(params.d + 2 * l_next);
    const Real& last_upper = s.entries.back().upper;
    Real cut = mu(0, next).lower();
    if (!(cut > last_upper)) {
      s.complete = false;
      std::ostringstream os;
      os << "family l=" << l_next << " not excluded: mu_0(d=" << next.d << ") = " << cut.to_string(10, MPFR_RNDD)
         << " does not exceed the last upper bound " << last_upper.to_string(10, MPFR_RNDU);
      s.warning = os.str();
      // the omitted ground state provably precedes the last reported entry
      if (next.N >= 1) {
        BoundsResult nb = radial(next, 0, parallel);
        if (nb.entries[0].upper < s.entries.back().lower) {
          std::ostringstream es;
          es << "full_spectrum: l_max=" << l_max << " too small; lambda_{" << next.d << ",0} <= "
             << nb.entries[0].upper.to_string(10, MPFR_RNDU) << " precedes the entry with lower bound "
             << s.entries.back().lower.to_string(10, MPFR_RNDD);
          throw NumericFailure(NumericFailure::Kind::InvalidCut, es.str());
        }
      }
    }
  }
  return s;
}

}  // namespace

BoundsResult radial_bounds(const ProblemParams& params, int n_max) { return radial(params, n_max, true); }
BoundsResult radial_bounds_serial(const ProblemParams& params, int n_max) { return radial(params, n_max, false); }

Spectrum full_spectrum(const ProblemParams& params, int l_max, int count) {
  return assemble(params, l_max, count, true);
}
Spectrum full_spectrum_serial(const ProblemParams& params, int l_max, int count) {
  return assemble(params, l_max, count, false);
}

CrossCheck cs05_crosscheck(const ProblemParams& params, int n) {
  if (n < 0 || n >= params.N) throw DomainError("cs05_crosscheck: need 0 <= n < N");
  BoundsResult a = radial_bounds(params, n);
  ProblemParams p2 = ProblemParams::make(params.d, "2", params.N, a.params.precision, params.tol);
  BoundsResult b = radial_bounds(p2, n);
  const RadialBound& ra = a.entries[static_cast<std::size_t>(n)];
  const RadialBound& rb = b.entries[static_cast<std::size_t>(n)];

  CrossCheck c;
  c.lower_alpha = ra.lower;
  c.upper_alpha = ra.upper;
  c.lower_two = rb.lower;
  c.upper_two = rb.upper;
  const XReal e = a.params.alpha / 2L;
  // lambda^e is increasing in lambda, so endpoints map to endpoints
  c.window_lo = (pow(XReal(rb.lower), e) / 2L).lower();
  c.window_hi = pow(XReal(rb.upper), e).upper();
  c.lower_ok = c.lower_alpha >= c.window_lo;
  c.upper_ok = c.upper_alpha <= c.window_hi;
  return c;
}

}  // namespace fraclap
