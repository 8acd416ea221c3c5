#include "fraclap/basis.hpp"

#include "fraclap/errors.hpp"
#include "fraclap/specfun.hpp"

#include <cstdlib>
#include <limits>

namespace fraclap {

ProblemParams ProblemParams::make(int d, std::string_view alpha, int N, Precision precision, double tol) {
  if (d < 1) throw DomainError("d must be >= 1");
  if (N < 0) throw DomainError("N must be >= 0");
  if (precision < kMinPrecision) throw DomainError("precision must be >= 64 bits");
  if (!(tol > 0)) throw DomainError("tol must be positive");
  ProblemParams p;
  p.d = d;
  p.alpha_text = std::string(alpha);
  p.alpha = XReal::from_decimal(alpha, precision);
  if (!p.alpha.is_positive() || p.alpha.mid() > 2L || (p.alpha.mid() == 2L && !p.alpha.is_exact())) {
    throw DomainError("alpha must lie in (0, 2]");
  }
  if (p.alpha.upper() > 2L) {
    // 2 itself parses exactly; anything else above 2 is rejected above
    p.alpha = XReal(2, precision);
  }
  p.N = N;
  p.precision = precision;
  p.tol = tol;
  return p;
}

ProblemParams ProblemParams::with_precision(Precision p) const { return make(d, alpha_text, N, p, tol); }

ProblemParams ProblemParams::with_N(int n) const {
  ProblemParams r = *this;
  if (n < 0) throw DomainError("N must be >= 0");
  r.N = n;
  return r;
}

ProblemParams ProblemParams::with_d(int dim) const {
  ProblemParams r = *this;
  if (dim < 1) throw DomainError("d must be >= 1");
  r.d = dim;
  return r;
}

XReal ProblemParams::half_d() const { return XReal(d, precision) / 2L; }
XReal ProblemParams::beta() const { return alpha / 2L; }
XReal ProblemParams::half_d_alpha() const { return (XReal(d, precision) + alpha) / 2L; }

namespace {

XReal log2_times_alpha(const ProblemParams& p) { return p.alpha * log(XReal(2, p.precision)); }

XReal log_pi_half_d(const ProblemParams& p) { return log(XReal::pi(p.precision)) * p.half_d(); }

// alpha = 2: mu_n = 2 (n+1)(2n+d), an integer
bool alpha_is_two(const ProblemParams& p) { return p.alpha.is_exact() && p.alpha.mid() == 2L; }
XReal mu_alpha_two(int n, const ProblemParams& p) {
  return XReal(2L * (n + 1L) * (2L * n + p.d), p.precision);
}

}  // namespace

XReal mu(int n, const ProblemParams& params) {
  if (n < 0) throw DomainError("mu: n must be >= 0");
  if (alpha_is_two(params)) return mu_alpha_two(n, params);
  const XReal nn(n, params.precision);
  XReal l = log2_times_alpha(params) + log_gamma(params.beta() + nn + 1L) + log_gamma(params.half_d_alpha() + nn) -
            log_gamma(nn + 1L) - log_gamma(params.half_d() + nn);
  return exp(l);
}

XReal sigma(int n, const ProblemParams& params) {
  if (n < 0) throw DomainError("sigma: n must be >= 0");
  const XReal nn(n, params.precision);
  const XReal h = params.half_d();
  const XReal b = params.half_d_alpha();
  XReal l = log_pi_half_d(params) + log_gamma(nn + 1L) + log_gamma(h) + log_gamma(params.beta() + nn + 1L) -
            log_gamma(h + nn) - log_gamma(b + nn);
  return exp(l) / (b + 2L * static_cast<long>(n));
}

XReal pi_mn(int m, int n, const ProblemParams& params) {
  if (m < 0 || n < 0) throw DomainError("pi_mn: indices must be >= 0");
  const Precision p = params.precision;
  const XReal h = params.half_d();
  const XReal be = params.beta();
  const long mm = m, nn = n;
  XReal l = log_pi_half_d(params) + log_gamma(params.alpha + 1L) + log_gamma(h) + log_gamma(h + (mm + nn)) +
            log_gamma(be + (mm + 1)) + log_gamma(be + (nn + 1)) - log_gamma(h + mm) - log_gamma(h + nn) -
            log_gamma(h + params.alpha + (mm + nn + 1));
  XReal rg = recip_gamma(be + (mm - nn + 1)) * recip_gamma(be + (nn - mm + 1));
  if (rg.is_exact() && rg.mid().is_zero()) return XReal(p);
  return exp(l) * rg;
}

namespace {

// Shared kernel of the parallel and serial assembly paths.  Every entry is
// computed independently from the same log-gamma tables, so both orders of
// evaluation give bit-identical results.
BasisScalars compute_scalars(const ProblemParams& params, int count, int pi_size, bool parallel) {
  const Precision p = params.precision;
  const XReal h = params.half_d();
  const XReal be = params.beta();
  const XReal b = params.half_d_alpha();
  const int kmax = std::max(count, 2 * pi_size + 1);

  std::vector<XReal> lg_h(kmax + 1, XReal(p));    // lnG(h + k)
  std::vector<XReal> lg_be(kmax + 1, XReal(p));   // lnG(beta + k + 1)
  std::vector<XReal> lg_b(kmax + 1, XReal(p));    // lnG(b + k)
  std::vector<XReal> lg_ha(kmax + 1, XReal(p));   // lnG(h + alpha + k + 1)
  std::vector<XReal> lg_fac(kmax + 1, XReal(p));  // lnG(k + 1)

#pragma omp parallel for schedule(static) if (parallel)
  for (int k = 0; k <= kmax; ++k) {
    const long kk = k;
    lg_h[k] = log_gamma(h + kk);
    lg_be[k] = log_gamma(be + (kk + 1));
    lg_b[k] = log_gamma(b + kk);
    lg_ha[k] = log_gamma(h + params.alpha + (kk + 1));
    lg_fac[k] = log_gamma(XReal(kk + 1, p));
  }

  const XReal ln2a = log2_times_alpha(params);
  const XReal lnpih = log_pi_half_d(params);

  BasisScalars s;
  s.mu.assign(count, XReal(p));
  s.sigma.assign(count, XReal(p));
#pragma omp parallel for schedule(static) if (parallel)
  for (int n = 0; n < count; ++n) {
    s.mu[n] = alpha_is_two(params) ? mu_alpha_two(n, params) : exp(ln2a + lg_be[n] + lg_b[n] - lg_fac[n] - lg_h[n]);
    s.sigma[n] = exp(lnpih + lg_fac[n] + lg_h[0] + lg_be[n] - lg_h[n] - lg_b[n]) / (b + 2L * static_cast<long>(n));
  }

  // rg_k = 1 / (Gamma(beta + 1 + k) Gamma(beta + 1 - k)) by the exact ratio
  // rg_k = rg_{k-1} (beta + 1 - k) / (beta + k); hits exact zeros at alpha = 2.
  std::vector<XReal> rg(pi_size + 1, XReal(p));
  if (pi_size > 0) {
    rg[0] = exp(lg_be[0] * -2L);
    for (int k = 1; k <= pi_size; ++k) {
      XReal f = be + (1L - k);
      if (f.is_exact() && f.mid().is_zero()) {
        rg[k] = XReal(p);
      } else {
        rg[k] = rg[k - 1] * f / (be + static_cast<long>(k));
      }
    }
  }

  const XReal base = lnpih + log_gamma(params.alpha + 1L) + lg_h[0];
  s.pi = Matrix<XReal>(pi_size, pi_size, XReal(p));
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int m = 0; m < pi_size; ++m) {
    for (int n = m; n < pi_size; ++n) {
      const XReal& r = rg[n - m];
      XReal v(p);
      if (!(r.is_exact() && r.mid().is_zero())) {
        v = exp(base + lg_h[m + n] + lg_be[m] + lg_be[n] - lg_h[m] - lg_h[n] - lg_ha[m + n]) * r;
      }
      s.pi(m, n) = v;
      s.pi(n, m) = v;
    }
  }
  return s;
}

ABMatrices assemble(const ProblemParams& params, bool parallel) {
  if (params.N < 1) throw DomainError("assemble_AB: N must be >= 1");
  const int N = params.N;
  BasisScalars s = compute_scalars(params, N, N, parallel);
  ABMatrices ab;
  ab.A.reserve(N);
  const XReal h = params.half_d();
  const XReal b = params.half_d_alpha();
  const XReal pref = exp(log2_times_alpha(params) + log_pi_half_d(params) + log_gamma(h));
  for (int n = 0; n < N; ++n) {
    XReal a = s.mu[n] * s.sigma[n];
    // explicit diagonal: 2^a pi^h G(h) G(beta+n+1)^2 / ((b + 2n) G(h+n)^2)
    XReal g = exp((log_gamma(params.beta() + (static_cast<long>(n) + 1)) - log_gamma(h + static_cast<long>(n))) * 2L);
    XReal direct = pref * g / (b + 2L * static_cast<long>(n));
    if (!a.overlaps(direct)) {
      throw NumericFailure(NumericFailure::Kind::PrecisionExhausted,
                           "assemble_AB: mu_n sigma_n disagrees with the explicit A_nn formula");
    }
    ab.A.push_back(std::move(a));
  }
  ab.B = std::move(s.pi);
  return ab;
}

bool mul_overflows(std::uint64_t a, std::uint64_t b, std::uint64_t& out) { return __builtin_mul_overflow(a, b, &out); }

// C(n, k) with exact intermediate divisions; throws on 64-bit overflow.
std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    std::uint64_t t;
    if (mul_overflows(r, static_cast<std::uint64_t>(n - k + i), t)) throw DomainError("multiplicity overflows 64 bits");
    r = t / static_cast<std::uint64_t>(i);
  }
  return r;
}

}  // namespace

BasisScalars BasisScalars::compute(const ProblemParams& params, int count, int pi_size, bool parallel) {
  if (count < 0 || pi_size < 0) throw DomainError("BasisScalars: negative size");
  return compute_scalars(params, count, pi_size, parallel);
}

ABMatrices assemble_AB(const ProblemParams& params) { return assemble(params, true); }
ABMatrices assemble_AB_serial(const ProblemParams& params) { return assemble(params, false); }

std::uint64_t multiplicity(int d, int l) {
  if (d < 1 || l < 0) throw DomainError("multiplicity: need d >= 1, l >= 0");
  if (l == 0) return 1;
  if (d == 1) return l == 1 ? 1 : 0;
  if (d == 2) return 2;
  // (d+2l-2)/(d+l-2) C(d+l-2, l) = C(d+l-1, l) - C(d+l-3, l-2)
  return binomial(d + l - 1, l) - binomial(d + l - 3, l - 2);
}

}  // namespace fraclap
