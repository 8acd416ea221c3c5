#include "fraclap/aronszajn.hpp"

#include "fraclap/errors.hpp"
#include "fraclap/rayleigh_ritz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fraclap {

namespace {

constexpr Precision kGuardBits = 64;

Real pow2(long e, Precision p) {
  Real r(p);
  mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
  return r;
}

bool is_exact_zero(const XReal& x) { return x.is_exact() && x.mid().is_zero(); }

// pi^{d/2} / Gamma(d/2): the radial integration constant.
XReal ball_constant(int d, Precision p) {
  const XReal h = XReal(d, p) / 2L;
  return exp(log(XReal::pi(p)) * h - log_gamma(h));
}

}  // namespace

RadialPolynomial q_poly(int n, const ProblemParams& params) {
  if (n < 0) throw DomainError("q_poly: n must be >= 0");
  RadialPolynomial q = radial_poly(n, params.d, params.alpha) - radial_poly(n + 1, params.d, params.alpha);
  q.coeffs[0] = XReal(params.precision);  // both constant terms are exactly 1
  return q;
}

XReal weighted_moment(long k, const XReal& s, int d) {
  if (k < 0) throw DomainError("weighted_moment: k must be >= 0");
  if (d < 1) throw DomainError("weighted_moment: d must be >= 1");
  const Precision p = s.precision();
  if (!(s + 1L).is_positive()) throw DomainError("weighted_moment: exponent must exceed -1");
  const XReal h = XReal(d, p) / 2L;
  XReal l = log(XReal::pi(p)) * h + log_gamma(h + k) + log_gamma(s + 1L) - log_gamma(h) - log_gamma(h + k + s + 1L);
  return exp(l);
}

SeriesValue i_mn_series(int m, int n, const ProblemParams& params, double tol) {
  if (m < 0 || n < 0) throw DomainError("i_mn_series: indices must be >= 0");
  if (!(tol > 0)) throw DomainError("i_mn_series: tol must be positive");
  const Precision p = params.precision;
  const RadialPolynomial c = q_poly(m, params) * q_poly(n, params);
  const XReal h = params.half_d();
  const XReal be = params.beta();
  const int deg = c.degree();

  // tail over j > J:  sum_k |c_k| pi^h G(h+k)/G(h) (1 + J beta)^{1-h-k} / (beta (h+k-1))
  // (W(k, s) <= pi^h G(h+k) / (G(h) (s+1)^{h+k}) and an integral comparison in j)
  const double hd = params.d / 2.0;
  const double bd = be.to_double();
  std::vector<double> lead(deg + 1, 0.0);
  for (int k = 2; k <= deg; ++k) {
    const double ck = std::fabs(c.coeffs[k].to_double());
    lead[k] = ck * std::exp(std::lgamma(hd + k) - std::lgamma(hd)) * std::pow(M_PI, hd) / (bd * (hd + k - 1));
  }
  auto tail_at = [&](double J) {
    double t = 0;
    for (int k = 2; k <= deg; ++k) t += lead[k] * std::pow(1 + J * bd, 1 - hd - k);
    return t;
  };
  long J = 1;
  while (tail_at(static_cast<double>(J)) * 1.01 > tol) {
    if (J > kSeriesCap) {
      throw NumericFailure(NumericFailure::Kind::SeriesCapExceeded,
                           "i_mn_series: J > 1e6 needed; tail bound at the cap is " +
                               std::to_string(tail_at(static_cast<double>(kSeriesCap))));
    }
    J *= 2;
  }
  // shrink back to the smallest J meeting tol
  long lo = J / 2, hi = J;
  while (hi - lo > 1) {
    const long mid = (lo + hi) / 2;
    if (tail_at(static_cast<double>(mid)) * 1.01 > tol) lo = mid; else hi = mid;
  }
  J = std::max(1L, hi);
  if (J > kSeriesCap) {
    throw NumericFailure(NumericFailure::Kind::SeriesCapExceeded, "i_mn_series: J > 1e6 needed");
  }

  // certified tail at J in ball arithmetic
  XReal tail(p);
  for (int k = 2; k <= deg; ++k) {
    XReal ck = abs(c.coeffs[k]);
    XReal a = h + static_cast<long>(k);
    XReal t = ck * exp(log(XReal::pi(p)) * h + log_gamma(a) - log_gamma(h)) *
              exp(log(be * J + 1L) * (XReal(1, p) - a)) / (be * (a - 1L));
    tail += t;
  }

  XReal sum(p);
  const XReal lw0 = log(XReal::pi(p)) * h + log_gamma(h + 2L) - log_gamma(h);
  for (long j = 1; j <= J; ++j) {
    const XReal s = be * j;
    // W(2, s) directly, then W(k+1, s) = W(k, s) (h + k) / (h + k + s + 1)
    XReal w = exp(lw0 + log_gamma(s + 1L) - log_gamma(h + s + 3L));
    for (int k = 2; k <= deg; ++k) {
      sum += c.coeffs[k] * w;
      w = w * (h + static_cast<long>(k)) / (h + static_cast<long>(k) + s + 1L);
    }
  }
  SeriesValue out{sum, tail.upper(), J};
  out.value.widen(out.tail_bound);
  return out;
}

const char* to_string(IMethod m) { return m == IMethod::BetaSum ? "beta-sum" : "tanh-sinh"; }

std::optional<long> alpha_reciprocal(const ProblemParams& params) {
  const XReal x = XReal(2, params.precision) / params.alpha;
  Real q(params.precision);
  mpfr_round(q.get(), x.mid().get());
  if (q < 1L || q > 100000L) return std::nullopt;
  if (!x.contains(q)) return std::nullopt;
  if (abs(x.mid() - q) > pow2(-static_cast<long>(params.precision / 2), params.precision)) return std::nullopt;
  return mpfr_get_si(q.get(), MPFR_RNDN);
}

namespace {

// log2 of the largest |coefficient| of P_0..P_size, in doubles.
double coefficient_bits(const ProblemParams& params, int size) {
  const double h = params.d / 2.0;
  const double b = (params.d + params.alpha.to_double()) / 2.0;
  double best = 0;
  for (int n = 0; n <= size; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double l = std::lgamma(n + 1.0) - std::lgamma(n - k + 1.0) - std::lgamma(k + 1.0) + std::lgamma(b + n + k) -
                       std::lgamma(b + n) - std::lgamma(h + k) + std::lgamma(h);
      best = std::max(best, l / std::log(2.0));
    }
  }
  return best;
}

// I_{m,n} = pi^h/G(h) sum_{a,b} q_m[a] q_n[b] M_{a+b},
// M_k = sum_{i=1}^q B(h + k - 1, 1 + i/q), using 1/(v^{-1/q} - 1) = sum_{i=1}^q v^{i/q} / s.
IMatrix beta_sum_route(const ProblemParams& params, int size, long q, bool parallel) {
  const Precision p_out = params.precision + kGuardBits;
  const Precision pw = p_out + static_cast<Precision>(2.0 * coefficient_bits(params, size) + 16);
  const ProblemParams pp = params.with_precision(pw);
  const XReal h = pp.half_d();
  const int kmax = 2 * size;

  std::vector<RadialPolynomial> qs(size);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int n = 0; n < size; ++n) qs[n] = q_poly(n, pp);

  // per-i moment rows, summed afterwards in fixed order
  Matrix<XReal> rows(static_cast<std::size_t>(q), static_cast<std::size_t>(kmax + 1), XReal(pw));
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long i = 1; i <= q; ++i) {
    const XReal y = XReal(i, pw) / q + 1L;
    XReal x = h + 1L;  // k = 2
    XReal beta_xy = exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
    for (int k = 2; k <= kmax; ++k) {
      rows(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(k)) = beta_xy;
      beta_xy = beta_xy * x / (x + y);
      x = x + 1L;
    }
  }
  std::vector<XReal> M(kmax + 1, XReal(pw));
  for (int k = 2; k <= kmax; ++k) {
    for (long i = 0; i < q; ++i) M[k] += rows(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
  }

  const XReal C0 = ball_constant(params.d, pw);
  IMatrix out;
  out.method = IMethod::BetaSum;
  out.entries = Matrix<XReal>(size, size, XReal(p_out));
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int n = 0; n < size; ++n) {
    const auto& qn = qs[n].coeffs;
    // T[a] = sum_b M[a+b] q_n[b]
    std::vector<XReal> T(size + 1, XReal(pw));
    for (int a = 1; a <= size; ++a)
      for (std::size_t b = 1; b < qn.size(); ++b) T[a] += M[a + b] * qn[b];
    for (int m = 0; m <= n; ++m) {
      const auto& qm = qs[m].coeffs;
      XReal acc(pw);
      for (std::size_t a = 1; a < qm.size(); ++a) acc += qm[a] * T[a];
      XReal v = (C0 * acc).with_precision(p_out);
      out.entries(m, n) = v;
      out.entries(n, m) = v;
    }
  }
  return out;
}

// Double-exponential rule on [0,1]: s = 1/(1+e^{-u}), u = pi sinh t, ds = pi cosh t s (1-s) dt.
IMatrix tanh_sinh_route(const ProblemParams& params, int size, bool parallel) {
  const Precision p_out = params.precision + kGuardBits;
  const Precision pw = p_out;
  const int d = params.d;
  const Real alpha(params.alpha.mid(), pw);
  const Real beta = alpha / 2L;
  const Real hm1 = Real(static_cast<long>(d), pw) / 2L - 1L;
  const double t_max = std::asinh((static_cast<double>(pw) + 30.0) * std::log(2.0) / M_PI);
  const std::size_t npairs = static_cast<std::size_t>(size) * (size + 1) / 2;
  const Real pi = Real::pi(pw);
  constexpr int kFirstLevel = 3;
  constexpr int kMaxLevel = 14;
  constexpr std::size_t kChunk = 16;

  auto node = [&](const Real& t, std::vector<Real>& acc, std::vector<Real>& P) {
    Real u = pi * Real(0.0, pw);
    mpfr_sinh(u.get(), t.get(), MPFR_RNDN);
    u *= pi;
    Real ch(pw);
    mpfr_cosh(ch.get(), t.get(), MPFR_RNDN);
    // log s = -log1p(e^{-u}), log v = -log1p(e^{u})
    Real e(pw), ls(pw), lv(pw);
    mpfr_neg(e.get(), u.get(), MPFR_RNDN);
    mpfr_exp(e.get(), e.get(), MPFR_RNDN);
    mpfr_log1p(ls.get(), e.get(), MPFR_RNDN);
    mpfr_neg(ls.get(), ls.get(), MPFR_RNDN);
    mpfr_exp(e.get(), u.get(), MPFR_RNDN);
    mpfr_log1p(lv.get(), e.get(), MPFR_RNDN);
    mpfr_neg(lv.get(), lv.get(), MPFR_RNDN);
    const Real s = exp(ls);
    // K = v^beta / (1 - v^beta) = v^beta / -expm1(beta log v)
    Real bl = beta * lv;
    Real den(pw);
    mpfr_expm1(den.get(), bl.get(), MPFR_RNDN);
    mpfr_neg(den.get(), den.get(), MPFR_RNDN);
    if (den.is_zero()) return;
    // weight = pi cosh t s v s^{h-1} K = pi cosh t exp(h ls + lv + beta lv) / den
    Real w = pi * ch * exp(ls * (hm1 + 1L) + lv + bl) / den;
    radial_values(size + 1, d, alpha, s, P);
    std::size_t idx = 0;
    for (int n = 0; n < size; ++n) {
      const Real qn = P[n] - P[n + 1];
      const Real wq = w * qn;
      for (int m = 0; m <= n; ++m) acc[idx++] += wq * (P[m] - P[m + 1]);
    }
  };

  std::vector<Real> T(npairs, Real(pw));
  std::vector<Real> diff(npairs, Real(pw));
  bool converged = false;
  for (int level = 0; level <= kMaxLevel - kFirstLevel; ++level) {
    const Real step = pow2(-(kFirstLevel + level), pw);
    const long kmax = static_cast<long>(std::floor(t_max * std::ldexp(1.0, kFirstLevel + level)));
    std::vector<long> ks;
    for (long k = -kmax; k <= kmax; ++k) {
      if (level > 0 && (k % 2 == 0)) continue;
      ks.push_back(k);
    }
    const std::size_t nchunks = (ks.size() + kChunk - 1) / kChunk;
    std::vector<std::vector<Real>> partial(nchunks);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::size_t c = 0; c < nchunks; ++c) {
      std::vector<Real> acc(npairs, Real(pw));
      std::vector<Real> P;
      for (std::size_t j = c * kChunk; j < std::min(ks.size(), (c + 1) * kChunk); ++j) {
        Real t(static_cast<long>(ks[j]), pw);
        t *= step;
        node(t, acc, P);
      }
      partial[c] = std::move(acc);
    }
    std::vector<Real> fresh(npairs, Real(pw));
    for (std::size_t c = 0; c < nchunks; ++c)
      for (std::size_t i = 0; i < npairs; ++i) fresh[i] += partial[c][i];

    Real scale(pw), worst(pw);
    for (std::size_t i = 0; i < npairs; ++i) {
      Real next = level == 0 ? fresh[i] * step : T[i] / 2L + fresh[i] * step;
      diff[i] = abs(next - T[i]);
      T[i] = std::move(next);
      scale = max(scale, abs(T[i]));
      worst = max(worst, diff[i]);
    }
    if (level >= 2 && worst <= scale * pow2(-static_cast<long>(params.precision) - 8, pw)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NumericFailure(NumericFailure::Kind::NonConvergence, "tanh-sinh quadrature for I did not converge");
  }

  const XReal C0 = ball_constant(d, pw);
  IMatrix out;
  out.method = IMethod::TanhSinh;
  out.entries = Matrix<XReal>(size, size, XReal(p_out));
  Real worst(kRadiusPrecision);
  Real scale(pw);
  for (const auto& t : T) scale = max(scale, abs(t));
  // alpha uncertainty (nonzero only for non-dyadic decimals): crude sensitivity widening
  Real alpha_term(kRadiusPrecision);
  if (!params.alpha.is_exact()) {
    alpha_term = Real(params.alpha.rad(), kRadiusPrecision) * scale * 1e3 / (alpha * alpha);
  }
  std::size_t idx = 0;
  for (int n = 0; n < size; ++n) {
    for (int m = 0; m <= n; ++m, ++idx) {
      XReal v = C0 * XReal(T[idx]);
      // level difference + rounding floor
      v.widen(diff[idx] * C0.mid());
      v.widen(scale * pow2(16 - static_cast<long>(pw), pw) * C0.mid());
      v.widen(alpha_term * C0.mid());
      worst = max(worst, Real(diff[idx], kRadiusPrecision));
      out.entries(m, n) = v;
      out.entries(n, m) = v;
    }
  }
  out.error_estimate = worst;
  return out;
}

}  // namespace

IMatrix imatrix(const ProblemParams& params, int size, bool parallel) {
  if (size < 0) throw DomainError("imatrix: size must be >= 0");
  if (size == 0) return IMatrix{};
  if (auto q = alpha_reciprocal(params)) return beta_sum_route(params, size, *q, parallel);
  return tanh_sinh_route(params, size, parallel);
}

IMatrix imatrix_serial(const ProblemParams& params, int size) { return imatrix(params, size, false); }

IMatrix imatrix_quadrature(const ProblemParams& params, int size, bool parallel) {
  if (size <= 0) return IMatrix{};
  return tanh_sinh_route(params, size, parallel);
}

XReal i_mn(int m, int n, const ProblemParams& params) {
  if (m < 0 || n < 0) throw DomainError("i_mn: indices must be >= 0");
  return imatrix(params, std::max(m, n) + 1).entries(m, n).with_precision(params.precision);
}

XReal wa_entry(int m, int n, const XReal& lambda, const BasisScalars& scalars, const IMatrix& I) {
  const int N = I.size();
  if (m < 0 || n < 0 || m >= N || n >= N) throw DomainError("wa_entry: index out of range");
  if (static_cast<int>(scalars.mu.size()) < N + 1) throw DomainError("wa_entry: need mu_0..mu_N");
  const Precision p = lambda.precision();
  const Real tol = pow2(-static_cast<long>(p / 2), p);
  auto pole_term = [&](int k) {
    XReal gap = scalars.mu[k] - lambda;
    if (abs(gap.mid()) <= tol * max(Real(1L, p), abs(scalars.mu[k].mid())) || gap.contains_zero()) {
      throw NumericFailure(NumericFailure::Kind::PoleProximity, "wa_entry: lambda is at a pole mu_" + std::to_string(k));
    }
    return lambda * scalars.sigma[k] / gap;
  };
  XReal w = I.entries(m, n);
  if (m == n) w += pole_term(n);
  if (m + 1 == n) w -= pole_term(n);
  if (m == n + 1) w -= pole_term(m);
  if (m == n) w += pole_term(n + 1);
  return w;
}

namespace {

// (2N+1) x (2N+1) bordered matrix [[I, E^T S], [-E, D]].
template <class T, class Make>
Matrix<T> bordered(const T& lambda, const BasisScalars& scalars, const IMatrix& I, Make make) {
  const std::size_t N = static_cast<std::size_t>(I.size());
  const std::size_t n = 2 * N + 1;
  Matrix<T> M(n, n, make(0L));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) M(i, j) = make(I.entries(i, j));
  for (std::size_t k = 0; k <= N; ++k) {
    const T sk = lambda * make(scalars.sigma[k]);
    // E_{k,m} = delta_{k,m} - delta_{k,m+1}
    if (k < N) {
      M(k, N + k) = sk;                       // (E^T S)_{m=k, k}
      M(N + k, k) = make(-1L);                // -E_{k,k}
    }
    if (k >= 1) {
      M(k - 1, N + k) = -sk;                  // (E^T S)_{m=k-1, k}
      M(N + k, k - 1) = make(1L);             // -E_{k,k-1}
    }
    M(N + k, N + k) = make(scalars.mu[k]) - lambda;
  }
  return M;
}

Real det_mid(Matrix<Real> a) {
  const std::size_t n = a.rows();
  const Precision p = a(0, 0).precision();
  Real det(1L, p);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(a(r, c)) > abs(a(piv, c))) piv = r;
    if (a(piv, c).is_zero()) return Real(p);
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      const Real f = a(r, c) / a(c, c);
      for (std::size_t j = c + 1; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

XReal det_ball(Matrix<XReal> a) {
  const std::size_t n = a.rows();
  const Precision p = a(0, 0).precision();
  XReal det(1, p);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(a(r, c).mid()) > abs(a(piv, c).mid())) piv = r;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
      det = -det;
    }
    det *= a(c, c);
    if (c + 1 == n) break;
    if (a(c, c).contains_zero()) {
      throw NumericFailure(NumericFailure::Kind::UncertifiedSign, "w_eval: pivot ball contains zero");
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_exact_zero(a(r, c))) continue;
      const XReal f = a(r, c) / a(c, c);
      for (std::size_t j = c + 1; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

}  // namespace

XReal w_eval(const XReal& lambda, const BasisScalars& scalars, const IMatrix& I) {
  if (static_cast<int>(scalars.mu.size()) < I.size() + 1) throw DomainError("w_eval: need mu_0..mu_N");
  if (I.size() == 0) return scalars.mu[0] - lambda;
  const Precision p = std::max(lambda.precision(), I.entries(0, 0).precision());
  auto make = [p](const auto& v) {
    using V = std::decay_t<decltype(v)>;
    if constexpr (std::is_same_v<V, XReal>) {
      return v;
    } else {
      return XReal(static_cast<long>(v), p);
    }
  };
  return det_ball(bordered<XReal>(lambda, scalars, I, make));
}

Real w_eval_mid(const Real& lambda, const BasisScalars& scalars, const IMatrix& I) {
  if (static_cast<int>(scalars.mu.size()) < I.size() + 1) throw DomainError("w_eval: need mu_0..mu_N");
  if (I.size() == 0) return scalars.mu[0].mid() - lambda;
  const Precision p = std::max(lambda.precision(), I.entries(0, 0).precision());
  auto make = [p](const auto& v) {
    using V = std::decay_t<decltype(v)>;
    if constexpr (std::is_same_v<V, XReal>) {
      return Real(v.mid(), p);
    } else {
      return Real(static_cast<long>(v), p);
    }
  };
  return det_mid(bordered<Real>(Real(lambda, p), scalars, I, make));
}

std::vector<XReal> w_roots_pencil(const BasisScalars& scalars, const IMatrix& I) {
  const std::size_t N = static_cast<std::size_t>(I.size());
  if (N == 0) throw DomainError("w_roots: N must be >= 1");
  if (scalars.mu.size() < N + 1) throw DomainError("w_roots: need mu_0..mu_N");
  const Precision p = I.entries(0, 0).precision();

  // Y = L^{-1} E^T, column k of E^T is e_k - e_{k-1}
  Matrix<XReal> L = cholesky(I.entries);
  Matrix<XReal> Y(N, N + 1, XReal(p));
  for (std::size_t k = 0; k <= N; ++k) {
    for (std::size_t i = 0; i < N; ++i) {
      XReal r(p);
      if (i == k) r += XReal(1, p);
      if (i + 1 == k) r -= XReal(1, p);
      for (std::size_t j = 0; j < i; ++j) r -= L(i, j) * Y(j, k);
      Y(i, k) = r / L(i, i);
    }
  }
  std::vector<XReal> rs, rm;
  for (std::size_t k = 0; k <= N; ++k) {
    rs.push_back(sqrt(scalars.sigma[k]));
    rm.push_back(XReal(1, p) / sqrt(scalars.mu[k]));
  }
  Matrix<XReal> K(N + 1, N + 1, XReal(p));
  for (std::size_t a = 0; a <= N; ++a) {
    for (std::size_t b = a; b <= N; ++b) {
      XReal g(p);
      for (std::size_t i = 0; i < N; ++i) g += Y(i, a) * Y(i, b);
      XReal h = -(rs[a] * rs[b] * g);
      if (a == b) h += XReal(1, p);
      XReal v = h * rm[a] * rm[b];
      K(a, b) = v;
      K(b, a) = v;
    }
  }
  SymEigen eig = sym_eigen(K);
  std::vector<XReal> roots;
  for (std::size_t k = N + 1; k-- > 0;) {
    const XReal& nu = eig.values[k];
    if (!nu.is_positive()) {
      throw NumericFailure(NumericFailure::Kind::RootCountMismatch, "w_roots: pencil has a nonpositive eigenvalue");
    }
    Real lo = nu.lower(), hi = nu.upper();
    Real a(p), b(p);
    mpfr_ui_div(a.get(), 1, hi.get(), MPFR_RNDD);
    mpfr_ui_div(b.get(), 1, lo.get(), MPFR_RNDU);
    roots.push_back(hull(XReal(a), XReal(b)));
  }
  return roots;
}

std::vector<XReal> w_roots_scan(const BasisScalars& scalars, const IMatrix& I) {
  const int N = I.size();
  if (N == 0) throw DomainError("w_roots: N must be >= 1");
  const Precision p = I.entries(0, 0).precision();
  auto w = [&](const Real& x) { return w_eval_mid(x, scalars, I); };

  // breakpoints 0, mu_0..mu_{N+1}, Lambda_hi; cells subdivided, Lambda_hi pushed out on alternate passes
  std::vector<Real> breaks{Real(p)};
  const int top = std::min<int>(N + 1, static_cast<int>(scalars.mu.size()) - 1);
  for (int k = 0; k <= top; ++k) breaks.push_back(Real(scalars.mu[k].mid(), p));
  breaks.push_back(breaks.back() * 2L);

  std::vector<std::pair<Real, Real>> brackets;
  int subdiv = 8;
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::vector<Real> grid;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      for (int j = 0; j < subdiv; ++j)
        grid.push_back(breaks[i] + (breaks[i + 1] - breaks[i]) * static_cast<long>(j) / static_cast<long>(subdiv));
    }
    grid.push_back(breaks.back());
    std::vector<Real> vals(grid.size(), Real(p));
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = w(grid[i]);
    brackets.clear();
    std::size_t last = 0;  // last grid point with a nonzero value
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (vals[i].is_zero()) continue;
      if (vals[last].sign() * vals[i].sign() < 0) brackets.emplace_back(grid[last], grid[i]);
      last = i;
    }
    if (static_cast<int>(brackets.size()) == N + 1) break;
    if (static_cast<int>(brackets.size()) > N + 1) {
      throw NumericFailure(NumericFailure::Kind::RootCountMismatch,
                           "w_roots: more sign changes than the degree allows (" + std::to_string(brackets.size()) + ")");
    }
    subdiv *= 2;
    if (attempt % 2 == 1) breaks.push_back(breaks.back() * 2L);
  }
  if (static_cast<int>(brackets.size()) != N + 1) {
    throw NumericFailure(NumericFailure::Kind::RootCountMismatch,
                         "w_roots: found " + std::to_string(brackets.size()) + " sign changes, expected " +
                             std::to_string(N + 1));
  }

  std::vector<XReal> roots;
  for (auto& [a, b] : brackets) {
    // Illinois on midpoints
    Real fa = w(a), fb = w(b);
    int side = 0;
    const Real target = pow2(-static_cast<long>(p / 2), p);
    for (int it = 0; it < 400 && b - a > target * max(Real(1L, p), abs(b)); ++it) {
      Real c = (a * fb - b * fa) / (fb - fa);
      if (!(c > a && c < b)) c = (a + b) / 2L;
      Real fc = w(c);
      if (fc.is_zero()) {
        a = c;
        b = c;
        break;
      }
      if (fc.sign() == fb.sign()) {
        b = c;
        fb = fc;
        if (side == -1) fa = fa / 2L;
        side = -1;
      } else {
        a = c;
        fa = fc;
        if (side == 1) fb = fb / 2L;
        side = 1;
      }
    }
    // certify: signs at the endpoints must be opposite in ball arithmetic
    Real width = max(b - a, target * max(Real(1L, p), abs(b)));
    int sa = 0, sb = 0;
    for (int tries = 0; tries < 60; ++tries) {
      try {
        sa = w_eval(XReal(a), scalars, I).certified_sign();
      } catch (const NumericFailure&) {
        sa = 0;
      }
      try {
        sb = w_eval(XReal(b), scalars, I).certified_sign();
      } catch (const NumericFailure&) {
        sb = 0;
      }
      if (sa != 0 && sb != 0 && sa != sb) break;
      if (sa == 0) a -= width;
      if (sb == 0) b += width;
      width = width * 2L;
    }
    if (!(sa != 0 && sb != 0 && sa != sb)) {
      throw NumericFailure(NumericFailure::Kind::UncertifiedSign, "w_roots: could not certify a sign change");
    }
    roots.push_back(hull(XReal(a), XReal(b)));
  }
  for (std::size_t k = 0; k + 1 < roots.size(); ++k) {
    if (!(roots[k].upper() < roots[k + 1].lower())) {
      throw NumericFailure(NumericFailure::Kind::RootCountMismatch, "w_roots: brackets overlap");
    }
  }
  return roots;
}

std::vector<XReal> w_roots(const BasisScalars& scalars, const IMatrix& I) {
  try {
    return w_roots_pencil(scalars, I);
  } catch (const NumericFailure&) {
    return w_roots_scan(scalars, I);
  }
}

Real LowerBounds::lower(int n) const {
  if (n < 0 || n >= size()) throw DomainError("lower: index out of range");
  return values[static_cast<std::size_t>(n)].lower();
}

namespace {

LowerBounds solve_lower(const ProblemParams& params, int length, bool parallel) {
  if (length < 1) throw DomainError("lower_bounds: length must be >= 1");
  const int N = params.N;
  LowerBounds lb;
  lb.params = params;
  BasisScalars s = BasisScalars::compute(params, N + length + 1, 0, parallel);
  std::vector<std::pair<XReal, int>> items;
  if (N > 0) {
    IMatrix I = imatrix(params, N, parallel);
    lb.roots = w_roots(s, I);
    for (const auto& r : lb.roots) items.emplace_back(r, -1);
  }
  for (int n = N + 1; n < N + length + 1; ++n) items.emplace_back(s.mu[n], n);
  if (N == 0) items.insert(items.begin(), {s.mu[0], 0});
  // the n-th smallest lower endpoint bounds the n-th smallest true value
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& x, const auto& y) { return x.first.lower() < y.first.lower(); });
  for (int n = 0; n < length; ++n) {
    lb.values.push_back(items[n].first);
    lb.from_mu.push_back(items[n].second);
  }
  return lb;
}

}  // namespace

LowerBounds lower_bounds(const ProblemParams& params, int length) { return solve_lower(params, length, true); }
LowerBounds lower_bounds_serial(const ProblemParams& params, int length) { return solve_lower(params, length, false); }

}  // namespace fraclap
