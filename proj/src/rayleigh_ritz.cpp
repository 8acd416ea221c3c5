#include "fraclap/rayleigh_ritz.hpp"

#include "fraclap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fraclap {

Matrix<XReal> cholesky(const Matrix<XReal>& B) {
  const std::size_t n = B.rows();
  if (n == 0 || B.cols() != n) throw DomainError("cholesky: matrix must be square and nonempty");
  const Precision p = B(0, 0).precision();
  Matrix<XReal> L(n, n, XReal(p));
  for (std::size_t j = 0; j < n; ++j) {
    XReal d = B(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    if (!d.is_positive()) {
      throw NumericFailure(NumericFailure::Kind::NotPositiveDefinite,
                           "cholesky: pivot " + std::to_string(j) + " is not certainly positive");
    }
    L(j, j) = sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      XReal s = B(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / L(j, j);
    }
  }
  return L;
}

namespace {

constexpr int kMaxSweeps = 80;

// Frobenius norm of the strictly upper part, squared.
Real off_norm2(const Matrix<Real>& a) {
  Real s(a(0, 0).precision());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return s;
}

Real frob2(const Matrix<Real>& a) {
  Real s(a(0, 0).precision());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return s;
}

}  // namespace

SymEigen sym_eigen(const Matrix<XReal>& C, double tol) {
  const std::size_t n = C.rows();
  if (n == 0 || C.cols() != n) throw DomainError("sym_eigen: matrix must be square and nonempty");
  const Precision p = C(0, 0).precision();

  Matrix<Real> a(n, n, Real(p));
  Matrix<Real> v(n, n, Real(p));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = C(i, j).mid();
    mpfr_set_ui(v(i, i).get(), 1, MPFR_RNDN);
  }

  // stop when off(A) < eps ||A||; eps defaults to 2^(16-p)
  Real eps(p);
  if (tol > 0) {
    eps = Real(tol, p);
  } else {
    mpfr_set_ui_2exp(eps.get(), 1, 16 - static_cast<long>(p), MPFR_RNDN);
  }
  const Real target = frob2(a) * eps * eps;

  SymEigen out;
  Real theta(p), t(p), c(p), s(p), tau(p), g(p), h(p), apq(p);
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (n == 1 || off_norm2(a) <= target) break;
    for (std::size_t ip = 0; ip + 1 < n; ++ip) {
      for (std::size_t iq = ip + 1; iq < n; ++iq) {
        apq = a(ip, iq);
        if (apq.is_zero()) continue;
        theta = (a(iq, iq) - a(ip, ip)) / (apq * 2L);
        // t = sgn(theta) / (|theta| + sqrt(theta^2 + 1))
        t = Real(1L, p) / (abs(theta) + sqrt(theta * theta + 1L));
        if (theta.sign() < 0) t = -t;
        c = Real(1L, p) / sqrt(t * t + 1L);
        s = t * c;
        tau = s / (c + 1L);
        h = t * apq;
        a(ip, ip) -= h;
        a(iq, iq) += h;
        a(ip, iq) = Real(p);
        a(iq, ip) = Real(p);
        for (std::size_t r = 0; r < n; ++r) {
          if (r == ip || r == iq) continue;
          g = a(r, ip);
          h = a(r, iq);
          a(r, ip) = g - s * (h + g * tau);
          a(r, iq) = h + s * (g - h * tau);
          a(ip, r) = a(r, ip);
          a(iq, r) = a(r, iq);
        }
        for (std::size_t r = 0; r < n; ++r) {
          g = v(r, ip);
          h = v(r, iq);
          v(r, ip) = g - s * (h + g * tau);
          v(r, iq) = h + s * (g - h * tau);
        }
      }
    }
  }
  if (n > 1 && off_norm2(a) > target) {
    throw NumericFailure(NumericFailure::Kind::NonConvergence, "sym_eigen: Jacobi sweep limit reached");
  }
  out.sweeps = sweep;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  out.vectors = Matrix<Real>(n, n, Real(p));
  out.values.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t col = order[k];
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, col);

    // residual |C x - theta x| / |x| with x the computed vector, in balls
    XReal th(a(col, col));
    XReal res2(p), norm2(p);
    for (std::size_t i = 0; i < n; ++i) {
      XReal acc(p);
      for (std::size_t j = 0; j < n; ++j) acc += C(i, j) * XReal(v(j, col));
      acc -= th * XReal(v(i, col));
      res2 += sqr(acc);
      norm2 += sqr(XReal(v(i, col)));
    }
    // r <= sqrt(upper(res2) / lower(norm2)), rounded up
    Real r = res2.upper();
    Real nl = norm2.lower();
    mpfr_div(r.get(), r.get(), nl.get(), MPFR_RNDU);
    mpfr_sqrt(r.get(), r.get(), MPFR_RNDU);
    XReal enc = th;
    enc.widen(r);
    out.values.push_back(std::move(enc));
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!(out.values[k].upper() < out.values[k + 1].lower())) {
      throw NumericFailure(NumericFailure::Kind::NonConvergence,
                           "sym_eigen: eigenvalue enclosures overlap; cannot certify ordering");
    }
  }
  return out;
}

Real UpperBounds::upper(int n) const {
  if (n < 0) throw DomainError("upper: negative index");
  if (n >= size()) return Real::infinity(params.precision);
  return enclosures[static_cast<std::size_t>(n)].upper();
}

namespace {

UpperBounds solve(const ProblemParams& params, bool parallel) {
  if (params.N < 1) throw DomainError("upper_bounds: N must be >= 1");
  ABMatrices ab = parallel ? assemble_AB(params) : assemble_AB_serial(params);
  const std::size_t N = static_cast<std::size_t>(params.N);
  const Precision p = params.precision;

  std::vector<XReal> inv_sqrt_a;
  inv_sqrt_a.reserve(N);
  for (const auto& a : ab.A) inv_sqrt_a.push_back(XReal(1, p) / sqrt(a));

  Matrix<XReal> C(N, N, XReal(p));
  for (std::size_t m = 0; m < N; ++m) {
    for (std::size_t n = m; n < N; ++n) {
      XReal c = ab.B(m, n) * inv_sqrt_a[m] * inv_sqrt_a[n];
      C(m, n) = c;
      C(n, m) = c;
    }
  }

  SymEigen eig = sym_eigen(C);
  UpperBounds ub;
  ub.params = params;
  ub.enclosures.reserve(N);
  // largest nu <-> smallest lambda
  for (std::size_t k = N; k-- > 0;) {
    const XReal& nu = eig.values[k];
    if (!nu.is_positive()) {
      throw NumericFailure(NumericFailure::Kind::NotPositiveDefinite, "upper_bounds: B is not certainly positive definite");
    }
    Real lo = nu.lower();
    Real hi = nu.upper();
    Real lam_lo(p), lam_hi(p);
    mpfr_ui_div(lam_lo.get(), 1, hi.get(), MPFR_RNDD);
    mpfr_ui_div(lam_hi.get(), 1, lo.get(), MPFR_RNDU);
    ub.enclosures.push_back(hull(XReal(lam_lo), XReal(lam_hi)));
  }
  return ub;
}

}  // namespace

UpperBounds upper_bounds(const ProblemParams& params) { return solve(params, true); }
UpperBounds upper_bounds_serial(const ProblemParams& params) { return solve(params, false); }

}  // namespace fraclap
