/*
 * Copyright 2026 The tridenom authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "tridenom/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tridenom::elliptic {

namespace {

constexpr double kPoleFloor = 1e-300;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

/// Real positive nome needed wherever sqrt(q) appears.
double real_q(const EllipticContext& ctx, const char* who) {
  if (ctx.q.imag() != 0.0 || ctx.q.real() <= 0.0)
    throw std::domain_error(std::string(who) + ": needs real q in (0, 1)");
  return ctx.q.real();
}

Complex cpow_int(Complex base, long e) {
  if (e < 0) return 1.0 / cpow_int(base, -e);
  Complex r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace

int derive_depth(double abs_q, double tol) {
  require(abs_q > 0.0 && abs_q < 1.0, "derive_depth: need 0 < |q| < 1");
  require(tol > 0.0, "derive_depth: tol must be positive");
  const double threshold = (1.0 - abs_q) * std::min(tol * 1e-3, 1e-18);
  int depth = 1;
  double p = abs_q;
  while (p >= threshold && depth < 20000) {
    p *= abs_q;
    ++depth;
  }
  return depth;
}

EllipticContext make_context(Complex q, double tol, std::uint64_t seed) {
  EllipticContext ctx;
  ctx.q = q;
  ctx.tol = tol;
  ctx.seed = seed;
  ctx.depth = derive_depth(std::abs(q), tol);
  return ctx;
}

Complex qpochhammer(Complex x, const EllipticContext& ctx) {
  Complex v = 1.0, p = 1.0;
  for (int j = 0; j < ctx.depth; ++j) {
    v *= 1.0 - x * p;
    p *= ctx.q;
  }
  return v;
}

Complex theta(Complex x, const EllipticContext& ctx) {
  if (x == Complex(0.0)) throw std::domain_error("theta: x must be nonzero");
  Complex v = 1.0, p = 1.0;
  const Complex qinv_x = ctx.q / x;
  for (int j = 0; j < ctx.depth; ++j) {
    v *= (1.0 - x * p) * (1.0 - qinv_x * p);
    p *= ctx.q;
  }
  return v;
}

Complex theta_logderiv(Complex x, const EllipticContext& ctx) {
  if (x == Complex(0.0)) throw std::domain_error("theta_logderiv: x must be nonzero");
  Complex s = 0.0, p = 1.0;
  const Complex qinv_x = ctx.q / x;
  for (int j = 0; j < ctx.depth; ++j) {
    const Complex a = 1.0 - x * p;
    const Complex b = 1.0 - qinv_x * p;
    if (std::abs(a) < kPoleFloor || std::abs(b) < kPoleFloor)
      throw PoleError("theta_logderiv: product factor vanishes");
    s += -x * p / a + qinv_x * p / b;
    p *= ctx.q;
  }
  return s;
}

Complex theta_deriv_at_one(const EllipticContext& ctx) {
  const Complex p = qpochhammer(ctx.q, ctx);
  return -p * p;
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

void require_skew(const SkewMatrix& a) {
  double scale = 0.0;
  for (const Complex& e : a.entries) scale = std::max(scale, std::abs(e));
  const double bound = 1e-12 * std::max(scale, 1e-30);
  for (int i = 0; i < a.dim; ++i) {
    if (std::abs(a.at(i, i)) > bound)
      throw std::invalid_argument("require_skew: nonzero diagonal");
    for (int j = i + 1; j < a.dim; ++j)
      if (std::abs(a.at(i, j) + a.at(j, i)) > bound)
        throw std::invalid_argument("require_skew: not skew-symmetric");
  }
}

namespace {

Complex pfaffian_rec(const SkewMatrix& a, std::vector<int>& idx) {
  const std::size_t r = idx.size();
  if (r == 0) return 1.0;
  Complex sum = 0.0;
  const int i0 = idx[0];
  std::vector<int> rest(r - 2);
  for (std::size_t j = 1; j < r; ++j) {
    const int ij = idx[j];
    std::size_t w = 0;
    for (std::size_t t = 1; t < r; ++t)
      if (t != j) rest[w++] = idx[t];
    const Complex term = a.at(i0, ij) * pfaffian_rec(a, rest);
    sum += (j % 2 == 1) ? term : -term;
  }
  return sum;
}

}  // namespace

Complex pfaffian(const SkewMatrix& a) {
  require(a.dim >= 0 && a.dim <= 12, "pfaffian: recursive expansion handles dim <= 12");
  require_skew(a);
  const SkewMatrix* work = &a;
  SkewMatrix bordered;
  if (a.dim % 2 == 1) {
    // Odd dimension: border with a column of ones and a row of minus ones.
    bordered = SkewMatrix::zero(a.dim + 1);
    for (int i = 0; i < a.dim; ++i) {
      for (int j = 0; j < a.dim; ++j) bordered.at(i, j) = a.at(i, j);
      bordered.at(i, a.dim) = 1.0;
      bordered.at(a.dim, i) = -1.0;
    }
    work = &bordered;
  }
  std::vector<int> idx(work->dim);
  for (int i = 0; i < work->dim; ++i) idx[i] = i;
  return pfaffian_rec(*work, idx);
}

Complex determinant(std::vector<Complex> a, int n) {
  require(n >= 0 && static_cast<std::size_t>(n) * n == a.size(),
          "determinant: matrix must be n x n");
  Complex det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (std::abs(a[piv * n + c]) == 0.0) return 0.0;
    if (piv != c) {
      for (int k = c; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      det = -det;
    }
    det *= a[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      const Complex f = a[r * n + c] / a[c * n + c];
      for (int k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
    }
  }
  return det;
}

Complex determinant(const SkewMatrix& a) { return determinant(a.entries, a.dim); }

Residual residual_of(Complex lhs, Complex rhs) {
  Residual r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.rel = std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + kPoleFloor);
  return r;
}

// ---------------------------------------------------------------------------
// Identity kernels
// ---------------------------------------------------------------------------

namespace {

// Denominator guard. Below 1e-6 a theta factor no longer carries enough
// relative precision for the 1e-9 residual targets.
Complex theta_checked(Complex x, const EllipticContext& ctx, const char* who) {
  const Complex v = theta(x, ctx);
  if (std::abs(v) < 1e-6) throw PoleError(std::string(who) + ": theta factor ~ 0");
  return v;
}

Complex product_all(std::span<const Complex> xs) {
  Complex p = 1.0;
  for (const Complex& x : xs) p *= x;
  return p;
}

}  // namespace

Residual verify_frobenius(Complex t, std::span<const Complex> xs,
                          std::span<const Complex> ys, const EllipticContext& ctx) {
  const int n = static_cast<int>(xs.size());
  require(n >= 1 && ys.size() == xs.size(), "verify_frobenius: need n >= 1, |xs| == |ys|");
  const Complex th_t = theta_checked(t, ctx, "verify_frobenius");

  std::vector<Complex> mat(static_cast<std::size_t>(n) * n);
  Complex denom = th_t;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex th_xy = theta_checked(xs[i] * ys[j], ctx, "verify_frobenius");
      mat[static_cast<std::size_t>(i) * n + j] =
          theta(t * xs[i] * ys[j], ctx) / (th_t * th_xy);
      denom *= th_xy;
    }
  const Complex lhs = determinant(std::move(mat), n);

  Complex rhs = theta(t * product_all(xs) * product_all(ys), ctx);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      rhs *= xs[j] * ys[j] * theta(xs[i] / xs[j], ctx) * theta(ys[i] / ys[j], ctx);
  rhs /= denom;
  return residual_of(lhs, rhs);
}

Residual verify_fs(std::span<const Complex> xs, std::span<const Complex> ys,
                   const EllipticContext& ctx) {
  const int n = static_cast<int>(xs.size());
  require(n >= 1 && ys.size() == xs.size(), "verify_fs: need n >= 1, |xs| == |ys|");
  const Complex dt1 = theta_deriv_at_one(ctx);

  const int nn = n + 1;
  std::vector<Complex> mat(static_cast<std::size_t>(nn) * nn, Complex(0.0));
  Complex denom = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex th_xy = theta_checked(xs[i] * ys[j], ctx, "verify_fs");
      mat[static_cast<std::size_t>(i) * nn + j] =
          theta_logderiv(xs[i] * ys[j], ctx) / dt1;
      denom *= th_xy;
    }
    mat[static_cast<std::size_t>(i) * nn + n] = 1.0;
    mat[static_cast<std::size_t>(n) * nn + i] = -1.0;
  }
  const Complex lhs = determinant(std::move(mat), nn);

  Complex rhs = theta(product_all(xs) * product_all(ys), ctx);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      rhs *= xs[j] * ys[j] * theta(xs[i] / xs[j], ctx) * theta(ys[i] / ys[j], ctx);
  rhs /= denom;
  return residual_of(lhs, rhs);
}

Residual verify_ep(std::span<const Complex> xs, const EllipticContext& ctx,
                   bool flip_sign) {
  const int n = static_cast<int>(xs.size());
  require(n >= 2 && n % 2 == 0, "verify_ep: need 2m points");
  const double q = real_q(ctx, "verify_ep");
  const double sq = std::sqrt(q);
  const int m = n / 2;

  SkewMatrix a = SkewMatrix::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Complex u = xs[j] / xs[i];
      a.at(i, j) = theta(u, ctx) / (xs[j] * theta_checked(sq * u, ctx, "verify_ep"));
    }
  const Complex lhs = pfaffian(a);

  Complex rhs = std::pow(q, 0.25 * m * (m - 1));
  for (int i = 0; i < n; ++i) rhs *= cpow_int(xs[i], m - (i + 1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Complex u = xs[j] / xs[i];
      rhs *= theta(u, ctx) / theta_checked(sq * u, ctx, "verify_ep");
    }
  return residual_of(lhs, flip_sign ? -rhs : rhs);
}

Residual verify_op(std::span<const Complex> xs, const EllipticContext& ctx,
                   bool flip_sign) {
  const int n = static_cast<int>(xs.size());
  require(n >= 3 && n % 2 == 1, "verify_op: need 2m+1 points");
  const double q = real_q(ctx, "verify_op");
  const double sq = std::sqrt(q);
  const int m = (n - 1) / 2;

  SkewMatrix a = SkewMatrix::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      // x_i theta'(sqrt(q) x_i/x_j) / (x_j theta(sqrt(q) x_i/x_j))
      a.at(i, j) = theta_logderiv(sq * xs[i] / xs[j], ctx) / sq;
    }
  const Complex lhs = pfaffian(a);

  Complex rhs = std::pow(q, 0.25 * m * (m - 1));
  const Complex qp = qpochhammer(q, ctx), sqp = qpochhammer(sq, ctx);
  rhs *= cpow_int(qp / sqp, 2 * m);
  for (int i = 0; i < n; ++i) rhs *= cpow_int(xs[i], m + 1 - (i + 1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Complex u = xs[j] / xs[i];
      rhs *= theta(u, ctx) / theta_checked(sq * u, ctx, "verify_op");
    }
  return residual_of(lhs, flip_sign ? -rhs : rhs);
}

Residual verify_schur(std::span<const Complex> xs, const EllipticContext& ctx) {
  const int n = static_cast<int>(xs.size());
  require(n >= 2 && n % 2 == 0, "verify_schur: need 2m points");
  SkewMatrix a = SkewMatrix::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Complex u = xs[j] / xs[i];
      a.at(i, j) = theta(u, ctx) / theta_checked(-u, ctx, "verify_schur");
    }
  const Complex lhs = pfaffian(a);
  Complex rhs = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) rhs *= a.at(i, j);
  return residual_of(lhs, rhs);
}

Residual verify_okada(std::span<const Complex> xs, Complex z, Complex w,
                      const EllipticContext& ctx) {
  const int n = static_cast<int>(xs.size());
  require(n >= 2 && n % 2 == 0, "verify_okada: need 2m points");
  const Complex th_z = theta_checked(z, ctx, "verify_okada");
  const Complex th_w = theta_checked(w, ctx, "verify_okada");

  SkewMatrix a = SkewMatrix::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Complex xij = xs[i] * xs[j];
      a.at(i, j) = xs[i] * theta(xs[j] / xs[i], ctx) * theta(z * xij, ctx) *
                   theta(w * xij, ctx) /
                   (theta_checked(xij, ctx, "verify_okada") * th_z * th_w);
    }
  const Complex lhs = pfaffian(a);

  const Complex big_x = product_all(xs);
  Complex rhs = theta(z * big_x, ctx) * theta(w * big_x, ctx) / (th_z * th_w);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      rhs *= xs[i] * theta(xs[j] / xs[i], ctx) /
             theta_checked(xs[i] * xs[j], ctx, "verify_okada");
  return residual_of(lhs, rhs);
}

Residual verify_rains(std::span<const Complex> xs, const EllipticContext& ctx) {
  const int n = static_cast<int>(xs.size());
  require(n >= 2 && n % 2 == 0, "verify_rains: need 2m points");
  const double q = real_q(ctx, "verify_rains");
  const double sq = std::sqrt(q);
  const int m = n / 2;

  SkewMatrix a = SkewMatrix::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Complex xij = xs[i] * xs[j], u = xs[j] / xs[i];
      a.at(i, j) = theta(xij, ctx) * theta(u, ctx) /
                   (xs[j] * theta_checked(sq * xij, ctx, "verify_rains") *
                    theta_checked(sq * u, ctx, "verify_rains"));
    }
  const Complex lhs = pfaffian(a);

  Complex rhs = std::pow(q, 0.5 * m * (m - 1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) rhs *= a.at(i, j);
  return residual_of(lhs, rhs);
}

Residual verify_rains_dual(std::span<const Complex> xs, const EllipticContext& ctx) {
  const int n = static_cast<int>(xs.size());
  require(n >= 2 && n % 2 == 0, "verify_rains_dual: need 2m points");
  SkewMatrix a = SkewMatrix::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Complex xij = xs[i] * xs[j], u = xs[j] / xs[i];
      a.at(i, j) = theta(xij, ctx) * theta(u, ctx) /
                   (theta_checked(-xij, ctx, "verify_rains_dual") *
                    theta_checked(-u, ctx, "verify_rains_dual"));
    }
  const Complex lhs = pfaffian(a);
  Complex rhs = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) rhs *= a.at(i, j);
  return residual_of(lhs, rhs);
}

Residual verify_modular(double x, double h, double tol) {
  require(x > 0.0 && x < 1.0, "verify_modular: x must lie in (0, 1)");
  require(h >= 0.5 && h <= 2.0, "verify_modular: h must lie in [0.5, 2]");
  const double pi = std::numbers::pi;
  const double q = std::exp(-2.0 * pi * h);
  const double qt = std::exp(-2.0 * pi / h);
  const EllipticContext cq = make_context(q, tol);
  const EllipticContext cqt = make_context(qt, tol);

  const Complex lhs = theta(std::polar(1.0, 2.0 * pi * x), cqt);
  const Complex factor = Complex(0.0, -1.0) * std::sqrt(h) *
                         (std::pow(q, 0.125) * qpochhammer(q, cq)) /
                         (std::pow(qt, 0.125) * qpochhammer(qt, cqt));
  const Complex rhs = factor * std::polar(1.0, pi * x) *
                      std::pow(q, 0.5 * x * (x - 1.0)) * theta(std::pow(q, x), cq);
  return residual_of(lhs, rhs);
}

Residual verify_el(Complex x, const EllipticContext& ctx) {
  const double q = real_q(ctx, "verify_el");
  const double sq = std::sqrt(q);
  const double ax = std::abs(x);
  if (!(ax > sq && ax < 1.0 / sq))
    throw AnnulusError("verify_el: need sqrt(q) < |x| < 1/sqrt(q)");

  const Complex lhs = theta(x, ctx) / (x * theta_checked(sq * x, ctx, "verify_el"));

  // Bilateral sum, truncated where both geometric tails drop below 1e-16 of
  // the head; near the annulus boundary this raises the range on its own.
  const double ratio = std::max(sq * ax, sq / ax);
  int kmax = 64;
  if (ratio > 0.0) {
    const double need = std::log(1e-16 * (1.0 - ratio)) / std::log(ratio);
    kmax = std::max(kmax, static_cast<int>(need) + 2);
  }
  kmax = std::min(kmax, 200000);

  // Negative indices are rewritten as -(sqrt(q)/x)^k q^{-1/2} / (1 - q^{k-1/2})
  // so that no intermediate grows with k.
  Complex s = 1.0 / (1.0 - sq);  // k = 0 term
  Complex up = 1.0, dn = 1.0;
  const Complex sx = sq * x, sdx = sq / x;
  double qk = 1.0;  // q^k
  for (int k = 1; k <= kmax; ++k) {
    up *= sx;
    dn *= sdx;
    qk *= q;
    s += up / (1.0 - qk * sq);
    s -= dn / (sq * (1.0 - qk / sq));
  }
  const Complex pq = qpochhammer(q, ctx), psq = qpochhammer(sq, ctx);
  const Complex rhs = -(psq * psq) / (pq * pq) * s;
  return residual_of(lhs, rhs);
}

Residual verify_ol(Complex x, const EllipticContext& ctx) {
  // No square roots appear, so a complex nome is fine here.
  const double aq = std::abs(ctx.q);
  const double ax = std::abs(x);
  if (!(ax > aq && ax < 1.0))
    throw AnnulusError("verify_ol: need |q| < |x| < 1");

  const Complex lhs = theta_logderiv(x, ctx);

  const double ratio = std::max(ax, aq / ax);
  int kmax = 64;
  const double need = std::log(1e-16 * (1.0 - ratio)) / std::log(ratio);
  kmax = std::max(kmax, static_cast<int>(need) + 2);
  kmax = std::min(kmax, 200000);

  // Negative indices rewritten as -(q/x)^k / (1 - q^k); both directions decay.
  Complex s = 0.0, up = 1.0, dn = 1.0;
  const Complex qdx = ctx.q / x;
  Complex qk = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    up *= x;
    dn *= qdx;
    qk *= ctx.q;
    s += (up - dn) / (1.0 - qk);
  }
  return residual_of(lhs, -s);
}

double ratio_epxo(int m, Complex t, const EllipticContext& ctx) {
  const double q = real_q(ctx, "ratio_epxo");
  const double tn = std::pow(std::abs(t), 2 * m - 1);
  return std::sqrt(q) * std::max(tn, 1.0 / tn);
}

double ratio_opx(int m, Complex t, const EllipticContext& ctx) {
  const double q = real_q(ctx, "ratio_opx");
  const double tn = std::pow(std::abs(t), 2 * m);
  return std::sqrt(q) * std::max(tn, 1.0 / tn);
}

namespace {

/// Truncation index from the per-unit-k decay factor; throws when the point
/// sits outside the convergence annulus (decay >= 1).
int auto_kmax(double per_k_decay, int requested, const char* who) {
  if (per_k_decay >= 1.0)
    throw AnnulusError(std::string(who) + ": point outside the convergence annulus");
  if (requested > 0) return requested;
  const double need =
      std::log(1e-14 * (1.0 - per_k_decay)) / std::log(per_k_decay);
  return std::min(std::max(64, static_cast<int>(need) + 2), 20000);
}

Complex rhs_theta_ladder(int count, Complex t, double sq, const EllipticContext& ctx,
                         const char* who) {
  Complex rhs = 1.0;
  for (int i = 1; i <= count; ++i)
    for (int j = i + 1; j <= count; ++j) {
      const Complex u = cpow_int(t, j - i);
      rhs *= theta(u, ctx) / theta_checked(sq * u, ctx, who);
    }
  return rhs;
}

}  // namespace

SumResidual verify_epxo(int m, Complex t, const EllipticContext& ctx, int kmax) {
  require(m >= 1, "verify_epxo: m must be >= 1");
  const double q = real_q(ctx, "verify_epxo");
  const double sq = std::sqrt(q);
  const double ratio = ratio_epxo(m, t, ctx);

  SumResidual out;
  // Odd k_i step by 2, so the per-unit-k decay is sqrt(ratio).
  out.kmax_used = auto_kmax(ratio >= 1.0 ? ratio : std::sqrt(ratio), kmax,
                            "verify_epxo");
  out.slow_convergence = ratio > 0.9;

  const Complex geom = cpow_int(t, 1 - 2 * m) * sq;
  std::vector<int> ks(m, 1);
  Complex sum = 0.0;
  // Odd k_i up to kmax in odometer order.
  while (true) {
    Complex term = 1.0;
    for (int i = 0; i < m; ++i) {
      const int k = ks[i];
      term *= cpow_int(geom, (k - 1) / 2) * (1.0 - cpow_int(t, k)) /
              (1.0 - std::pow(q, 0.5 * k));
    }
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        const Complex da = cpow_int(t, (ks[j] - 1) / 2) - cpow_int(t, (ks[i] - 1) / 2);
        const Complex sb = 1.0 - cpow_int(t, (ks[i] + ks[j]) / 2);
        term *= da * da * sb * sb;
      }
    sum += term;
    int pos = m - 1;
    while (pos >= 0 && ks[pos] + 2 > out.kmax_used) {
      ks[pos] = 1;
      --pos;
    }
    if (pos < 0) break;
    ks[pos] += 2;
  }
  double mf = 1.0;
  for (int i = 2; i <= m; ++i) mf *= i;
  sum /= mf;

  Complex rhs = std::pow(q, 0.25 * m * (m - 1));
  // t^{-m(m-1)(4m+1)/6}: the exponent is always an integer.
  rhs *= cpow_int(t, -(static_cast<long>(m) * (m - 1) * (4L * m + 1)) / 6);
  const Complex qp = qpochhammer(q, ctx), sqp = qpochhammer(sq, ctx);
  rhs *= cpow_int(qp / sqp, 2 * m);
  rhs *= rhs_theta_ladder(2 * m, t, sq, ctx, "verify_epxo");

  out.residual = residual_of(sum, rhs);
  return out;
}

SumResidual verify_opx(int m, Complex t, const EllipticContext& ctx, int kmax) {
  require(m >= 1, "verify_opx: m must be >= 1");
  const double q = real_q(ctx, "verify_opx");
  const double sq = std::sqrt(q);
  const double ratio = ratio_opx(m, t, ctx);

  SumResidual out;
  out.kmax_used = auto_kmax(ratio, kmax, "verify_opx");
  out.slow_convergence = ratio > 0.9;

  const Complex geom = sq * cpow_int(t, -2 * m);
  std::vector<int> ks(m, 1);
  Complex sum = 0.0;
  while (true) {
    Complex term = 1.0;
    for (int i = 0; i < m; ++i) {
      const int k = ks[i];
      const Complex tk = cpow_int(t, k);
      term *= cpow_int(geom, k) / (1.0 - std::pow(q, k));
      term *= (1.0 - tk) * (1.0 - tk) * (1.0 - tk * tk);
    }
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        const Complex da = cpow_int(t, ks[j]) - cpow_int(t, ks[i]);
        const Complex sb = 1.0 - cpow_int(t, ks[i] + ks[j]);
        term *= da * da * sb * sb;
      }
    sum += term;
    int pos = m - 1;
    while (pos >= 0 && ks[pos] + 1 > out.kmax_used) {
      ks[pos] = 1;
      --pos;
    }
    if (pos < 0) break;
    ks[pos] += 1;
  }
  double mf = 1.0;
  for (int i = 2; i <= m; ++i) mf *= i;
  sum /= mf;

  Complex rhs = std::pow(q, 0.25 * m * (m + 1));
  rhs *= cpow_int(t, -(static_cast<long>(m) * (m + 1) * (2L * m + 1)) / 3);
  const Complex qp = qpochhammer(q, ctx), sqp = qpochhammer(sq, ctx);
  rhs *= cpow_int(qp / sqp, 2 * m);
  rhs *= rhs_theta_ladder(2 * m + 1, t, sq, ctx, "verify_opx");

  out.residual = residual_of(sum, rhs);
  return out;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

std::uint64_t Sampler::next_u64() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Sampler::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Sampler::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

Complex Sampler::annulus_point(double logmod_halfwidth) {
  const double lm = uniform(-logmod_halfwidth, logmod_halfwidth);
  const double ang = uniform(0.0, 2.0 * std::numbers::pi);
  return std::polar(std::exp(lm), ang);
}

}  // namespace tridenom::elliptic
