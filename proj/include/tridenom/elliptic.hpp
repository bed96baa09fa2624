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

#ifndef TRIDENOM_ELLIPTIC_HPP
#define TRIDENOM_ELLIPTIC_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace tridenom::elliptic {

using Complex = std::complex<double>;

/// A theta factor in a denominator vanished at working precision.
class PoleError : public std::runtime_error {
 public:
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

/// An evaluation point violates the annulus a Laurent expansion needs.
class AnnulusError : public std::domain_error {
 public:
  explicit AnnulusError(const std::string& what) : std::domain_error(what) {}
};

/// Evaluation parameters for the truncated products. depth is chosen so the
/// dropped tail cannot move any residual above tol: |q|^depth stays below
/// (1-|q|) * min(tol * 1e-3, 1e-18).
struct EllipticContext {
  Complex q;
  int depth = 0;
  double tol = 1e-9;
  std::uint64_t seed = 42;
};

int derive_depth(double abs_q, double tol);
EllipticContext make_context(Complex q, double tol = 1e-9, std::uint64_t seed = 42);

/// (x; q)_inf truncated at depth factors.
Complex qpochhammer(Complex x, const EllipticContext& ctx);

/// theta(x) = (x; q)_inf (q/x; q)_inf, truncated. Throws on x = 0.
Complex theta(Complex x, const EllipticContext& ctx);

/// x theta'(x) / theta(x): the exact logarithmic derivative of the truncated
/// product. Throws PoleError when a factor vanishes at working precision.
Complex theta_logderiv(Complex x, const EllipticContext& ctx);

/// theta'(1) = -(q; q)_inf^2.
Complex theta_deriv_at_one(const EllipticContext& ctx);

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

struct SkewMatrix {
  int dim = 0;
  std::vector<Complex> entries;  // row-major

  static SkewMatrix zero(int dim) {
    return SkewMatrix{dim, std::vector<Complex>(static_cast<std::size_t>(dim) * dim)};
  }
  Complex& at(int i, int j) { return entries[static_cast<std::size_t>(i) * dim + j]; }
  Complex at(int i, int j) const { return entries[static_cast<std::size_t>(i) * dim + j]; }
};

/// Throws std::invalid_argument unless max |a_ij + a_ji| and the diagonal
/// are below 1e-12 times the largest entry.
void require_skew(const SkewMatrix& a);

/// Pfaffian by recursive expansion along the first row; odd dimensions are
/// bordered with a column of ones and a row of minus ones first. Intended
/// for desk-scale matrices (dim <= 12).
Complex pfaffian(const SkewMatrix& a);

/// Determinant by LU with partial pivoting; the independent oracle for
/// pf(A)^2 = det(A) and the evaluator for the determinant identities.
Complex determinant(std::vector<Complex> a, int n);
Complex determinant(const SkewMatrix& a);

// ---------------------------------------------------------------------------
// Residuals
// ---------------------------------------------------------------------------

struct Residual {
  Complex lhs;
  Complex rhs;
  double rel = 0.0;  // |lhs-rhs| / (|lhs| + |rhs| + 1e-300)
};

Residual residual_of(Complex lhs, Complex rhs);

// ---------------------------------------------------------------------------
// Identity kernels. Each evaluates both sides of one printed identity at the
// given point and reports the relative residual.
// ---------------------------------------------------------------------------

/// Elliptic Cauchy determinant: det of theta(t x_i y_j) / (theta(t) theta(x_i y_j))
/// against its closed product form. xs and ys must have equal size n >= 1.
Residual verify_frobenius(Complex t, std::span<const Complex> xs,
                          std::span<const Complex> ys, const EllipticContext& ctx);

/// Bordered log-derivative variant of the determinant above.
Residual verify_fs(std::span<const Complex> xs, std::span<const Complex> ys,
                   const EllipticContext& ctx);

/// Even pfaffian evaluation; xs.size() = 2m. Needs real q (square roots).
/// flip_sign negates the closed side, which must break the identity.
Residual verify_ep(std::span<const Complex> xs, const EllipticContext& ctx,
                   bool flip_sign = false);

/// Odd pfaffian evaluation; xs.size() = 2m+1. Needs real q.
Residual verify_op(std::span<const Complex> xs, const EllipticContext& ctx,
                   bool flip_sign = false);

/// Elliptic Schur pfaffian; xs.size() = 2m.
Residual verify_schur(std::span<const Complex> xs, const EllipticContext& ctx);

/// Okada's two-parameter extension; xs.size() = 2m.
Residual verify_okada(std::span<const Complex> xs, Complex z, Complex w,
                      const EllipticContext& ctx);

/// Rains' pfaffian evaluation and its modular dual; xs.size() = 2m.
Residual verify_rains(std::span<const Complex> xs, const EllipticContext& ctx);
Residual verify_rains_dual(std::span<const Complex> xs, const EllipticContext& ctx);

/// Modular transformation between the nomes exp(-2 pi h) and exp(-2 pi / h),
/// evaluated at the real argument x in (0, 1).
Residual verify_modular(double x, double h, double tol = 1e-9);

/// Laurent expansion of theta(x) / (x theta(sqrt(q) x)); valid on the annulus
/// sqrt(q) < |x| < 1/sqrt(q). Needs real q.
Residual verify_el(Complex x, const EllipticContext& ctx);

/// Laurent expansion of the theta log-derivative; valid on q < |x| < 1.
Residual verify_ol(Complex x, const EllipticContext& ctx);

/// Truncated m-fold sums against their closed theta products. kmax = 0 picks
/// the truncation from the geometric ratio; a ratio above 0.9 sets
/// slow_convergence_warning on the context-free return. Needs real q.
struct SumResidual {
  Residual residual;
  int kmax_used = 0;
  bool slow_convergence = false;
};
SumResidual verify_epxo(int m, Complex t, const EllipticContext& ctx, int kmax = 0);
SumResidual verify_opx(int m, Complex t, const EllipticContext& ctx, int kmax = 0);

/// Geometric decay per k-step of the truncated sums; also the annulus gate.
double ratio_epxo(int m, Complex t, const EllipticContext& ctx);
double ratio_opx(int m, Complex t, const EllipticContext& ctx);

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

/// Deterministic generator for admissible random points: log-modulus uniform
/// in [-R, R], angle uniform. Hand-rolled bit mixing so that streams are
/// identical across platforms and standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double uniform01();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  Complex annulus_point(double logmod_halfwidth);

 private:
  std::uint64_t state_;
};

}  // namespace tridenom::elliptic

#endif  // TRIDENOM_ELLIPTIC_HPP
