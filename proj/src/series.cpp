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

#include "tridenom/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace tridenom::series {

namespace {

std::size_t common_order(const TruncSeries& a, const TruncSeries& b) {
  return std::min(a.order(), b.order());
}

}  // namespace

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  TruncSeries r(common_order(a, b));
  for (std::size_t n = 0; n < r.order(); ++n) r.coeff(n) = a.coeff(n) + b.coeff(n);
  return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
  TruncSeries r(common_order(a, b));
  for (std::size_t n = 0; n < r.order(); ++n) r.coeff(n) = a.coeff(n) - b.coeff(n);
  return r;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  // Schoolbook convolution. Oracle orders stay in the low thousands, which
  // does not justify an FFT.
  TruncSeries r(common_order(a, b));
  const std::size_t ord = r.order();
  for (std::size_t i = 0; i < ord; ++i) {
    if (a.coeff(i) == 0) continue;
    for (std::size_t j = 0; i + j < ord; ++j) {
      if (b.coeff(j) == 0) continue;
      r.coeff(i + j) += a.coeff(i) * b.coeff(j);
    }
  }
  return r;
}

void TruncSeries::mul_binomial(long coeff_c, std::size_t e) {
  if (e == 0) throw std::invalid_argument("mul_binomial: exponent must be positive");
  if (e >= coeffs_.size()) return;
  for (std::size_t n = coeffs_.size(); n-- > e;) coeffs_[n] += coeff_c * coeffs_[n - e];
}

TruncSeries series_power(const TruncSeries& s, unsigned k) {
  TruncSeries result = TruncSeries::one(s.order());
  if (k == 0) return result;
  TruncSeries base = s;
  while (true) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k == 0) break;
    base = base * base;
  }
  return result;
}

TruncSeries triangle_series(std::size_t order) {
  if (order < 1) throw std::invalid_argument("triangle_series: order must be >= 1");
  TruncSeries s(order);
  for (std::size_t j = 0; j * (j + 1) / 2 < order; ++j) s.coeff(j * (j + 1) / 2) = 1;
  return s;
}

TruncSeries square_series(std::size_t order) {
  if (order < 1) throw std::invalid_argument("square_series: order must be >= 1");
  TruncSeries s(order);
  s.coeff(0) = 1;
  for (std::size_t j = 1; j * j < order; ++j) s.coeff(j * j) = 2;
  return s;
}

bool triple_product_check(std::size_t order) {
  if (order < 1) throw std::invalid_argument("triple_product_check: order must be >= 1");
  // (q, -q, -q; q)_inf = prod_{j>=1} (1 - q^j)(1 + q^j)^2, truncated where
  // factors stop touching retained exponents.
  TruncSeries prod = TruncSeries::one(order);
  for (std::size_t j = 1; j < order; ++j) {
    prod.mul_binomial(-1, j);
    prod.mul_binomial(+1, j);
    prod.mul_binomial(+1, j);
  }
  return prod == triangle_series(order);
}

OracleTable::OracleTable(Kind kind, int kmax, std::size_t nmax)
    : kind_(kind), kmax_(kmax), nmax_(nmax) {
  if (kmax < 1 || nmax < 1)
    throw std::invalid_argument("OracleTable: kmax and nmax must be >= 1");
  const TruncSeries base =
      kind == Kind::triangles ? triangle_series(nmax) : square_series(nmax);

  rows_.reserve(static_cast<std::size_t>(kmax) + 1);
  rows_.push_back(TruncSeries::one(nmax).coeffs());
  rows_.push_back(base.coeffs());
  // Row k is row k-1 convolved with the sparse base row.
  std::vector<std::size_t> support;
  for (std::size_t n = 0; n < nmax; ++n)
    if (base.coeff(n) != 0) support.push_back(n);
  for (int k = 2; k <= kmax; ++k) {
    const std::vector<BigInt>& prev = rows_.back();
    std::vector<BigInt> cur(nmax);
    for (std::size_t e : support) {
      const BigInt& c = base.coeff(e);
      if (c == 1) {
        for (std::size_t n = e; n < nmax; ++n) cur[n] += prev[n - e];
      } else {
        for (std::size_t n = e; n < nmax; ++n) cur[n] += c * prev[n - e];
      }
    }
    rows_.push_back(std::move(cur));
  }
}

const BigInt& OracleTable::count(int k, long n) const {
  if (k < 0 || k > kmax_) throw std::out_of_range("OracleTable::count: k out of range");
  if (n < 0 || static_cast<std::size_t>(n) >= nmax_)
    throw std::out_of_range("OracleTable::count: n out of range");
  return rows_[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
}

namespace {

BigInt power_coefficient(const TruncSeries& base, int k, long n) {
  if (k < 0) throw std::invalid_argument("power_coefficient: k must be >= 0");
  if (n < 0) throw std::invalid_argument("power_coefficient: n must be >= 0");
  if (k == 0) return n == 0 ? BigInt(1) : BigInt(0);
  const std::size_t nmax = static_cast<std::size_t>(n) + 1;
  std::vector<std::size_t> support;
  for (std::size_t e = 0; e < nmax; ++e)
    if (base.coeff(e) != 0) support.push_back(e);
  std::vector<BigInt> row(base.coeffs().begin(), base.coeffs().begin() + nmax);
  for (int step = 1; step < k; ++step) {
    std::vector<BigInt> next(nmax);
    for (std::size_t e : support)
      for (std::size_t i = e; i < nmax; ++i) next[i] += base.coeff(e) * row[i - e];
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(n)];
}

}  // namespace

BigInt triangle_count(int k, long n) {
  if (n < 0) throw std::invalid_argument("triangle_count: n must be >= 0");
  return power_coefficient(triangle_series(static_cast<std::size_t>(n) + 1), k, n);
}

BigInt square_count(int k, long n) {
  if (n < 0) throw std::invalid_argument("square_count: n must be >= 0");
  return power_coefficient(square_series(static_cast<std::size_t>(n) + 1), k, n);
}

}  // namespace tridenom::series
