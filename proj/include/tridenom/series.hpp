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

#ifndef TRIDENOM_SERIES_HPP
#define TRIDENOM_SERIES_HPP

#include <cstddef>
#include <vector>

#include "tridenom/bigint.hpp"

namespace tridenom::series {

/// Truncated power series in q with exact integer coefficients.
/// coeff(n) is the coefficient of q^n; order() is the exclusive truncation
/// bound, i.e. the number of retained coefficients. Arithmetic between two
/// series truncates to the smaller order.
class TruncSeries {
 public:
  explicit TruncSeries(std::size_t order) : coeffs_(order) {}

  static TruncSeries one(std::size_t order) {
    TruncSeries s(order);
    if (order > 0) s.coeffs_[0] = 1;
    return s;
  }

  std::size_t order() const { return coeffs_.size(); }
  const BigInt& coeff(std::size_t n) const { return coeffs_.at(n); }
  BigInt& coeff(std::size_t n) { return coeffs_.at(n); }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }

  friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

  /// Multiply in place by the sparse factor (1 + c q^e), keeping the order.
  /// This is the building block for truncated infinite products: a factor
  /// with exponent e >= order cannot change any retained coefficient.
  void mul_binomial(long coeff_c, std::size_t e);

 private:
  std::vector<BigInt> coeffs_;
};

/// s^k truncated to s.order(); k = 0 gives the constant series 1.
TruncSeries series_power(const TruncSeries& s, unsigned k);

/// Generating function of the triangular numbers: coefficient of q^n is 1
/// iff n = j(j+1)/2 for some j >= 0.
TruncSeries triangle_series(std::size_t order);

/// Generating function of signed squares: sum_{j in Z} q^{j^2}; coefficient
/// 1 at n = 0, 2 at positive perfect squares, 0 elsewhere.
TruncSeries square_series(std::size_t order);

/// Compares the triangular generating function against the truncated
/// product (q, -q, -q; q)_inf. The product is cut at factor index `order`
/// since factor j only touches exponents >= j. Returns true iff all
/// retained coefficients agree.
bool triple_product_check(std::size_t order);

/// Brute-force table of representation counts. Row k is the k-fold
/// self-convolution of row 1, so row k holds the coefficients of the k-th
/// power of the base generating function. This is the ground truth every
/// identity evaluator in the library is checked against.
class OracleTable {
 public:
  enum class Kind { triangles, squares };

  OracleTable(Kind kind, int kmax, std::size_t nmax);

  Kind kind() const { return kind_; }
  int kmax() const { return kmax_; }
  std::size_t nmax() const { return nmax_; }

  /// Coefficient of q^n in the k-th power; k = 0 is handled as the constant
  /// series. Throws std::out_of_range outside the table.
  const BigInt& count(int k, long n) const;

 private:
  Kind kind_;
  int kmax_;
  std::size_t nmax_;
  std::vector<std::vector<BigInt>> rows_;  // rows_[k], k = 0..kmax
};

/// Number of ordered representations of n as a sum of k triangular numbers
/// (zeros allowed, reorderings distinct). Convenience wrapper computing one
/// value; loops should use OracleTable.
BigInt triangle_count(int k, long n);

/// Number of ordered k-tuples of integers (signs counted) whose squares sum
/// to n.
BigInt square_count(int k, long n);

}  // namespace tridenom::series

#endif  // TRIDENOM_SERIES_HPP
