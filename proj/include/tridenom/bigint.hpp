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

#ifndef TRIDENOM_BIGINT_HPP
#define TRIDENOM_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace tridenom {

/// Exact signed integer of unbounded size. Weights such as k^3 (k_j^2-k_i^2)^2
/// overflow 64 bits already at moderate targets, so everything arithmetic in
/// this library is done over this type from the start.
using BigInt = boost::multiprecision::cpp_int;

/// Thrown when a division that the mathematics guarantees to be exact turns
/// out not to be. Seeing this exception always means an implementation bug.
class InexactDivisionError : public std::runtime_error {
 public:
  explicit InexactDivisionError(const std::string& what)
      : std::runtime_error(what) {}
};

/// num / den, throwing InexactDivisionError unless den divides num exactly.
inline BigInt exact_div(const BigInt& num, const BigInt& den,
                        const char* context) {
  if (den == 0) throw InexactDivisionError(std::string(context) + ": zero divisor");
  BigInt q = num / den;
  if (q * den != num)
    throw InexactDivisionError(std::string(context) + ": " + num.str() +
                               " not divisible by " + den.str());
  return q;
}

inline BigInt factorial(long n) {
  BigInt r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt int_pow(const BigInt& base, long exp) {
  BigInt r = 1, b = base;
  for (long e = exp; e > 0; e >>= 1) {
    if (e & 1) r *= b;
    if (e > 1) b *= b;
  }
  return r;
}

/// n*(n-1)/2 reduced mod 2; used for the (-1)^{binom(a,2) binom(b,2)} signs.
inline int binom2_parity(long n) {
  return static_cast<int>((n * (n - 1) / 2) % 2);
}

inline std::string to_decimal(const BigInt& v) { return v.str(); }

}  // namespace tridenom

#endif  // TRIDENOM_BIGINT_HPP
