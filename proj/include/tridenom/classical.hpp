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

#ifndef TRIDENOM_CLASSICAL_HPP
#define TRIDENOM_CLASSICAL_HPP

#include <vector>

#include "tridenom/bigint.hpp"

namespace tridenom::classical {

/// Ascending list of the positive divisors of n (n >= 1), by trial division.
std::vector<long long> divisors(long long n);

// Closed-form divisor sums for 2, 4 and 8 triangles. Each equals the
// corresponding triangle representation count for every n >= 0.
BigInt t2(long long n);  ///< sum over d | 4n+1 of (-1)^{(d-1)/2}
BigInt t4(long long n);  ///< sum over d | 2n+1 of d
BigInt t8(long long n);  ///< sum over d | n+1 with (n+1)/d odd of d^3

// Divisor sums for 2, 4 and 8 squares. The sums presume n >= 1; n = 0
// returns 1 directly, matching the constant term of the generating function.
BigInt s2(long long n);  ///< 4 sum over odd d | n of (-1)^{(d-1)/2}
BigInt s4(long long n);  ///< 8 sum over d | n with 4 not dividing d of d
BigInt s8(long long n);  ///< 16 sum over d | n of (-1)^{n+d} d^3

}  // namespace tridenom::classical

#endif  // TRIDENOM_CLASSICAL_HPP
