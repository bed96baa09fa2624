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

#include "tridenom/classical.hpp"

#include <algorithm>
#include <stdexcept>

namespace tridenom::classical {

std::vector<long long> divisors(long long n) {
  if (n < 1) throw std::invalid_argument("divisors: n must be >= 1");
  std::vector<long long> ds;
  for (long long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      ds.push_back(d);
      if (d != n / d) ds.push_back(n / d);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

BigInt t2(long long n) {
  if (n < 0) throw std::invalid_argument("t2: n must be >= 0");
  BigInt s = 0;
  for (long long d : divisors(4 * n + 1)) s += ((d - 1) / 2) % 2 ? -1 : 1;
  return s;
}

BigInt t4(long long n) {
  if (n < 0) throw std::invalid_argument("t4: n must be >= 0");
  BigInt s = 0;
  for (long long d : divisors(2 * n + 1)) s += d;
  return s;
}

BigInt t8(long long n) {
  if (n < 0) throw std::invalid_argument("t8: n must be >= 0");
  BigInt s = 0;
  for (long long d : divisors(n + 1))
    if (((n + 1) / d) % 2 == 1) s += BigInt(d) * d * d;
  return s;
}

BigInt s2(long long n) {
  if (n < 0) throw std::invalid_argument("s2: n must be >= 0");
  if (n == 0) return 1;
  BigInt s = 0;
  for (long long d : divisors(n))
    if (d % 2 == 1) s += ((d - 1) / 2) % 2 ? -1 : 1;
  return 4 * s;
}

BigInt s4(long long n) {
  if (n < 0) throw std::invalid_argument("s4: n must be >= 0");
  if (n == 0) return 1;
  BigInt s = 0;
  for (long long d : divisors(n))
    if (d % 4 != 0) s += d;
  return 8 * s;
}

BigInt s8(long long n) {
  if (n < 0) throw std::invalid_argument("s8: n must be >= 0");
  if (n == 0) return 1;
  BigInt s = 0;
  for (long long d : divisors(n)) {
    BigInt cube = BigInt(d) * d * d;
    s += (n + d) % 2 ? -cube : cube;
  }
  return 16 * s;
}

}  // namespace tridenom::classical
