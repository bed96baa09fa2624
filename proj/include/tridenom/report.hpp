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

#ifndef TRIDENOM_REPORT_HPP
#define TRIDENOM_REPORT_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tridenom::report {

/// Invalid usage or domain input; the CLI maps this to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

enum class Format { json, csv, plain };
std::optional<Format> parse_format(std::string_view name);

struct ResultRow {
  std::string instance;
  std::string got;
  std::string expected;
  bool pass = true;
};

/// Flat result report with a fixed field order so identical runs render to
/// identical bytes. All big integers appear as decimal strings.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<ResultRow> results;
  std::vector<std::pair<std::string, std::string>> summary_extra;
  bool all_pass = true;

  std::string render(Format f) const;
};

/// Rectangular table of triangle counts; has its own grid-shaped rendering.
struct TableReport {
  std::vector<int> ks;
  long long n_max = 0;
  std::string method;
  std::vector<std::vector<std::string>> counts;  // counts[row][n]

  std::string render(Format f) const;
};

/// One count computed by the requested method. methods: oracle | classical |
/// kw | mt | gm | gmo. Throws UsageError on an invalid (k, method) pairing.
Report run_count(std::string_view method, int k, long long n, int m, int d);

/// Identity-vs-oracle sweep. d = 0 means every valid d. Each row compares
/// the identity value with the generating-function oracle, including the
/// forced zeros between multiples of the step.
Report run_verify(std::string_view family, int m_lo, int m_hi, int d,
                  long long x_lo, long long x_hi, int threads);

/// Randomized residual suite for one elliptic identity. Identities:
/// fd fs ep op sp okp rains rains-dual modular el ol epxo opx ti rup.
/// flip negates the closed side of ep/op (must then fail).
Report run_fuzz(std::string_view identity, int trials, std::complex<double> q,
                std::uint64_t seed, double tol, bool flip);

TableReport run_table(std::span<const int> ks, long long n_max,
                      std::string_view method);

/// Default worker count: TRIDENOM_THREADS when set, otherwise 1.
int default_threads();

}  // namespace tridenom::report

#endif  // TRIDENOM_REPORT_HPP
