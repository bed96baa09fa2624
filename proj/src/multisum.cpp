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

#include "tridenom/multisum.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <limits>
#include <stdexcept>
#include <thread>

namespace tridenom::multisum {

namespace {

constexpr long long kUnsatisfiable = 1LL << 60;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

// ---------------------------------------------------------------------------
// Congruence classes
// ---------------------------------------------------------------------------

int canonical_residue(long long k, int modulus) {
  require(modulus >= 1, "canonical_residue: modulus must be >= 1");
  long long r = k % modulus;
  if (r < 0) r += modulus;
  return static_cast<int>(std::min(r, modulus - r));
}

CongruenceSignature signature(std::span<const long long> ks, int modulus) {
  CongruenceSignature sig;
  sig.modulus = modulus;
  sig.classes.reserve(ks.size());
  for (long long k : ks) sig.classes.push_back(canonical_residue(k, modulus));
  std::sort(sig.classes.begin(), sig.classes.end());
  return sig;
}

namespace {

/// Allocation-free signature comparison against a precomputed sorted target.
bool signature_matches(std::span<const long long> ks, int modulus,
                       std::span<const int> sorted_target) {
  std::array<int, 16> buf;
  const std::size_t m = ks.size();
  if (m > buf.size() || m != sorted_target.size()) return false;
  for (std::size_t i = 0; i < m; ++i)
    buf[i] = canonical_residue(ks[i], modulus);
  std::sort(buf.begin(), buf.begin() + m);
  return std::equal(buf.begin(), buf.begin() + m, sorted_target.begin());
}

}  // namespace

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace {

/// Smallest positive k with the required parity lying in the signed class
/// `cls` mod `modulus`, or kUnsatisfiable when the class is empty (for
/// instance odd k in an even class of an even modulus). Admissible values
/// repeat with period lcm(modulus, 2), so scanning 2*modulus values decides.
long long min_admissible(int cls, int modulus, KParity parity) {
  for (long long k = 1; k <= 2LL * modulus; ++k) {
    if (parity == KParity::odd && k % 2 == 0) continue;
    if (canonical_residue(k, modulus) == cls) return k;
  }
  return kUnsatisfiable;
}

class Enumerator {
 public:
  Enumerator(const SolutionConstraint& c,
             const std::function<void(const Solution&)>& visit)
      : c_(c), visit_(visit) {
    require(c.m >= 1, "enumerate_solutions: m must be >= 1");
    if (c.residues) {
      require(static_cast<int>(c.residues->classes.size()) == c.m,
              "enumerate_solutions: one residue class per index required");
      require(c.residues->modulus >= 1,
              "enumerate_solutions: residue modulus must be >= 1");
    }
    sol_.ks.assign(c.m, 0);
    sol_.ls.assign(c.m, 0);
    min_k_.assign(c.m, 1);
    for (int i = 0; i < c.m; ++i) {
      min_k_[i] = c.residues
                      ? min_admissible(c.residues->classes[i],
                                       c.residues->modulus, c.k_parity)
                      : 1;
    }
    suffix_min_.assign(c.m + 1, 0);
    for (int i = c.m - 1; i >= 0; --i) {
      suffix_min_[i] = suffix_min_[i + 1] + min_k_[i];
      suffix_min_[i] = std::min(suffix_min_[i], kUnsatisfiable);
    }
    prev_same_.assign(c.m, -1);
    if (c.residues && c.residues->ordered_same_class) {
      for (int j = 1; j < c.m; ++j)
        for (int i = j - 1; i >= 0; --i)
          if (c.residues->classes[i] == c.residues->classes[j]) {
            prev_same_[j] = i;
            break;
          }
    }
  }

  void run() {
    if (c_.target < 1) return;
    recurse(0, c_.target);
  }

 private:
  bool admissible(int i, long long k) const {
    if (c_.k_parity == KParity::odd && k % 2 == 0) return false;
    if (c_.residues &&
        canonical_residue(k, c_.residues->modulus) != c_.residues->classes[i])
      return false;
    return true;
  }

  void recurse(int i, long long rem) {
    const long long future = suffix_min_[i + 1];
    long long k = min_k_[i];
    if (prev_same_[i] >= 0) k = std::max(k, sol_.ks[prev_same_[i]] + 1);
    for (; k + future <= rem; ++k) {
      if (!admissible(i, k)) continue;
      sol_.ks[i] = k;
      if (i == c_.m - 1) {
        if (rem % k == 0 && (rem / k) % 2 == 1) {
          sol_.ls[i] = rem / k;
          visit_(sol_);
        }
      } else {
        const long long cap = rem - future;
        for (long long l = 1; k * l <= cap; l += 2) {
          sol_.ls[i] = l;
          recurse(i + 1, rem - k * l);
        }
      }
    }
  }

  const SolutionConstraint& c_;
  const std::function<void(const Solution&)>& visit_;
  Solution sol_;
  std::vector<long long> min_k_;
  std::vector<long long> suffix_min_;
  std::vector<int> prev_same_;
};

}  // namespace

void enumerate_solutions(const SolutionConstraint& c,
                         const std::function<void(const Solution&)>& visit) {
  Enumerator(c, visit).run();
}

std::vector<Solution> collect_solutions(const SolutionConstraint& c) {
  std::vector<Solution> out;
  enumerate_solutions(c, [&](const Solution& s) { out.push_back(s); });
  return out;
}

// ---------------------------------------------------------------------------
// Theorem weights and constants
// ---------------------------------------------------------------------------

BigInt term_mt1(std::span<const long long> ks, int d) {
  require(d >= 1, "term_mt1: d must be >= 1");
  const int mod = 2 * d;
  int window = 0;
  BigInt v = 1;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    require(ks[i] >= 1 && ks[i] % 2 == 1, "term_mt1: k_i must be odd positive");
    const long long r = ks[i] % mod;
    if (r >= d + 1 && r <= 2 * d - 1) ++window;
    if (r == d) v *= ks[i];
    for (std::size_t j = i + 1; j < ks.size(); ++j) {
      // Both congruences can hold at once (d | k_i); apply each factor.
      if ((ks[j] - ks[i]) % mod == 0) {
        const long long h = (ks[j] - ks[i]) / 2;  // integral: k odd
        v *= BigInt(h) * h;
      }
      if ((ks[i] + ks[j]) % mod == 0) {
        const long long h = (ks[i] + ks[j]) / 2;
        v *= BigInt(h) * h;
      }
    }
  }
  return window % 2 ? -v : v;
}

BigInt constant_mt1(int m, int d) {
  require(m >= 1 && d >= 1 && (2 * m) % d == 0, "constant_mt1: d must divide 2m");
  const long u = 2L * m / d;
  BigInt v = int_pow(d, static_cast<long>(2L * m - d) * m / d) * factorial(m);
  for (long l = 1; l <= (2L * m - d) / d; ++l) v *= int_pow(factorial(l), d);
  return (binom2_parity(d) * binom2_parity(u)) % 2 ? -v : v;
}

BigInt eval_mt1(int m, int d, long long x) {
  require(m >= 1 && d >= 1 && (2 * m) % d == 0, "eval_mt1: d must divide 2m");
  require(x >= 0, "eval_mt1: x must be >= 0");
  const int mod = 2 * d;
  std::vector<long long> seq;
  for (int i = 1; i <= m; ++i) seq.push_back(2 * i - 1);
  const CongruenceSignature target = signature(seq, mod);

  SolutionConstraint c;
  c.m = m;
  c.target = static_cast<long long>(m) * m + x;
  c.k_parity = KParity::odd;
  BigInt sum = 0;
  enumerate_solutions(c, [&](const Solution& s) {
    if (signature_matches(s.ks, mod, target.classes)) sum += term_mt1(s.ks, d);
  });
  return exact_div(sum, constant_mt1(m, d), "eval_mt1");
}

BigInt term_mt2(std::span<const long long> ks, int d) {
  require(d >= 1, "term_mt2: d must be >= 1");
  const int lo = (d + 2) / 2;  // ceil((d+1)/2); window [lo, d-1] is empty for d <= 2
  int window = 0;
  BigInt v = 1;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    require(ks[i] >= 1, "term_mt2: k_i must be positive");
    const long long r = ks[i] % d;
    if (r >= lo && r <= d - 1) ++window;
    if (r == 0) v *= 2 * BigInt(ks[i]) * ks[i] * ks[i];
    if (d % 2 == 0 && r == d / 2) v *= 2 * BigInt(ks[i]);
    for (std::size_t j = i + 1; j < ks.size(); ++j) {
      if ((ks[j] - ks[i]) % d == 0) v *= BigInt(ks[j] - ks[i]) * (ks[j] - ks[i]);
      if ((ks[i] + ks[j]) % d == 0) v *= BigInt(ks[i] + ks[j]) * (ks[i] + ks[j]);
    }
  }
  return window % 2 ? -v : v;
}

BigInt constant_mt2(int m, int d, ConstantBranch branch) {
  require(m >= 1 && d >= 1, "constant_mt2: m, d must be >= 1");
  if (branch == ConstantBranch::automatic)
    branch = (2 * m) % d == 0 ? ConstantBranch::via_2m : ConstantBranch::via_2m_plus_2;
  BigInt c;
  if (branch == ConstantBranch::via_2m) {
    require((2 * m) % d == 0, "constant_mt2: 2m branch needs d | 2m");
    c = factorial(2L * m / d);
    for (long l = 1; l <= (2L * m - d) / d; ++l) c *= int_pow(factorial(l), d);
    if ((binom2_parity(d - 1) * binom2_parity(2L * m / d)) % 2) c = -c;
  } else {
    require((2 * m + 2) % d == 0, "constant_mt2: 2m+2 branch needs d | 2m+2");
    const long g = (2L * m + 2 - d) / d;
    BigInt num = 1;
    for (long l = 1; l <= g; ++l) num *= int_pow(factorial(l), d);
    c = exact_div(num, factorial(g), "constant_mt2");
    if ((binom2_parity(d - 1) * binom2_parity((2L * m + 2) / d)) % 2) c = -c;
  }
  return c * int_pow(d, static_cast<long>(2L * m + 2 - d) * m / d) * factorial(m);
}

BigInt eval_mt2(int m, int d, long long x) {
  require(m >= 1 && d >= 1 && ((2 * m) % d == 0 || (2 * m + 2) % d == 0),
          "eval_mt2: d must divide 2m or 2m+2");
  require(x >= 0, "eval_mt2: x must be >= 0");
  std::vector<long long> seq;
  for (int i = 1; i <= m; ++i) seq.push_back(i);
  const CongruenceSignature target = signature(seq, d);

  SolutionConstraint c;
  c.m = m;
  c.target = static_cast<long long>(m) * (m + 1) / 2 + x;
  c.k_parity = KParity::any;
  BigInt sum = 0;
  enumerate_solutions(c, [&](const Solution& s) {
    if (signature_matches(s.ks, d, target.classes)) sum += term_mt2(s.ks, d);
  });
  return exact_div(sum, constant_mt2(m, d), "eval_mt2");
}

// ---------------------------------------------------------------------------
// Reduced weights and constants
// ---------------------------------------------------------------------------

namespace {

/// Reduced even weight: as term_mt1 but with unhalved pair squares.
BigInt term_mt1_reduced(std::span<const long long> ks, int d) {
  const int mod = 2 * d;
  int window = 0;
  BigInt v = 1;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const long long r = ks[i] % mod;
    if (r >= d + 1 && r <= 2 * d - 1) ++window;
    if (r == d) v *= ks[i];
    for (std::size_t j = i + 1; j < ks.size(); ++j) {
      if ((ks[j] - ks[i]) % mod == 0) v *= BigInt(ks[j] - ks[i]) * (ks[j] - ks[i]);
      if ((ks[i] + ks[j]) % mod == 0) v *= BigInt(ks[i] + ks[j]) * (ks[i] + ks[j]);
    }
  }
  return window % 2 ? -v : v;
}

/// Reduced odd weight: as term_mt2 but without the factors of 2.
BigInt term_mt2_reduced(std::span<const long long> ks, int d) {
  const int lo = (d + 2) / 2;
  int window = 0;
  BigInt v = 1;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const long long r = ks[i] % d;
    if (r >= lo && r <= d - 1) ++window;
    if (r == 0) v *= BigInt(ks[i]) * ks[i] * ks[i];
    if (d % 2 == 0 && r == d / 2) v *= ks[i];
    for (std::size_t j = i + 1; j < ks.size(); ++j) {
      if ((ks[j] - ks[i]) % d == 0) v *= BigInt(ks[j] - ks[i]) * (ks[j] - ks[i]);
      if ((ks[i] + ks[j]) % d == 0) v *= BigInt(ks[i] + ks[j]) * (ks[i] + ks[j]);
    }
  }
  return window % 2 ? -v : v;
}

BigInt sign_weight_gm(std::span<const long long> ks, int m) {
  const int mod = 4 * m;
  int window = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const long long want = ((1 - 2 * (static_cast<long long>(i) + 1)) % mod + mod) % mod;
    if (ks[i] % mod == want) ++window;
  }
  return window % 2 ? BigInt(-1) : BigInt(1);
}

BigInt sign_weight_gmo(std::span<const long long> ks, int m) {
  const int mod = 2 * m + 2;
  int window = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const long long want = ((-(static_cast<long long>(i) + 1)) % mod + mod) % mod;
    if (ks[i] % mod == want) ++window;
  }
  return window % 2 ? BigInt(-1) : BigInt(1);
}

ResidueSpec reduced_residues_mt1(int m, int d) {
  ResidueSpec spec;
  spec.modulus = 2 * d;
  for (int i = 1; i <= m; ++i)
    spec.classes.push_back(canonical_residue(2 * i - 1, spec.modulus));
  return spec;
}

ResidueSpec reduced_residues_mt2(int m, int d) {
  ResidueSpec spec;
  spec.modulus = d;
  for (int i = 1; i <= m; ++i)
    spec.classes.push_back(canonical_residue(i, spec.modulus));
  return spec;
}

}  // namespace

Ratio corollary_constant(Family f, int m, int d) {
  require(family_valid(f, m, d), "corollary_constant: invalid (family, m, d)");
  Ratio r{1, 1};
  switch (f) {
    case Family::mt1a: {
      const long md = m / d;
      BigInt num = int_pow(int_pow(2, 2L * m - d - 1) * int_pow(d, 2L * m - d), md);
      for (long l = 1; l <= (2L * m - d) / d; ++l) num *= int_pow(factorial(l), d);
      if ((((d - 1) / 2) * md) % 2) num = -num;
      r.num = num;
      break;
    }
    case Family::mt1b: {
      BigInt num = int_pow(2L * d, static_cast<long>(2L * m - d) * m / d);
      for (long l = 1; l <= (2L * m - d) / d; ++l) num *= int_pow(factorial(l), d);
      if (((d / 2) * binom2_parity(2L * m / d)) % 2) num = -num;
      r.num = num;
      break;
    }
    case Family::mt2a: {
      const BigInt dE = int_pow(d, static_cast<long>(2L * m + 2 - d) * m / d);
      if (m % d == 0) {
        BigInt num = factorial(2L * m / d);
        for (long l = 1; l <= (2L * m - d) / d; ++l) num *= int_pow(factorial(l), d);
        if ((binom2_parity(d - 1) * binom2_parity(2L * m / d)) % 2) num = -num;
        r.num = num * dE;
        r.den = int_pow(2, m / d);
      } else {
        const long g = (2L * m + 2 - d) / d;
        BigInt num = 1;
        for (long l = 1; l <= g; ++l) num *= int_pow(factorial(l), d);
        num = exact_div(num, factorial(g), "corollary_constant mt2a");
        if ((binom2_parity(d - 1) * binom2_parity(2L * (m + 1) / d)) % 2) num = -num;
        r.num = num * dE;
        r.den = int_pow(2, (m + 1 - d) / d);
      }
      break;
    }
    case Family::mt2b: {
      const BigInt dE = int_pow(d, static_cast<long>(2L * m + 2 - d) * m / d);
      if ((2 * m) % d == 0) {
        BigInt num = factorial(2L * m / d);
        for (long l = 1; l <= (2L * m - d) / d; ++l) num *= int_pow(factorial(l), d);
        if ((binom2_parity(d - 1) * binom2_parity(2L * m / d)) % 2) num = -num;
        r.num = num * dE;
        r.den = int_pow(2, 2L * m / d);
      } else {
        const long g = (2L * m + 2 - d) / d;
        BigInt num = 1;
        for (long l = 1; l <= g; ++l) num *= int_pow(factorial(l), d);
        num = exact_div(num, factorial(g), "corollary_constant mt2b");
        if ((binom2_parity(d - 1) * binom2_parity(2L * (m + 1) / d)) % 2) num = -num;
        r.num = num * dE;
        r.den = int_pow(2, g);
      }
      break;
    }
    default:
      throw std::invalid_argument("corollary_constant: not a reduced family");
  }
  return r;
}

BigInt eval_corollary(Family f, int m, int d, long long x) {
  require(family_valid(f, m, d), "eval_corollary: invalid (family, m, d)");
  require(x >= 0, "eval_corollary: x must be >= 0");
  const bool even_side = f == Family::mt1a || f == Family::mt1b;

  SolutionConstraint c;
  c.m = m;
  c.target = even_side ? static_cast<long long>(m) * m + x
                       : static_cast<long long>(m) * (m + 1) / 2 + x;
  c.k_parity = even_side ? KParity::odd : KParity::any;
  c.residues = even_side ? reduced_residues_mt1(m, d) : reduced_residues_mt2(m, d);

  BigInt sum = 0;
  enumerate_solutions(c, [&](const Solution& s) {
    sum += even_side ? term_mt1_reduced(s.ks, d) : term_mt2_reduced(s.ks, d);
  });
  const Ratio k = corollary_constant(f, m, d);
  return exact_div(sum * k.den, k.num, "eval_corollary");
}

// ---------------------------------------------------------------------------
// Limit cases and printed specials
// ---------------------------------------------------------------------------

namespace {

BigInt weight_kw_even(std::span<const long long> ks) {
  BigInt v = 1;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    v *= ks[i];
    for (std::size_t j = i + 1; j < ks.size(); ++j) {
      const BigInt diff = BigInt(ks[j]) * ks[j] - BigInt(ks[i]) * ks[i];
      v *= diff * diff;
    }
  }
  return v;
}

BigInt weight_kw_odd(std::span<const long long> ks) {
  BigInt v = 1;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    v *= BigInt(ks[i]) * ks[i] * ks[i];
    for (std::size_t j = i + 1; j < ks.size(); ++j) {
      const BigInt diff = BigInt(ks[j]) * ks[j] - BigInt(ks[i]) * ks[i];
      v *= diff * diff;
    }
  }
  return v;
}

}  // namespace

BigInt eval_kw_even(int m, long long n) {
  require(m >= 1 && n >= 0, "eval_kw_even: m >= 1, n >= 0");
  SolutionConstraint c;
  c.m = m;
  c.target = 2 * n + static_cast<long long>(m) * m;
  c.k_parity = KParity::odd;
  BigInt sum = 0;
  enumerate_solutions(c, [&](const Solution& s) { sum += weight_kw_even(s.ks); });
  BigInt constant = int_pow(4, static_cast<long>(m) * (m - 1)) * factorial(m);
  for (long j = 1; j <= 2L * m - 1; ++j) constant *= factorial(j);
  return exact_div(sum, constant, "eval_kw_even");
}

BigInt eval_kw_odd(int m, long long n) {
  require(m >= 1 && n >= 0, "eval_kw_odd: m >= 1, n >= 0");
  SolutionConstraint c;
  c.m = m;
  c.target = n + static_cast<long long>(m) * (m + 1) / 2;
  c.k_parity = KParity::any;
  BigInt sum = 0;
  enumerate_solutions(c, [&](const Solution& s) { sum += weight_kw_odd(s.ks); });
  BigInt constant = factorial(m);
  for (long j = 1; j <= 2L * m; ++j) constant *= factorial(j);
  return exact_div(sum * int_pow(2, m), constant, "eval_kw_odd");
}

BigInt eval_gm(int m, long long x) {
  require(m >= 1 && x >= 0, "eval_gm: m >= 1, x >= 0");
  SolutionConstraint c;
  c.m = m;
  c.target = static_cast<long long>(m) * m + x;
  c.k_parity = KParity::odd;
  c.residues = reduced_residues_mt1(m, 2 * m);  // k_i = +-(2i-1) mod 4m
  BigInt sum = 0;
  enumerate_solutions(c, [&](const Solution& s) { sum += sign_weight_gm(s.ks, m); });
  return sum;
}

BigInt eval_gmo(int m, long long x) {
  require(m >= 1 && x >= 0, "eval_gmo: m >= 1, x >= 0");
  SolutionConstraint c;
  c.m = m;
  c.target = static_cast<long long>(m) * (m + 1) / 2 + x;
  c.k_parity = KParity::any;
  c.residues = reduced_residues_mt2(m, 2 * m + 2);  // k_i = +-i mod 2m+2
  BigInt sum = 0;
  enumerate_solutions(c, [&](const Solution& s) { sum += sign_weight_gmo(s.ks, m); });
  return sum;
}

BigInt eval_m2_identity(Family name, long long n) {
  require(n >= 0, "eval_m2_identity: n must be >= 0");
  SolutionConstraint c;
  c.m = 2;
  BigInt sum = 0;
  switch (name) {
    case Family::t16:
      return eval_kw_even(2, n);
    case Family::t24:
      return eval_kw_odd(2, n);
    case Family::t42: {
      c.target = 8 * n + 4;
      c.k_parity = KParity::odd;
      c.residues = ResidueSpec{8, {1, 3}, false};
      enumerate_solutions(c, [&](const Solution& s) {
        const long long e = (s.ks[0] - 1) / 2 + (s.ks[1] - 3) / 2;
        sum += e % 2 ? -1 : 1;
      });
      return sum;
    }
    case Family::m2_t4_d6: {
      c.target = 6 * n + 3;
      c.k_parity = KParity::any;
      c.residues = ResidueSpec{6, {1, 2}, false};
      enumerate_solutions(c, [&](const Solution& s) {
        const int e = (s.ks[0] % 6 == 5 ? 1 : 0) + (s.ks[1] % 6 == 4 ? 1 : 0);
        sum += e % 2 ? -1 : 1;
      });
      return sum;
    }
    case Family::m2_t6_d4: {
      c.target = 4 * n + 3;
      c.k_parity = KParity::any;
      c.residues = ResidueSpec{4, {1, 2}, false};
      enumerate_solutions(c, [&](const Solution& s) {
        const BigInt w = BigInt(s.ks[1]);
        sum += ((s.ks[0] - 1) / 2) % 2 ? -w : w;
      });
      return exact_div(sum, 2, "eval_m2_identity t6");
    }
    case Family::m2_t8_d3: {
      c.target = 3 * n + 3;
      c.k_parity = KParity::any;
      enumerate_solutions(c, [&](const Solution& s) {
        const long long k1 = s.ks[0], k2 = s.ks[1];
        if (k1 % 3 == 0 || k2 % 3 == 0) return;
        if ((k1 + k2) % 3 == 0) sum += BigInt(k1 + k2) * (k1 + k2);
        if ((k1 - k2) % 3 == 0) sum -= BigInt(k1 - k2) * (k1 - k2);
      });
      return exact_div(sum, 2 * 9, "eval_m2_identity t8 d3");
    }
    case Family::m2_t8_d2: {
      c.target = 4 * n + 4;
      c.k_parity = KParity::odd;
      enumerate_solutions(c, [&](const Solution& s) {
        const long long k1 = s.ks[0], k2 = s.ks[1];
        if ((k1 + k2) % 4 == 0) sum += BigInt(k1 + k2) * (k1 + k2);
        if ((k1 - k2) % 4 == 0) sum -= BigInt(k1 - k2) * (k1 - k2);
      });
      return exact_div(sum, 32, "eval_m2_identity t8 d2");
    }
    case Family::m2_t12_d2: {
      c.target = 2 * n + 3;
      c.k_parity = KParity::any;
      c.residues = ResidueSpec{2, {1, 0}, false};
      enumerate_solutions(c, [&](const Solution& s) {
        sum += BigInt(s.ks[0]) * s.ks[1] * s.ks[1] * s.ks[1];
      });
      return exact_div(sum, 8, "eval_m2_identity t12");
    }
    default:
      throw std::invalid_argument("eval_m2_identity: not an n-indexed special");
  }
}

// ---------------------------------------------------------------------------
// Family metadata
// ---------------------------------------------------------------------------

std::optional<Family> parse_family(std::string_view name) {
  struct Pair { std::string_view n; Family f; };
  static constexpr Pair table[] = {
      {"mt1", Family::mt1},           {"mt2", Family::mt2},
      {"mt1a", Family::mt1a},         {"mt1b", Family::mt1b},
      {"mt2a", Family::mt2a},         {"mt2b", Family::mt2b},
      {"kw-even", Family::kw_even},   {"kw-odd", Family::kw_odd},
      {"gm", Family::gm},             {"gmo", Family::gmo},
      {"t16", Family::t16},           {"t24", Family::t24},
      {"t42", Family::t42},           {"m2-t4-d6", Family::m2_t4_d6},
      {"m2-t6-d4", Family::m2_t6_d4}, {"m2-t8-d3", Family::m2_t8_d3},
      {"m2-t8-d2", Family::m2_t8_d2}, {"m2-t12-d2", Family::m2_t12_d2},
  };
  for (const auto& p : table)
    if (p.n == name) return p.f;
  return std::nullopt;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::mt1: return "mt1";
    case Family::mt2: return "mt2";
    case Family::mt1a: return "mt1a";
    case Family::mt1b: return "mt1b";
    case Family::mt2a: return "mt2a";
    case Family::mt2b: return "mt2b";
    case Family::kw_even: return "kw-even";
    case Family::kw_odd: return "kw-odd";
    case Family::gm: return "gm";
    case Family::gmo: return "gmo";
    case Family::t16: return "t16";
    case Family::t24: return "t24";
    case Family::t42: return "t42";
    case Family::m2_t4_d6: return "m2-t4-d6";
    case Family::m2_t6_d4: return "m2-t6-d4";
    case Family::m2_t8_d3: return "m2-t8-d3";
    case Family::m2_t8_d2: return "m2-t8-d2";
    case Family::m2_t12_d2: return "m2-t12-d2";
  }
  return "?";
}

bool family_valid(Family f, int m, int d) {
  if (m < 1 || d < 1) return false;
  switch (f) {
    case Family::mt1: return (2 * m) % d == 0;
    case Family::mt2: return (2 * m) % d == 0 || (2 * m + 2) % d == 0;
    case Family::mt1a: return d % 2 == 1 && m % d == 0;
    case Family::mt1b: return d % 2 == 0 && (2 * m) % d == 0;
    case Family::mt2a: return d % 2 == 1 && (m % d == 0 || (m + 1) % d == 0);
    case Family::mt2b: return d % 2 == 0 && ((2 * m) % d == 0 || (2 * m + 2) % d == 0);
    case Family::kw_even:
    case Family::kw_odd:
    case Family::gm:
    case Family::gmo: return d == 1;
    case Family::t16:
    case Family::t24:
    case Family::t42:
    case Family::m2_t4_d6:
    case Family::m2_t6_d4:
    case Family::m2_t8_d3:
    case Family::m2_t8_d2:
    case Family::m2_t12_d2: return m == 2 && d == 1;
  }
  return false;
}

std::vector<int> family_valid_d(Family f, int m) {
  std::vector<int> ds;
  for (int d = 1; d <= 2 * m + 2; ++d)
    if (family_valid(f, m, d)) ds.push_back(d);
  return ds;
}

int family_triangle_k(Family f, int m, int d) {
  require(family_valid(f, m, d), "family_triangle_k: invalid (family, m, d)");
  switch (f) {
    case Family::mt1:
    case Family::mt1a:
    case Family::mt1b: return 4 * m * m / d;
    case Family::mt2:
    case Family::mt2a:
    case Family::mt2b: return 4 * m * (m + 1) / d;
    case Family::kw_even: return 4 * m * m;
    case Family::kw_odd: return 4 * m * (m + 1);
    case Family::gm:
    case Family::gmo: return 2 * m;
    case Family::t16: return 16;
    case Family::t24: return 24;
    case Family::t42: return 4;
    case Family::m2_t4_d6: return 4;
    case Family::m2_t6_d4: return 6;
    case Family::m2_t8_d3: return 8;
    case Family::m2_t8_d2: return 8;
    case Family::m2_t12_d2: return 12;
  }
  return 0;
}

long long family_x_step(Family f, int m, int d) {
  require(family_valid(f, m, d), "family_x_step: invalid (family, m, d)");
  switch (f) {
    case Family::mt1:
    case Family::mt1a:
    case Family::mt1b: return 2 * d;
    case Family::mt2:
    case Family::mt2a:
    case Family::mt2b: return d;
    case Family::gm: return 4 * m;
    case Family::gmo: return 2 * m + 2;
    default: return 1;
  }
}

BigInt eval_identity(Family f, int m, int d, long long n) {
  require(family_valid(f, m, d), "eval_identity: invalid (family, m, d)");
  require(n >= 0, "eval_identity: n must be >= 0");
  const long long x = family_x_step(f, m, d) * n;
  switch (f) {
    case Family::mt1: return eval_mt1(m, d, x);
    case Family::mt2: return eval_mt2(m, d, x);
    case Family::mt1a:
    case Family::mt1b:
    case Family::mt2a:
    case Family::mt2b: return eval_corollary(f, m, d, x);
    case Family::kw_even: return eval_kw_even(m, n);
    case Family::kw_odd: return eval_kw_odd(m, n);
    case Family::gm: return eval_gm(m, x);
    case Family::gmo: return eval_gmo(m, x);
    default: return eval_m2_identity(f, n);
  }
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

namespace {

struct SweepPlan {
  int m = 0;
  int d = 0;
  long long base = 0;
  KParity parity = KParity::odd;
  bool sorted = false;               // sorted-distinct stream + signature filter
  int sig_modulus = 1;               // sorted path
  std::vector<int> target_classes;   // sorted path
  ResidueSpec residues;              // per-index path
  BigInt (*weight)(std::span<const long long>, int) = nullptr;
  int weight_arg = 0;  // d for theorem/reduced weights, m for the sign weights
  Ratio constant{1, 1};
  const char* context = "sweep";
};

BigInt weight_gm_adapter(std::span<const long long> ks, int m) {
  return sign_weight_gm(ks, m);
}
BigInt weight_gmo_adapter(std::span<const long long> ks, int m) {
  return sign_weight_gmo(ks, m);
}

/// One worker's share of a sweep. Workers split the stream on the first
/// k component; sums are exact integers, so merging is order-independent and
/// the final result is bit-identical for any worker count.
class SweepWorker {
 public:
  SweepWorker(const SweepPlan& plan, long long tmax, int index, int count)
      : plan_(plan),
        tmax_(tmax),
        index_(index),
        count_(count),
        sums_(static_cast<std::size_t>(tmax) + 1),
        conv_(static_cast<std::size_t>(tmax) + 1, 0),
        ks_(plan.m, 0) {
    if (!plan_.sorted) {
      min_k_.assign(plan_.m, 1);
      for (int i = 0; i < plan_.m; ++i)
        min_k_[i] = min_admissible(plan_.residues.classes[i],
                                   plan_.residues.modulus, plan_.parity);
      suffix_min_.assign(plan_.m + 1, 0);
      for (int i = plan_.m - 1; i >= 0; --i)
        suffix_min_[i] =
            std::min(suffix_min_[i + 1] + min_k_[i], kUnsatisfiable);
      prev_same_.assign(plan_.m, -1);
      if (plan_.residues.ordered_same_class)
        for (int j = 1; j < plan_.m; ++j)
          for (int i = j - 1; i >= 0; --i)
            if (plan_.residues.classes[i] == plan_.residues.classes[j]) {
              prev_same_[j] = i;
              break;
            }
    }
  }

  void run() {
    if (plan_.sorted)
      recurse_sorted(0, 1 - stride(), 0);
    else
      recurse_indexed(0, 0);
  }

  std::vector<BigInt>& sums() { return sums_; }

 private:
  long long stride() const { return plan_.parity == KParity::odd ? 2 : 1; }

  // Minimal total of r further strictly ascending entries above k.
  long long sorted_tail(long long k, int r) const {
    return r * k + stride() * (static_cast<long long>(r) * (r + 1) / 2);
  }

  void recurse_sorted(int i, long long prev, long long sum) {
    const int r = plan_.m - 1 - i;
    long long counter = 0;
    for (long long k = prev + stride();; k += stride()) {
      if (sum + k + sorted_tail(k, r) > tmax_) break;
      if (i == 0 && (counter++ % count_) != index_) continue;
      ks_[i] = k;
      if (i + 1 == plan_.m)
        emit(sum + k);
      else
        recurse_sorted(i + 1, k, sum + k);
    }
  }

  void recurse_indexed(int i, long long sum) {
    long long k = min_k_[i];
    if (prev_same_[i] >= 0) k = std::max(k, ks_[prev_same_[i]] + 1);
    long long counter = 0;
    for (; sum + k + suffix_min_[i + 1] <= tmax_; ++k) {
      if (plan_.parity == KParity::odd && k % 2 == 0) continue;
      if (canonical_residue(k, plan_.residues.modulus) !=
          plan_.residues.classes[i])
        continue;
      if (i == 0 && (counter++ % count_) != index_) continue;
      ks_[i] = k;
      if (i + 1 == plan_.m)
        emit(sum + k);
      else
        recurse_indexed(i + 1, sum + k);
    }
  }

  void emit(long long ksum) {
    if (plan_.sorted &&
        !signature_matches(ks_, plan_.sig_modulus, plan_.target_classes))
      return;
    const BigInt w = plan_.weight(ks_, plan_.weight_arg);
    if (w == 0) return;
    // Number of odd l-assignments per total: geometric strides of 2 k_i on
    // top of the all-ones baseline.
    std::fill(conv_.begin() + ksum, conv_.end(), 0);
    conv_[static_cast<std::size_t>(ksum)] = 1;
    for (int i = 0; i < plan_.m; ++i) {
      const long long s = 2 * ks_[i];
      for (long long n = ksum + s; n <= tmax_; ++n) conv_[n] += conv_[n - s];
    }
    for (long long n = ksum; n <= tmax_; ++n)
      if (conv_[n] != 0) sums_[n] += w * conv_[n];
  }

  const SweepPlan& plan_;
  long long tmax_;
  int index_;
  int count_;
  std::vector<BigInt> sums_;
  std::vector<long long> conv_;
  std::vector<long long> ks_;
  std::vector<long long> min_k_;
  std::vector<long long> suffix_min_;
  std::vector<int> prev_same_;
};

BigInt constant_mt1_sorted(int m, int d) {
  // constant_mt1 with the m! removed: the sorted stream visits each k-set
  // once instead of m! times.
  return exact_div(constant_mt1(m, d), factorial(m), "constant_mt1_sorted");
}

BigInt constant_mt2_sorted(int m, int d) {
  return exact_div(constant_mt2(m, d), factorial(m), "constant_mt2_sorted");
}

}  // namespace

SweepResult sweep(Family f, int m, int d, long long xmax, int threads) {
  require(family_valid(f, m, d), "sweep: invalid (family, m, d)");
  require(xmax >= 0, "sweep: xmax must be >= 0");

  SweepPlan plan;
  plan.m = m;
  plan.d = d;
  switch (f) {
    case Family::mt1: {
      plan.base = static_cast<long long>(m) * m;
      plan.parity = KParity::odd;
      plan.sorted = true;
      plan.sig_modulus = 2 * d;
      std::vector<long long> seq;
      for (int i = 1; i <= m; ++i) seq.push_back(2 * i - 1);
      plan.target_classes = signature(seq, plan.sig_modulus).classes;
      plan.weight = +[](std::span<const long long> ks, int dd) { return term_mt1(ks, dd); };
      plan.weight_arg = d;
      plan.constant = {constant_mt1_sorted(m, d), 1};
      plan.context = "sweep mt1";
      break;
    }
    case Family::mt2: {
      plan.base = static_cast<long long>(m) * (m + 1) / 2;
      plan.parity = KParity::any;
      plan.sorted = true;
      plan.sig_modulus = d;
      std::vector<long long> seq;
      for (int i = 1; i <= m; ++i) seq.push_back(i);
      plan.target_classes = signature(seq, d).classes;
      plan.weight = +[](std::span<const long long> ks, int dd) { return term_mt2(ks, dd); };
      plan.weight_arg = d;
      plan.constant = {constant_mt2_sorted(m, d), 1};
      plan.context = "sweep mt2";
      break;
    }
    case Family::mt1a:
    case Family::mt1b:
      plan.base = static_cast<long long>(m) * m;
      plan.parity = KParity::odd;
      plan.residues = reduced_residues_mt1(m, d);
      plan.weight = +[](std::span<const long long> ks, int dd) { return term_mt1_reduced(ks, dd); };
      plan.weight_arg = d;
      plan.constant = corollary_constant(f, m, d);
      plan.context = "sweep mt1ab";
      break;
    case Family::mt2a:
    case Family::mt2b:
      plan.base = static_cast<long long>(m) * (m + 1) / 2;
      plan.parity = KParity::any;
      plan.residues = reduced_residues_mt2(m, d);
      plan.weight = +[](std::span<const long long> ks, int dd) { return term_mt2_reduced(ks, dd); };
      plan.weight_arg = d;
      plan.constant = corollary_constant(f, m, d);
      plan.context = "sweep mt2ab";
      break;
    case Family::gm:
      plan.base = static_cast<long long>(m) * m;
      plan.parity = KParity::odd;
      plan.residues = reduced_residues_mt1(m, 2 * m);
      plan.weight = weight_gm_adapter;
      plan.weight_arg = m;
      plan.context = "sweep gm";
      break;
    case Family::gmo:
      plan.base = static_cast<long long>(m) * (m + 1) / 2;
      plan.parity = KParity::any;
      plan.residues = reduced_residues_mt2(m, 2 * m + 2);
      plan.weight = weight_gmo_adapter;
      plan.weight_arg = m;
      plan.context = "sweep gmo";
      break;
    default:
      throw std::invalid_argument("sweep: family is n-indexed; evaluate directly");
  }

  const long long tmax = plan.base + xmax;
  const int nworkers = std::max(1, std::min(threads, 64));

  std::vector<std::unique_ptr<SweepWorker>> workers;
  workers.reserve(nworkers);
  for (int w = 0; w < nworkers; ++w)
    workers.push_back(std::make_unique<SweepWorker>(plan, tmax, w, nworkers));

  if (nworkers == 1) {
    workers[0]->run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (auto& w : workers)
      pool.emplace_back([&worker = *w] { worker.run(); });
    for (auto& t : pool) t.join();
  }

  std::vector<BigInt> total(static_cast<std::size_t>(tmax) + 1);
  for (auto& w : workers)
    for (long long n = 0; n <= tmax; ++n) total[n] += w->sums()[n];

  SweepResult res;
  res.family = f;
  res.m = m;
  res.d = d;
  res.xmax = xmax;
  res.values.reserve(static_cast<std::size_t>(xmax) + 1);
  for (long long x = 0; x <= xmax; ++x)
    res.values.push_back(
        exact_div(total[plan.base + x] * plan.constant.den, plan.constant.num,
                  plan.context));
  return res;
}

// ---------------------------------------------------------------------------
// Residue-count lemmas
// ---------------------------------------------------------------------------

ResidueProfile lemma1_profile(int m, int d) {
  require(m >= 1 && d >= 1 && (2 * m) % d == 0, "lemma1_profile: d must divide 2m");
  const int mod = 2 * d;
  std::vector<int> seq;
  for (int i = 1; i <= m; ++i) seq.push_back((2 * i - 1) % mod);

  ResidueProfile p;
  const long u = 2L * m / d;  // 2m/d
  // (a) counts per odd residue mod 2d
  for (int r = 1; r < mod; r += 2) {
    ResidueProfile::Entry e;
    e.residue = r;
    e.counted = std::count(seq.begin(), seq.end(), r);
    if (u % 2 == 1)  // forces d even
      e.closed_form = r <= d - 1 ? (u + 1) / 2 : (u - 1) / 2;
    else
      e.closed_form = m / d;
    p.per_residue.push_back(e);
  }
  // (b) counts per signed class; canonical values of odd residues are the
  // odd numbers 1..d
  for (int cls = 1; cls <= d; cls += 2) {
    ResidueProfile::Entry e;
    e.residue = cls;
    e.counted = std::count_if(seq.begin(), seq.end(), [&](int r) {
      return canonical_residue(r, mod) == cls;
    });
    e.closed_form = (d % 2 == 1 && cls == d) ? m / d : u;
    p.per_class.push_back(e);
  }
  // (c) parity of the upper-window count
  const long window = std::count_if(seq.begin(), seq.end(), [&](int r) {
    return r >= d + 1 && r <= 2 * d - 1;
  });
  p.window_parity_counted = static_cast<int>(window % 2);
  p.window_parity_closed = (binom2_parity(d) * binom2_parity(u)) % 2;

  p.all_match = p.window_parity_counted == p.window_parity_closed;
  for (const auto& e : p.per_residue) p.all_match &= e.counted == e.closed_form;
  for (const auto& e : p.per_class) p.all_match &= e.counted == e.closed_form;
  return p;
}

ResidueProfile lemma2_profile(int m, int d) {
  require(m >= 1 && d >= 1 && ((2 * m) % d == 0 || (2 * m + 2) % d == 0),
          "lemma2_profile: d must divide 2m or 2m+2");
  std::vector<int> seq;
  for (int i = 1; i <= m; ++i) seq.push_back(i % d);

  const bool via_2m = (2 * m) % d == 0;
  const long u = via_2m ? 2L * m / d : (2L * m + 2) / d;

  ResidueProfile p;
  // (a) counts per residue; the lemma indexes residues as i = 1..d with
  // i = d standing for the zero class.
  for (int i = 1; i <= d; ++i) {
    ResidueProfile::Entry e;
    e.residue = i % d;
    e.counted = std::count(seq.begin(), seq.end(), i % d);
    if (via_2m) {
      if (u % 2 == 1)
        e.closed_form = i <= d / 2 ? (u + 1) / 2 : (u - 1) / 2;
      else
        e.closed_form = m / d;
    } else {
      if (u % 2 == 1)
        e.closed_form = i <= d / 2 - 1 ? (u + 1) / 2 : (u - 1) / 2;
      else
        e.closed_form = i <= d - 1 ? (m + 1) / d : (m + 1) / d - 1;
    }
    p.per_residue.push_back(e);
  }
  // (b) counts per signed class, canonical values 0..floor(d/2)
  for (int cls = 0; cls <= d / 2; ++cls) {
    ResidueProfile::Entry e;
    e.residue = cls;
    e.counted = std::count_if(seq.begin(), seq.end(), [&](int r) {
      return canonical_residue(r, d) == cls;
    });
    const bool half = d % 2 == 0 && cls == d / 2;
    if (u % 2 == 1) {
      if (via_2m)
        e.closed_form = half ? (u + 1) / 2 : cls == 0 ? (u - 1) / 2 : u;
      else
        e.closed_form = (half || cls == 0) ? (u - 1) / 2 : u;
    } else {
      if (via_2m)
        e.closed_form = (half || cls == 0) ? u / 2 : u;
      else
        e.closed_form = half ? u / 2 : cls == 0 ? u / 2 - 1 : u;
    }
    p.per_class.push_back(e);
  }
  // (c)
  const int lo = (d + 2) / 2;
  const long window = std::count_if(seq.begin(), seq.end(), [&](int r) {
    return r >= lo && r <= d - 1;
  });
  p.window_parity_counted = static_cast<int>(window % 2);
  p.window_parity_closed = (binom2_parity(d - 1) * binom2_parity(u)) % 2;

  p.all_match = p.window_parity_counted == p.window_parity_closed;
  for (const auto& e : p.per_residue) p.all_match &= e.counted == e.closed_form;
  for (const auto& e : p.per_class) p.all_match &= e.counted == e.closed_form;
  return p;
}

}  // namespace tridenom::multisum
