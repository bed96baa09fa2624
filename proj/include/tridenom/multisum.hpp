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

#ifndef TRIDENOM_MULTISUM_HPP
#define TRIDENOM_MULTISUM_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tridenom/bigint.hpp"

namespace tridenom::multisum {

// ---------------------------------------------------------------------------
// Congruence classes up to sign
// ---------------------------------------------------------------------------

/// Representative min(r, n-r) of the residue pair {r, n-r} mod n.
int canonical_residue(long long k, int modulus);

/// Canonical multiset of signed residue classes of an integer vector mod n.
/// Two vectors are congruent up to reordering and sign exactly when their
/// signatures compare equal.
struct CongruenceSignature {
  int modulus = 1;
  std::vector<int> classes;  // sorted canonical residues

  friend bool operator==(const CongruenceSignature&,
                         const CongruenceSignature&) = default;
};

CongruenceSignature signature(std::span<const long long> ks, int modulus);

// ---------------------------------------------------------------------------
// Solution enumeration for k_1 l_1 + ... + k_m l_m = N
// ---------------------------------------------------------------------------

enum class KParity { odd, any };

/// Optional per-index branch constraints: k_i must lie in the signed residue
/// class classes[i] mod modulus, and when two indices share a class the
/// earlier k must be strictly smaller (one representative per unordered
/// assignment).
struct ResidueSpec {
  int modulus = 1;
  std::vector<int> classes;
  bool ordered_same_class = true;
};

struct SolutionConstraint {
  int m = 1;
  long long target = 1;
  KParity k_parity = KParity::odd;  // l_i are odd in every identity in scope
  std::optional<ResidueSpec> residues;
};

struct Solution {
  std::vector<long long> ks;
  std::vector<long long> ls;
};

/// Visits each admissible solution exactly once, in lexicographic order of
/// (k1, l1, k2, l2, ...). Branches whose minimal completion already exceeds
/// the remaining target are pruned.
void enumerate_solutions(const SolutionConstraint& c,
                         const std::function<void(const Solution&)>& visit);

std::vector<Solution> collect_solutions(const SolutionConstraint& c);

// ---------------------------------------------------------------------------
// Identity families
// ---------------------------------------------------------------------------

enum class Family {
  mt1,       // main even identity, signature-filtered sum
  mt2,       // main odd identity, signature-filtered sum
  mt1a,      // reduced form, d odd
  mt1b,      // reduced form, d even
  mt2a,      // reduced form, d odd
  mt2b,      // reduced form, d even
  kw_even,   // 4m^2 triangles
  kw_odd,    // 4m(m+1) triangles
  gm,        // 2m triangles from the d = 2m edge case
  gmo,       // 2m triangles from the d = 2m+2 edge case
  t16,       // printed m = 2 specials
  t24,
  t42,
  m2_t4_d6,  // the five further m = 2 identities
  m2_t6_d4,
  m2_t8_d3,
  m2_t8_d2,
  m2_t12_d2,
};

std::optional<Family> parse_family(std::string_view name);
std::string family_name(Family f);

/// True when the (m, d) pair satisfies the family's divisibility hypotheses.
/// Families with no free d expect d == the fixed value listed by
/// family_fixed_d (or any value when that is 0).
bool family_valid(Family f, int m, int d);

/// Valid d values for a family at a given m, ascending.
std::vector<int> family_valid_d(Family f, int m);

/// How many triangles the family counts at parameters (m, d).
int family_triangle_k(Family f, int m, int d);

/// The identity produces the count at n = x / step with zeros between;
/// n-indexed families (kw/t16/.../m2 list) report step 1.
long long family_x_step(Family f, int m, int d);

// ---------------------------------------------------------------------------
// Theorem evaluators (signature-filtered enumeration)
// ---------------------------------------------------------------------------

/// Weight of one k-vector in the even main identity:
/// sign from residues in [d+1, 2d-1] mod 2d, times the product of k_i over
/// k_i = d (2d), times ((k_j-k_i)/2)^2 over equal classes and
/// ((k_j+k_i)/2)^2 over opposite classes. All k_i must be odd positive.
BigInt term_mt1(std::span<const long long> ks, int d);

/// Right-hand constant of the even main identity (includes the m! factor).
/// Requires d | 2m.
BigInt constant_mt1(int m, int d);

/// The full even evaluation: enumerate solutions of sum k_i l_i = m^2 + x
/// with k, l odd, keep those whose signature mod 2d matches (1,3,...,2m-1),
/// total the weights and divide exactly by the constant. The result equals
/// the count of m^2+x... representations, i.e. the 4m^2/d triangle count at
/// x/2d, and is zero when 2d does not divide x.
BigInt eval_mt1(int m, int d, long long x);

/// Odd-side weight: sign from residues in [(d+1)/2, d-1] mod d, times
/// 2 k_i^3 over k_i = 0 (d), 2 k_i over k_i = d/2 (d), and the unhalved
/// pair squares.
BigInt term_mt2(std::span<const long long> ks, int d);

enum class ConstantBranch { automatic, via_2m, via_2m_plus_2 };

/// Constant of the odd main identity, including m!. When d divides both 2m
/// and 2m+2 (d = 1, 2) the 2m branch is used; the two branches agree there,
/// which is covered by a unit test rather than assumed.
BigInt constant_mt2(int m, int d, ConstantBranch branch = ConstantBranch::automatic);

BigInt eval_mt2(int m, int d, long long x);

// ---------------------------------------------------------------------------
// Reduced (per-index constrained) evaluators
// ---------------------------------------------------------------------------

/// Exact rational constant: num/den with den a power of two.
struct Ratio {
  BigInt num;
  BigInt den;
};

/// Constant of a reduced-form family (no m!, unhalved weights).
Ratio corollary_constant(Family f, int m, int d);

/// Reduced-form evaluation with the per-index residue constraints pushed
/// into the enumerator. Produces the same value as the matching main
/// evaluator on the shared validity range.
BigInt eval_corollary(Family f, int m, int d, long long x);

// ---------------------------------------------------------------------------
// Limit cases, printed specials
// ---------------------------------------------------------------------------

/// 4m^2 triangles: weights prod k_i prod (k_j^2-k_i^2)^2 over odd k, l with
/// sum k_i l_i = 2n + m^2, divided by 4^{m(m-1)} m! prod_{j<2m} j!.
BigInt eval_kw_even(int m, long long n);

/// 4m(m+1) triangles: weights prod k_i^3 prod (k_j^2-k_i^2)^2 over positive
/// k, odd l with sum = n + m(m+1)/2, divided by m! prod_{j<=2m} j! / 2^m.
BigInt eval_kw_odd(int m, long long n);

/// Pure sign counts at the extreme divisors; always >= 0 and zero unless
/// 4m | x (resp. 2m+2 | x).
BigInt eval_gm(int m, long long x);
BigInt eval_gmo(int m, long long x);

/// The printed two-pair identities evaluated verbatim, n-indexed:
/// t16, t24, t42 and the five further m = 2 displays.
BigInt eval_m2_identity(Family name, long long n);

/// Uniform n-indexed entry point used by the CLI and the verify runner.
/// For x-indexed families this evaluates at x = step * n.
BigInt eval_identity(Family f, int m, int d, long long n);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

/// Values of an x-indexed family for every x in [0, xmax], computed in one
/// enumeration pass. The k-vector stream may be partitioned across threads;
/// the result is bit-identical for any worker count. Exactness of every
/// internal division is checked.
struct SweepResult {
  Family family;
  int m = 0;
  int d = 0;
  long long xmax = 0;
  std::vector<BigInt> values;  // values[x]
};

SweepResult sweep(Family f, int m, int d, long long xmax, int threads = 1);

// ---------------------------------------------------------------------------
// Residue-count lemmas
// ---------------------------------------------------------------------------

/// Residue statistics of a canonical sequence with both the directly counted
/// and the closed-form value for each report line.
struct ResidueProfile {
  struct Entry {
    int residue = 0;
    long long counted = 0;
    long long closed_form = 0;
  };
  std::vector<Entry> per_residue;   // part (a)
  std::vector<Entry> per_class;     // part (b), signed classes
  int window_parity_counted = 0;    // part (c)
  int window_parity_closed = 0;
  bool all_match = false;
};

/// Sequence (1, 3, ..., 2m-1) mod 2d; requires d | 2m.
ResidueProfile lemma1_profile(int m, int d);

/// Sequence (1, 2, ..., m) mod d; requires d | 2m or d | 2m+2.
ResidueProfile lemma2_profile(int m, int d);

}  // namespace tridenom::multisum

#endif  // TRIDENOM_MULTISUM_HPP
