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

#include "tridenom/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "tridenom/classical.hpp"
#include "tridenom/elliptic.hpp"
#include "tridenom/multisum.hpp"
#include "tridenom/series.hpp"

namespace tridenom::report {

namespace {

using json = nlohmann::ordered_json;
using elliptic::Complex;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_q(Complex q) {
  if (q.imag() == 0.0) return fmt_double(q.real());
  return fmt_double(q.real()) + (q.imag() < 0 ? "" : "+") + fmt_double(q.imag()) + "i";
}

}  // namespace

std::optional<Format> parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "plain") return Format::plain;
  return std::nullopt;
}

std::string Report::render(Format f) const {
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;

  if (f == Format::json) {
    json j;
    j["command"] = command;
    json p = json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["params"] = p;
    json rows = json::array();
    for (const auto& r : results) {
      json row;
      row["instance"] = r.instance;
      row["got"] = r.got;
      row["expected"] = r.expected;
      row["pass"] = r.pass;
      rows.push_back(row);
    }
    j["results"] = rows;
    json s;
    s["total"] = results.size();
    s["passed"] = passed;
    s["failed"] = results.size() - passed;
    s["all_pass"] = all_pass;
    for (const auto& [k, v] : summary_extra) s[k] = v;
    j["summary"] = s;
    return j.dump(2) + "\n";
  }

  if (f == Format::csv) {
    std::ostringstream out;
    out << "instance,got,expected,pass\n";
    for (const auto& r : results)
      out << r.instance << ',' << r.got << ',' << r.expected << ','
          << (r.pass ? "true" : "false") << '\n';
    return out.str();
  }

  std::ostringstream out;
  for (const auto& r : results) {
    if (r.expected.empty())
      out << r.instance << " = " << r.got << '\n';
    else
      out << (r.pass ? "PASS" : "FAIL") << ' ' << r.instance << " got=" << r.got
          << " expected=" << r.expected << '\n';
  }
  out << "summary: total=" << results.size() << " passed=" << passed
      << " failed=" << results.size() - passed;
  for (const auto& [k, v] : summary_extra) out << ' ' << k << '=' << v;
  out << (all_pass ? " all-pass" : " FAILURES") << '\n';
  return out.str();
}

std::string TableReport::render(Format f) const {
  if (f == Format::json) {
    json j;
    j["command"] = "table";
    json p = json::object();
    p["method"] = method;
    p["n_max"] = std::to_string(n_max);
    j["params"] = p;
    json rows = json::array();
    for (std::size_t i = 0; i < ks.size(); ++i) {
      json row;
      row["k"] = ks[i];
      row["counts"] = counts[i];
      rows.push_back(row);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
  }

  if (f == Format::csv) {
    std::ostringstream out;
    out << "k";
    for (long long n = 0; n <= n_max; ++n) out << ',' << n;
    out << '\n';
    for (std::size_t i = 0; i < ks.size(); ++i) {
      out << ks[i];
      for (const auto& c : counts[i]) out << ',' << c;
      out << '\n';
    }
    return out.str();
  }

  std::ostringstream out;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    out << "k=" << ks[i] << ':';
    for (const auto& c : counts[i]) out << ' ' << c;
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

Report run_count(std::string_view method, int k, long long n, int m, int d) {
  if (k < 0 || n < 0) throw UsageError("count: k and n must be >= 0");
  Report rep;
  rep.command = "count";
  rep.params = {{"method", std::string(method)},
                {"k", std::to_string(k)},
                {"n", std::to_string(n)},
                {"m", std::to_string(m)},
                {"d", std::to_string(d)}};

  BigInt value;
  if (method == "oracle") {
    value = series::triangle_count(k, n);
  } else if (method == "classical") {
    if (k == 2) value = classical::t2(n);
    else if (k == 4) value = classical::t4(n);
    else if (k == 8) value = classical::t8(n);
    else throw UsageError("count: classical method needs k in {2, 4, 8}");
  } else if (method == "kw") {
    if (m < 1) throw UsageError("count: kw method needs m >= 1");
    if (k == 4 * m * m) value = multisum::eval_kw_even(m, n);
    else if (k == 4 * m * (m + 1)) value = multisum::eval_kw_odd(m, n);
    else throw UsageError("count: kw method needs k = 4m^2 or 4m(m+1)");
  } else if (method == "mt") {
    if (m < 1 || d < 1) throw UsageError("count: mt method needs m, d >= 1");
    if (multisum::family_valid(multisum::Family::mt1, m, d) && k == 4 * m * m / d)
      value = multisum::eval_mt1(m, d, 2LL * d * n);
    else if (multisum::family_valid(multisum::Family::mt2, m, d) &&
             k == 4 * m * (m + 1) / d)
      value = multisum::eval_mt2(m, d, static_cast<long long>(d) * n);
    else
      throw UsageError("count: mt method needs k = 4m^2/d with d | 2m, or "
                       "k = 4m(m+1)/d with d | 2m or d | 2m+2");
  } else if (method == "gm") {
    if (m < 1 || k != 2 * m) throw UsageError("count: gm method needs k = 2m");
    value = multisum::eval_gm(m, 4LL * m * n);
  } else if (method == "gmo") {
    if (m < 1 || k != 2 * m) throw UsageError("count: gmo method needs k = 2m");
    value = multisum::eval_gmo(m, (2LL * m + 2) * n);
  } else {
    throw UsageError("count: unknown method '" + std::string(method) + "'");
  }

  std::ostringstream inst;
  inst << "triangles k=" << k << " n=" << n << " method=" << method;
  rep.results.push_back({inst.str(), to_decimal(value), "", true});
  rep.all_pass = true;
  return rep;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

namespace {

bool is_x_indexed(multisum::Family f) {
  using multisum::Family;
  switch (f) {
    case Family::mt1:
    case Family::mt2:
    case Family::mt1a:
    case Family::mt1b:
    case Family::mt2a:
    case Family::mt2b:
    case Family::gm:
    case Family::gmo:
      return true;
    default:
      return false;
  }
}

}  // namespace

Report run_verify(std::string_view family, int m_lo, int m_hi, int d,
                  long long x_lo, long long x_hi, int threads) {
  const auto fam = multisum::parse_family(family);
  if (!fam) throw UsageError("verify: unknown family '" + std::string(family) + "'");
  if (m_lo < 1 || m_hi < m_lo || m_hi > 16)
    throw UsageError("verify: need 1 <= m_lo <= m_hi <= 16");
  if (x_lo < 0 || x_hi < x_lo || x_hi > 2000000)
    throw UsageError("verify: need 0 <= x_lo <= x_hi <= 2000000");
  if (threads < 1) threads = default_threads();

  using multisum::Family;
  const bool fixed_m2 =
      *fam == Family::t16 || *fam == Family::t24 || *fam == Family::t42 ||
      *fam == Family::m2_t4_d6 || *fam == Family::m2_t6_d4 ||
      *fam == Family::m2_t8_d3 || *fam == Family::m2_t8_d2 ||
      *fam == Family::m2_t12_d2;
  if (fixed_m2) m_lo = m_hi = 2;

  // Resolve the instance list (m, d) first so an invalid pairing is a usage
  // error, not an empty report.
  std::vector<std::pair<int, int>> instances;
  for (int m = m_lo; m <= m_hi; ++m) {
    if (d == 0) {
      for (int dd : multisum::family_valid_d(*fam, m)) instances.emplace_back(m, dd);
    } else {
      if (!multisum::family_valid(*fam, m, d))
        throw UsageError("verify: invalid (family, m, d) combination");
      instances.emplace_back(m, d);
    }
  }
  if (instances.empty()) throw UsageError("verify: no valid instances in range");

  int kmax = 1;
  long long nmax = 1;
  for (const auto& [m, dd] : instances) {
    kmax = std::max(kmax, multisum::family_triangle_k(*fam, m, dd));
    if (is_x_indexed(*fam))
      nmax = std::max(nmax, x_hi / multisum::family_x_step(*fam, m, dd) + 1);
    else
      nmax = std::max(nmax, x_hi + 1);
  }
  const series::OracleTable oracle(series::OracleTable::Kind::triangles, kmax,
                                   static_cast<std::size_t>(nmax));

  Report rep;
  rep.command = "verify";
  rep.params = {{"family", std::string(family)},
                {"m", std::to_string(m_lo) + ".." + std::to_string(m_hi)},
                {"d", d == 0 ? "all" : std::to_string(d)},
                {"x", std::to_string(x_lo) + ".." + std::to_string(x_hi)},
                {"threads", std::to_string(threads)}};
  rep.all_pass = true;

  for (const auto& [m, dd] : instances) {
    const int k = multisum::family_triangle_k(*fam, m, dd);
    if (is_x_indexed(*fam)) {
      const long long step = multisum::family_x_step(*fam, m, dd);
      const multisum::SweepResult sw = multisum::sweep(*fam, m, dd, x_hi, threads);
      for (long long x = x_lo; x <= x_hi; ++x) {
        const BigInt& got = sw.values[static_cast<std::size_t>(x)];
        const BigInt expected = x % step == 0 ? oracle.count(k, x / step) : BigInt(0);
        const bool pass = got == expected;
        rep.all_pass &= pass;
        std::ostringstream inst;
        inst << multisum::family_name(*fam) << " m=" << m << " d=" << dd
             << " x=" << x;
        rep.results.push_back(
            {inst.str(), to_decimal(got), to_decimal(expected), pass});
      }
    } else {
      for (long long n = x_lo; n <= x_hi; ++n) {
        const BigInt got = multisum::eval_identity(*fam, m, dd, n);
        const BigInt& expected = oracle.count(k, n);
        const bool pass = got == expected;
        rep.all_pass &= pass;
        std::ostringstream inst;
        inst << multisum::family_name(*fam) << " m=" << m << " n=" << n;
        rep.results.push_back(
            {inst.str(), to_decimal(got), to_decimal(expected), pass});
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// pfaffian-check (fuzz)
// ---------------------------------------------------------------------------

namespace {

struct TrialPlan {
  std::string name;
  int size_lo = 1;
  int size_hi = 1;
  bool needs_real_q = false;
  bool supports_flip = false;
};

const TrialPlan* find_plan(std::string_view identity) {
  static const TrialPlan plans[] = {
      {"fd", 1, 4, false, false},      {"fs", 1, 3, false, false},
      {"ep", 1, 3, true, true},        {"op", 1, 2, true, true},
      {"sp", 1, 3, false, false},      {"okp", 1, 2, false, false},
      {"rains", 1, 2, true, false},    {"rains-dual", 1, 2, false, false},
      {"modular", 1, 1, false, false}, {"el", 1, 1, true, false},
      {"ol", 1, 1, false, false},      {"epxo", 1, 2, true, false},
      {"opx", 1, 2, true, false},
  };
  for (const auto& p : plans)
    if (p.name == identity) return &p;
  return nullptr;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xd1342543de82ef95ULL);
  z = (z ^ (z >> 29)) * 0xff51afd7ed558ccdULL;
  return z ^ (z >> 32);
}

std::vector<Complex> sample_points(elliptic::Sampler& rng, int count, double halfwidth) {
  std::vector<Complex> xs(count);
  for (auto& x : xs) x = rng.annulus_point(halfwidth);
  return xs;
}

/// One fuzz trial; PoleError rejections resample with fresh draws.
elliptic::Residual
fuzz_trial(const TrialPlan& plan, int size, const elliptic::EllipticContext& ctx,
           std::uint64_t trial_seed, bool flip) {
  elliptic::Sampler rng(trial_seed);
  const double aq = std::abs(ctx.q);
  // Sub-annulus shrunk 5% from the boundary where a pairwise ratio window
  // applies; the window is |x_i/x_j| in (q^(1/2), q^(-1/2)).
  const double ratio_halfwidth = 0.95 * 0.25 * std::log(1.0 / aq);

  for (int attempt = 0; attempt < 500; ++attempt) {
    try {
      if (plan.name == "fd") {
        auto xs = sample_points(rng, size, ratio_halfwidth);
        auto ys = sample_points(rng, size, ratio_halfwidth);
        const Complex t = rng.annulus_point(ratio_halfwidth);
        return elliptic::verify_frobenius(t, xs, ys, ctx);
      }
      if (plan.name == "fs") {
        auto xs = sample_points(rng, size, ratio_halfwidth);
        auto ys = sample_points(rng, size, ratio_halfwidth);
        return elliptic::verify_fs(xs, ys, ctx);
      }
      if (plan.name == "ep")
        return elliptic::verify_ep(sample_points(rng, 2 * size, ratio_halfwidth),
                                   ctx, flip);
      if (plan.name == "op")
        return elliptic::verify_op(sample_points(rng, 2 * size + 1, ratio_halfwidth),
                                   ctx, flip);
      if (plan.name == "sp")
        return elliptic::verify_schur(sample_points(rng, 2 * size, ratio_halfwidth),
                                      ctx);
      if (plan.name == "okp") {
        auto xs = sample_points(rng, 2 * size, ratio_halfwidth);
        const Complex z = rng.annulus_point(ratio_halfwidth);
        const Complex w = rng.annulus_point(ratio_halfwidth);
        return elliptic::verify_okada(xs, z, w, ctx);
      }
      if (plan.name == "rains")
        return elliptic::verify_rains(sample_points(rng, 2 * size, ratio_halfwidth),
                                      ctx);
      if (plan.name == "rains-dual")
        return elliptic::verify_rains_dual(
            sample_points(rng, 2 * size, ratio_halfwidth), ctx);
      if (plan.name == "modular")
        return elliptic::verify_modular(rng.uniform(0.05, 0.95),
                                        rng.uniform(0.5, 2.0), ctx.tol);
      if (plan.name == "el")
        return elliptic::verify_el(rng.annulus_point(0.95 * 0.5 * std::log(1.0 / aq)),
                                   ctx);
      if (plan.name == "ol") {
        // log|x| uniform in (log q, 0) shrunk 5% off both ends.
        const double w = std::log(1.0 / aq);
        const double lm = -rng.uniform(0.05 * w, 0.95 * w);
        const Complex x = std::polar(std::exp(lm),
                                     rng.uniform(0.0, 2.0 * std::numbers::pi));
        return elliptic::verify_ol(x, ctx);
      }
      if (plan.name == "epxo") {
        // Inner half of the annulus keeps the geometric ratio <= q^(3/8), so
        // 50-trial truncated sums sit far below tolerance.
        const double hw = 0.5 * 0.25 * std::log(1.0 / aq) / (2 * size - 1);
        return elliptic::verify_epxo(size, rng.annulus_point(hw), ctx).residual;
      }
      if (plan.name == "opx") {
        const double hw = 0.5 * 0.25 * std::log(1.0 / aq) / (2 * size);
        return elliptic::verify_opx(size, rng.annulus_point(hw), ctx).residual;
      }
      throw UsageError("pfaffian-check: unhandled identity");
    } catch (const elliptic::PoleError&) {
      continue;  // resample
    }
  }
  throw UsageError("pfaffian-check: could not sample an admissible point");
}

}  // namespace

Report run_fuzz(std::string_view identity, int trials, Complex q,
                std::uint64_t seed, double tol, bool flip) {
  const TrialPlan* plan = find_plan(identity);
  if (!plan) throw UsageError("pfaffian-check: unknown identity '" +
                              std::string(identity) + "'");
  if (trials < 1) throw UsageError("pfaffian-check: trials must be >= 1");
  if (tol <= 0) throw UsageError("pfaffian-check: tol must be positive");
  if (!(std::abs(q) > 0.0 && std::abs(q) < 1.0))
    throw UsageError("pfaffian-check: need 0 < |q| < 1");
  if (plan->needs_real_q && (q.imag() != 0.0 || q.real() <= 0.0))
    throw UsageError("pfaffian-check: identity '" + std::string(identity) +
                     "' uses sqrt(q) and needs real positive q");
  if (flip && !plan->supports_flip)
    throw UsageError("pfaffian-check: --flip only applies to ep and op");

  const elliptic::EllipticContext ctx = elliptic::make_context(q, tol, seed);

  Report rep;
  rep.command = "pfaffian-check";
  rep.params = {{"identity", std::string(identity)},
                {"trials", std::to_string(trials)},
                {"q", fmt_q(q)},
                {"seed", std::to_string(seed)},
                {"tol", fmt_double(tol)},
                {"flip", flip ? "true" : "false"}};
  rep.all_pass = true;

  double max_rel = 0.0;
  for (int size = plan->size_lo; size <= plan->size_hi; ++size) {
    for (int trial = 0; trial < trials; ++trial) {
      const std::uint64_t ts = mix_seed(seed, static_cast<std::uint64_t>(size),
                                        static_cast<std::uint64_t>(trial));
      const elliptic::Residual r = fuzz_trial(*plan, size, ctx, ts, flip);
      max_rel = std::max(max_rel, r.rel);
      // A flipped run is reported as passing when the identity breaks.
      const bool pass = flip ? r.rel > 0.5 : r.rel < tol;
      rep.all_pass &= pass;
      std::ostringstream inst;
      inst << identity;
      if (plan->size_hi > plan->size_lo) inst << " size=" << size;
      inst << " trial=" << trial;
      rep.results.push_back({inst.str(), fmt_double(r.rel),
                             flip ? "> 0.5" : "< " + fmt_double(tol), pass});
    }
  }
  rep.summary_extra = {{"max_residual", fmt_double(max_rel)}};
  return rep;
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

TableReport run_table(std::span<const int> ks, long long n_max,
                      std::string_view method) {
  if (ks.empty()) throw UsageError("table: need at least one k");
  if (n_max < 0 || n_max > 100000) throw UsageError("table: need 0 <= n-max <= 100000");

  TableReport tab;
  tab.ks.assign(ks.begin(), ks.end());
  tab.n_max = n_max;
  tab.method = std::string(method);

  int kmax = 1;
  for (int k : ks) {
    if (k < 0) throw UsageError("table: k must be >= 0");
    kmax = std::max(kmax, k);
  }

  if (method == "oracle") {
    const series::OracleTable oracle(series::OracleTable::Kind::triangles, kmax,
                                     static_cast<std::size_t>(n_max) + 1);
    for (int k : ks) {
      std::vector<std::string> row;
      for (long long n = 0; n <= n_max; ++n) row.push_back(to_decimal(oracle.count(k, n)));
      tab.counts.push_back(std::move(row));
    }
  } else if (method == "classical") {
    for (int k : ks) {
      if (k != 2 && k != 4 && k != 8)
        throw UsageError("table: classical method reaches only k in {2, 4, 8}");
      std::vector<std::string> row;
      for (long long n = 0; n <= n_max; ++n)
        row.push_back(to_decimal(k == 2   ? classical::t2(n)
                                 : k == 4 ? classical::t4(n)
                                          : classical::t8(n)));
      tab.counts.push_back(std::move(row));
    }
  } else if (method == "kw") {
    for (int k : ks) {
      int m_even = 0, m_odd = 0;
      for (int m = 1; 4 * m * m <= k; ++m) {
        if (4 * m * m == k) m_even = m;
        if (4 * m * (m + 1) == k) m_odd = m;
      }
      if (m_even == 0 && m_odd == 0)
        throw UsageError("table: kw method reaches only k = 4m^2 or 4m(m+1)");
      std::vector<std::string> row;
      for (long long n = 0; n <= n_max; ++n)
        row.push_back(to_decimal(m_even ? multisum::eval_kw_even(m_even, n)
                                        : multisum::eval_kw_odd(m_odd, n)));
      tab.counts.push_back(std::move(row));
    }
  } else {
    throw UsageError("table: unknown method '" + std::string(method) + "'");
  }
  return tab;
}

int default_threads() {
  if (const char* env = std::getenv("TRIDENOM_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1 && v <= 256) return v;
  }
  return 1;
}

}  // namespace tridenom::report
