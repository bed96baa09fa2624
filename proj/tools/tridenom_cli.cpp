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

// Command-line front end. Talks to the library exclusively through the
// C API in tridenom.h.
//
// Exit codes: 0 all checks passed, 1 at least one mismatch or residual
// failure, 2 usage or domain error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tridenom.h"

namespace {

struct Range {
  long lo = 0;
  long hi = 0;
};

bool parse_range(const std::string& text, Range* out) {
  const auto pos = text.find("..");
  try {
    if (pos == std::string::npos) {
      out->lo = out->hi = std::stol(text);
    } else {
      out->lo = std::stol(text.substr(0, pos));
      out->hi = std::stol(text.substr(pos + 2));
    }
  } catch (...) {
    return false;
  }
  return out->lo <= out->hi;
}

int fail_usage(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

/// Prints the report (when any) and maps a library status onto the exit
/// contract. pass_known: the command distinguishes pass/fail via all_pass.
int finish(trd_status status, char* report, bool pass_known, int all_pass) {
  if (report) {
    std::fputs(report, stdout);
    trd_string_free(report);
  }
  if (status != TRD_OK) {
    std::cerr << "error: " << trd_status_str(status) << "\n";
    return 2;
  }
  if (pass_known && !all_pass) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tridenom: exact and numeric checks for triangular-number "
               "and elliptic pfaffian identities"};
  app.require_subcommand(1);

  // ---- count ----
  auto* count = app.add_subcommand("count", "compute one triangle count");
  int c_k = 0, c_m = 0, c_d = 0;
  long c_n = 0;
  std::string c_method = "oracle", c_format = "plain";
  count->add_option("--k", c_k, "number of triangles")->required();
  count->add_option("--n", c_n, "target integer")->required();
  count->add_option("--method", c_method, "oracle|classical|kw|mt|gm|gmo");
  count->add_option("--m", c_m, "identity parameter m");
  count->add_option("--d", c_d, "identity parameter d");
  count->add_option("--format", c_format, "json|csv|plain");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "identity-vs-oracle sweep");
  std::string v_family, v_m = "1", v_d = "all", v_x = "0..60", v_format = "json";
  int v_threads = 0;
  verify->add_option("--family", v_family, "identity family")->required();
  verify->add_option("--m", v_m, "m or range lo..hi");
  verify->add_option("--d", v_d, "divisor d, or 'all'");
  verify->add_option("--x", v_x, "x (or n) range lo..hi");
  verify->add_option("--threads", v_threads, "worker threads (default: TRIDENOM_THREADS or 1)");
  verify->add_option("--format", v_format, "json|csv|plain");

  // ---- pfaffian-check ----
  auto* fuzz = app.add_subcommand("pfaffian-check",
                                  "randomized residual check of one elliptic identity");
  std::string f_identity, f_format = "json";
  int f_trials = 50;
  double f_q = 0.3, f_q_imag = 0.0, f_tol = 1e-9;
  unsigned long long f_seed = 42;
  bool f_flip = false;
  fuzz->add_option("--identity", f_identity,
                   "fd|fs|ep|op|sp|okp|rains|rains-dual|modular|el|ol|epxo|opx")
      ->required();
  fuzz->add_option("--trials", f_trials, "trials per size");
  fuzz->add_option("--q", f_q, "nome (real part)");
  fuzz->add_option("--q-imag", f_q_imag, "nome imaginary part");
  fuzz->add_option("--seed", f_seed, "RNG seed");
  fuzz->add_option("--tol", f_tol, "relative residual threshold");
  fuzz->add_flag("--flip", f_flip, "negate the closed side of ep/op");
  fuzz->add_option("--format", f_format, "json|csv|plain");

  // ---- table ----
  auto* table = app.add_subcommand("table", "emit a grid of triangle counts");
  std::string t_ks, t_method = "oracle", t_format = "csv";
  long t_nmax = 10;
  table->add_option("--k", t_ks, "comma-separated k list")->required();
  table->add_option("--n-max", t_nmax, "largest n");
  table->add_option("--method", t_method, "oracle|classical|kw");
  table->add_option("--format", t_format, "json|csv|plain");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (count->parsed()) {
    char* report = nullptr;
    const trd_status s = trd_run_count(c_method.c_str(), c_k, c_n, c_m, c_d,
                                       c_format.c_str(), &report);
    return finish(s, report, false, 1);
  }

  if (verify->parsed()) {
    Range m_range, x_range;
    if (!parse_range(v_m, &m_range)) return fail_usage("bad --m range");
    if (!parse_range(v_x, &x_range)) return fail_usage("bad --x range");
    int d = 0;
    if (v_d != "all") {
      try {
        d = std::stoi(v_d);
      } catch (...) {
        return fail_usage("bad --d value");
      }
    }
    char* report = nullptr;
    int all_pass = 0;
    const trd_status s = trd_run_verify(
        v_family.c_str(), static_cast<int>(m_range.lo), static_cast<int>(m_range.hi),
        d, x_range.lo, x_range.hi, v_threads, v_format.c_str(), &report, &all_pass);
    return finish(s, report, true, all_pass);
  }

  if (fuzz->parsed()) {
    char* report = nullptr;
    int all_pass = 0;
    const trd_status s =
        trd_run_fuzz(f_identity.c_str(), f_trials, f_q, f_q_imag, f_seed, f_tol,
                     f_flip ? 1 : 0, f_format.c_str(), &report, &all_pass);
    return finish(s, report, true, all_pass);
  }

  if (table->parsed()) {
    std::vector<int> ks;
    std::stringstream ss(t_ks);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        ks.push_back(std::stoi(item));
      } catch (...) {
        return fail_usage("bad --k list");
      }
    }
    if (ks.empty()) return fail_usage("empty --k list");
    char* report = nullptr;
    const trd_status s = trd_run_table(ks.data(), static_cast<int>(ks.size()),
                                       t_nmax, t_method.c_str(), t_format.c_str(),
                                       &report);
    return finish(s, report, false, 1);
  }

  return 2;
}
