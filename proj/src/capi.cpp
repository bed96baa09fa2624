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

#include "tridenom.h"

#include <complex>
#include <cstring>
#include <new>
#include <string>

#include "tridenom/classical.hpp"
#include "tridenom/elliptic.hpp"
#include "tridenom/multisum.hpp"
#include "tridenom/report.hpp"
#include "tridenom/series.hpp"

using tridenom::BigInt;

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(::operator new(s.size() + 1, std::nothrow));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

trd_status set_string(char** out, const std::string& s) {
  if (!out) return TRD_EINVAL;
  *out = dup_string(s);
  return *out ? TRD_OK : TRD_EINTERNAL;
}

/// Runs the wrapped callable and folds C++ error types onto status codes.
template <typename Fn>
trd_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const tridenom::InexactDivisionError&) {
    return TRD_EINEXACT;
  } catch (const tridenom::report::UsageError&) {
    return TRD_EINVAL;
  } catch (const std::out_of_range&) {
    return TRD_ERANGE;
  } catch (const std::domain_error&) {
    return TRD_EDOMAIN;
  } catch (const std::invalid_argument&) {
    return TRD_EINVAL;
  } catch (...) {
    return TRD_EINTERNAL;
  }
}

trd_status parse_format_or_fail(const char* format,
                                tridenom::report::Format* out) {
  if (!format) return TRD_EINVAL;
  const auto f = tridenom::report::parse_format(format);
  if (!f) return TRD_EINVAL;
  *out = *f;
  return TRD_OK;
}

}  // namespace

struct trd_oracle {
  tridenom::series::OracleTable table;
};

extern "C" {

const char* trd_version(void) { return "1.0.0"; }

const char* trd_status_str(trd_status status) {
  switch (status) {
    case TRD_OK: return "ok";
    case TRD_EINVAL: return "invalid argument";
    case TRD_EDOMAIN: return "domain error";
    case TRD_EINEXACT: return "inexact division (implementation bug)";
    case TRD_ERANGE: return "out of range";
    case TRD_EINTERNAL: return "internal error";
  }
  return "unknown status";
}

void trd_string_free(char* s) { ::operator delete(s); }

trd_status trd_oracle_new(const char* kind, int kmax, long nmax,
                          trd_oracle** out) {
  if (!kind || !out) return TRD_EINVAL;
  return guarded([&] {
    tridenom::series::OracleTable::Kind k;
    if (std::strcmp(kind, "triangles") == 0)
      k = tridenom::series::OracleTable::Kind::triangles;
    else if (std::strcmp(kind, "squares") == 0)
      k = tridenom::series::OracleTable::Kind::squares;
    else
      return TRD_EINVAL;
    if (kmax < 1 || nmax < 1) return TRD_EINVAL;
    *out = new trd_oracle{tridenom::series::OracleTable(
        k, kmax, static_cast<std::size_t>(nmax))};
    return TRD_OK;
  });
}

void trd_oracle_free(trd_oracle* oracle) { delete oracle; }

trd_status trd_oracle_count(const trd_oracle* oracle, int k, long n,
                            char** out_decimal) {
  if (!oracle) return TRD_EINVAL;
  return guarded([&] {
    return set_string(out_decimal, tridenom::to_decimal(oracle->table.count(k, n)));
  });
}

trd_status trd_triangle_count(int k, long n, char** out_decimal) {
  return guarded([&] {
    return set_string(out_decimal,
                      tridenom::to_decimal(tridenom::series::triangle_count(k, n)));
  });
}

trd_status trd_square_count(int k, long n, char** out_decimal) {
  return guarded([&] {
    return set_string(out_decimal,
                      tridenom::to_decimal(tridenom::series::square_count(k, n)));
  });
}

trd_status trd_classical(const char* name, long n, char** out_decimal) {
  if (!name) return TRD_EINVAL;
  return guarded([&]() -> trd_status {
    const std::string fn = name;
    BigInt v;
    if (fn == "t2") v = tridenom::classical::t2(n);
    else if (fn == "t4") v = tridenom::classical::t4(n);
    else if (fn == "t8") v = tridenom::classical::t8(n);
    else if (fn == "s2") v = tridenom::classical::s2(n);
    else if (fn == "s4") v = tridenom::classical::s4(n);
    else if (fn == "s8") v = tridenom::classical::s8(n);
    else return TRD_EINVAL;
    return set_string(out_decimal, tridenom::to_decimal(v));
  });
}

trd_status trd_eval_identity(const char* family, int m, int d, long n,
                             char** out_decimal) {
  if (!family) return TRD_EINVAL;
  return guarded([&]() -> trd_status {
    const auto f = tridenom::multisum::parse_family(family);
    if (!f) return TRD_EINVAL;
    if (!tridenom::multisum::family_valid(*f, m, d)) return TRD_EDOMAIN;
    return set_string(out_decimal, tridenom::to_decimal(
                                       tridenom::multisum::eval_identity(*f, m, d, n)));
  });
}

trd_status trd_pfaffian(const double* entries_re_im, int dim, double out[2]) {
  if (!entries_re_im || !out || dim < 0) return TRD_EINVAL;
  return guarded([&] {
    tridenom::elliptic::SkewMatrix a = tridenom::elliptic::SkewMatrix::zero(dim);
    for (int i = 0; i < dim * dim; ++i)
      a.entries[static_cast<std::size_t>(i)] =
          std::complex<double>(entries_re_im[2 * i], entries_re_im[2 * i + 1]);
    const std::complex<double> pf = tridenom::elliptic::pfaffian(a);
    out[0] = pf.real();
    out[1] = pf.imag();
    return TRD_OK;
  });
}

trd_status trd_theta(double x_re, double x_im, double q_re, double q_im,
                     double tol, double out[2]) {
  if (!out) return TRD_EINVAL;
  return guarded([&] {
    const auto ctx = tridenom::elliptic::make_context({q_re, q_im}, tol);
    const std::complex<double> v = tridenom::elliptic::theta({x_re, x_im}, ctx);
    out[0] = v.real();
    out[1] = v.imag();
    return TRD_OK;
  });
}

trd_status trd_run_count(const char* method, int k, long n, int m, int d,
                         const char* format, char** out_report) {
  if (!method) return TRD_EINVAL;
  tridenom::report::Format f;
  if (trd_status s = parse_format_or_fail(format, &f); s != TRD_OK) return s;
  return guarded([&] {
    const auto rep = tridenom::report::run_count(method, k, n, m, d);
    return set_string(out_report, rep.render(f));
  });
}

trd_status trd_run_verify(const char* family, int m_lo, int m_hi, int d,
                          long x_lo, long x_hi, int threads,
                          const char* format, char** out_report,
                          int* all_pass) {
  if (!family || !all_pass) return TRD_EINVAL;
  tridenom::report::Format f;
  if (trd_status s = parse_format_or_fail(format, &f); s != TRD_OK) return s;
  return guarded([&] {
    const auto rep =
        tridenom::report::run_verify(family, m_lo, m_hi, d, x_lo, x_hi, threads);
    *all_pass = rep.all_pass ? 1 : 0;
    return set_string(out_report, rep.render(f));
  });
}

trd_status trd_run_fuzz(const char* identity, int trials, double q_re,
                        double q_im, unsigned long long seed, double tol,
                        int flip, const char* format, char** out_report,
                        int* all_pass) {
  if (!identity || !all_pass) return TRD_EINVAL;
  tridenom::report::Format f;
  if (trd_status s = parse_format_or_fail(format, &f); s != TRD_OK) return s;
  return guarded([&] {
    const auto rep = tridenom::report::run_fuzz(identity, trials, {q_re, q_im},
                                                seed, tol, flip != 0);
    *all_pass = rep.all_pass ? 1 : 0;
    return set_string(out_report, rep.render(f));
  });
}

trd_status trd_run_table(const int* ks, int n_ks, long n_max,
                         const char* method, const char* format,
                         char** out_report) {
  if (!ks || n_ks < 1 || !method) return TRD_EINVAL;
  tridenom::report::Format f;
  if (trd_status s = parse_format_or_fail(format, &f); s != TRD_OK) return s;
  return guarded([&] {
    const auto tab = tridenom::report::run_table(
        std::span<const int>(ks, static_cast<std::size_t>(n_ks)), n_max, method);
    return set_string(out_report, tab.render(f));
  });
}

}  // extern "C"
