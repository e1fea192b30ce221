// SPDX-License-Identifier: Apache-2.0
//
// irslink — link-level simulator for a point-to-point link aided by one
// active and one passive intelligent reflecting surface.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "irslink/units.hpp"

namespace irslink {

// Raised for anything wrong with a parameter set or a parameter document:
// unknown/duplicate keys, malformed numbers, out-of-range values.
class ParamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Full system description. Distances in meters, powers in watts, `beta` is
// the dimensionless channel power gain at 1 m reference distance. The
// amplification power budget P_F is deliberately left unset by
// default_params(): it is the quantity experiments sweep, so callers (or the
// sweep driver) must supply it.
struct SystemParams {
  double D = 30.0;         // Tx -> Rx ground distance
  double H_A = 6.0;        // active-surface altitude
  double H_P = 5.0;        // passive-surface altitude
  double lambda = 0.087;   // carrier wavelength
  double beta = 5.011872336272725e-05;  // reference gain, -43 dB
  double P_t = 0.1;        // transmit power (20 dBm)
  double P_F = std::numeric_limits<double>::quiet_NaN();  // amplifier budget
  double sigma2 = 1e-11;   // receiver noise power (-80 dBm)
  double sigmaF2 = 4e-11;  // amplification noise power (4 * sigma2)
  int N_a = 450;           // active-surface element count
  int N_p = 600;           // passive-surface element count
  double delta_A = 0.0435;   // active-surface element spacing (lambda/2)
  double delta_P = 0.0435;   // passive-surface element spacing (lambda/2)

  bool has_p_f() const { return std::isfinite(P_F); }
};

inline SystemParams default_params() { return SystemParams{}; }

// Validates every invariant a parameter set must satisfy. When `require_p_f`
// is false an unset P_F passes (the sweep driver fills it in per point); a
// *set* but non-positive P_F always fails.
inline void validate(const SystemParams& p, bool require_p_f = true) {
  auto positive = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw ParamError(std::string(name) + " must be finite and > 0");
    }
  };
  positive(p.D, "D");
  positive(p.H_A, "H_A");
  positive(p.H_P, "H_P");
  positive(p.lambda, "lambda");
  positive(p.beta, "beta");
  positive(p.P_t, "P_t");
  positive(p.sigma2, "sigma2");
  positive(p.sigmaF2, "sigmaF2");
  positive(p.delta_A, "delta_A");
  positive(p.delta_P, "delta_P");
  if (p.N_a < 1) throw ParamError("N_a must be >= 1");
  if (p.N_p < 1) throw ParamError("N_p must be >= 1");
  if (require_p_f && !p.has_p_f()) {
    throw ParamError("P_F is unset (required; supply P_F or P_F_dbm)");
  }
  if (!require_p_f && !p.has_p_f()) return;
  if (p.has_p_f()) positive(p.P_F, "P_F");
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

inline double parse_double(std::string_view v, int line) {
  std::string buf(v);
  char* end = nullptr;
  errno = 0;
  double out = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || buf.empty() || errno == ERANGE) {
    throw ParamError("line " + std::to_string(line) + ": bad number '" +
                     buf + "'");
  }
  return out;
}

inline int parse_int(std::string_view v, int line) {
  std::string buf(v);
  int out = 0;
  auto [ptr, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), out);
  if (ec != std::errc{} || ptr != buf.data() + buf.size()) {
    throw ParamError("line " + std::to_string(line) + ": bad integer '" +
                     buf + "'");
  }
  return out;
}

}  // namespace detail

// Loads a flat `key = value` document ('#' starts a comment, blank lines
// ignored). Keys mirror the SystemParams field names; powers additionally
// accept a `_dbm` suffix and beta a `_db` suffix, converted on load. Unknown
// keys are rejected, as is setting the same field twice (including via both
// the linear and the dB-suffixed spelling). Omitted keys keep their defaults.
inline SystemParams load_params(std::string_view text, bool require_p_f = true) {
  SystemParams p = default_params();
  std::set<std::string> seen;
  auto mark = [&seen](const std::string& field, int line) {
    if (!seen.insert(field).second) {
      throw ParamError("line " + std::to_string(line) + ": field '" + field +
                       "' set more than once");
    }
  };

  int line_no = 0;
  std::string_view rest = text;
  while (!rest.empty()) {
    std::string_view line = rest.substr(0, rest.find('\n'));
    rest.remove_prefix(line.size() < rest.size() ? line.size() + 1
                                                 : rest.size());
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParamError("line " + std::to_string(line_no) +
                       ": expected 'key = value'");
    }
    std::string key(detail::trim(line.substr(0, eq)));
    std::string_view val = detail::trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) {
      throw ParamError("line " + std::to_string(line_no) +
                       ": expected 'key = value'");
    }

    if (key == "D") { mark("D", line_no); p.D = detail::parse_double(val, line_no); }
    else if (key == "H_A") { mark("H_A", line_no); p.H_A = detail::parse_double(val, line_no); }
    else if (key == "H_P") { mark("H_P", line_no); p.H_P = detail::parse_double(val, line_no); }
    else if (key == "lambda") { mark("lambda", line_no); p.lambda = detail::parse_double(val, line_no); }
    else if (key == "beta") { mark("beta", line_no); p.beta = detail::parse_double(val, line_no); }
    else if (key == "beta_db") { mark("beta", line_no); p.beta = db_to_linear(detail::parse_double(val, line_no)); }
    else if (key == "P_t") { mark("P_t", line_no); p.P_t = detail::parse_double(val, line_no); }
    else if (key == "P_t_dbm") { mark("P_t", line_no); p.P_t = dbm_to_watt(detail::parse_double(val, line_no)); }
    else if (key == "P_F") { mark("P_F", line_no); p.P_F = detail::parse_double(val, line_no); }
    else if (key == "P_F_dbm") { mark("P_F", line_no); p.P_F = dbm_to_watt(detail::parse_double(val, line_no)); }
    else if (key == "sigma2") { mark("sigma2", line_no); p.sigma2 = detail::parse_double(val, line_no); }
    else if (key == "sigma2_dbm") { mark("sigma2", line_no); p.sigma2 = dbm_to_watt(detail::parse_double(val, line_no)); }
    else if (key == "sigmaF2") { mark("sigmaF2", line_no); p.sigmaF2 = detail::parse_double(val, line_no); }
    else if (key == "sigmaF2_dbm") { mark("sigmaF2", line_no); p.sigmaF2 = dbm_to_watt(detail::parse_double(val, line_no)); }
    else if (key == "N_a") { mark("N_a", line_no); p.N_a = detail::parse_int(val, line_no); }
    else if (key == "N_p") { mark("N_p", line_no); p.N_p = detail::parse_int(val, line_no); }
    else if (key == "delta_A") { mark("delta_A", line_no); p.delta_A = detail::parse_double(val, line_no); }
    else if (key == "delta_P") { mark("delta_P", line_no); p.delta_P = detail::parse_double(val, line_no); }
    else {
      throw ParamError("line " + std::to_string(line_no) + ": unknown key '" +
                       key + "'");
    }
  }

  validate(p, require_p_f);
  return p;
}

// Serializes with enough digits (%.17g) that load_params(serialize_params(p))
// reproduces every double bit-exactly. An unset P_F is omitted.
inline std::string serialize_params(const SystemParams& p) {
  char buf[64];
  std::string out = "# irslink system parameters\n";
  auto emit = [&out, &buf](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%s = %.17g\n", key, v);
    out += buf;
  };
  emit("D", p.D);
  emit("H_A", p.H_A);
  emit("H_P", p.H_P);
  emit("lambda", p.lambda);
  emit("beta", p.beta);
  emit("P_t", p.P_t);
  if (p.has_p_f()) emit("P_F", p.P_F);
  emit("sigma2", p.sigma2);
  emit("sigmaF2", p.sigmaF2);
  std::snprintf(buf, sizeof buf, "N_a = %d\n", p.N_a);
  out += buf;
  std::snprintf(buf, sizeof buf, "N_p = %d\n", p.N_p);
  out += buf;
  emit("delta_A", p.delta_A);
  emit("delta_P", p.delta_P);
  return out;
}

}  // namespace irslink
