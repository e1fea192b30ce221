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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irslink/link_eval.hpp"
#include "irslink/placement.hpp"
#include "irslink/units.hpp"

namespace irslink {

// One curve of a rate-versus-budget experiment: a deployment order combined
// with a placement policy, or the passive-only benchmark.
enum class SweepScheme {
  tapr_opt,      // grid-search placement per budget point
  tapr_closed,   // closed-form placement per budget point
  tapr_fixed,    // fixed x (one curve per requested x)
  tpar_opt,
  tpar_closed,
  tpar_fixed,
  double_pirs,
};

inline const char* sweep_scheme_token(SweepScheme s) {
  switch (s) {
    case SweepScheme::tapr_opt: return "tapr-opt";
    case SweepScheme::tapr_closed: return "tapr-closed";
    case SweepScheme::tapr_fixed: return "tapr-fixed";
    case SweepScheme::tpar_opt: return "tpar-opt";
    case SweepScheme::tpar_closed: return "tpar-closed";
    case SweepScheme::tpar_fixed: return "tpar-fixed";
    case SweepScheme::double_pirs: return "double-pirs";
  }
  throw std::invalid_argument("sweep_scheme_token: bad scheme value");
}

inline std::optional<SweepScheme> sweep_scheme_from_token(
    const std::string& token) {
  for (SweepScheme s :
       {SweepScheme::tapr_opt, SweepScheme::tapr_closed,
        SweepScheme::tapr_fixed, SweepScheme::tpar_opt,
        SweepScheme::tpar_closed, SweepScheme::tpar_fixed,
        SweepScheme::double_pirs}) {
    if (token == sweep_scheme_token(s)) return s;
  }
  return std::nullopt;
}

// Amplification-power sweep description. The budget axis is inclusive on
// both ends in steps of step_db; every x in fixed_x yields one curve per
// *_fixed scheme.
struct SweepSpec {
  double from_dbm;
  double to_dbm;
  double step_db;
  std::vector<SweepScheme> schemes;
  std::vector<double> fixed_x;
  double grid_step = 0.01;
};

inline void validate(const SweepSpec& s) {
  if (!std::isfinite(s.from_dbm) || !std::isfinite(s.to_dbm) ||
      !(s.step_db > 0.0)) {
    throw std::invalid_argument("sweep: need finite bounds and step > 0");
  }
  if (s.to_dbm < s.from_dbm) {
    throw std::invalid_argument("sweep: to_dbm must be >= from_dbm");
  }
  if (s.schemes.empty()) {
    throw std::invalid_argument("sweep: at least one scheme required");
  }
  if (!(s.grid_step > 0.0)) {
    throw std::invalid_argument("sweep: grid step must be > 0");
  }
  const bool any_fixed =
      std::find(s.schemes.begin(), s.schemes.end(), SweepScheme::tapr_fixed) !=
          s.schemes.end() ||
      std::find(s.schemes.begin(), s.schemes.end(), SweepScheme::tpar_fixed) !=
          s.schemes.end();
  if (any_fixed && s.fixed_x.empty()) {
    throw std::invalid_argument("sweep: fixed schemes need at least one "
                                "fixed x value");
  }
}

// Budget grid points in dBm, both endpoints included.
inline std::vector<double> sweep_points_dbm(const SweepSpec& s) {
  std::vector<double> pts;
  const auto count =
      static_cast<std::size_t>((s.to_dbm - s.from_dbm) / s.step_db + 1e-9);
  for (std::size_t i = 0; i <= count; ++i) {
    pts.push_back(s.from_dbm + static_cast<double>(i) * s.step_db);
  }
  return pts;
}

// One emitted experiment row. Infeasible points keep their row (empty
// numeric cells, status INFEASIBLE) so curves stay aligned across schemes.
struct SweepRow {
  double p_f_dbm;
  std::string scheme;
  std::optional<double> x_ta_m;
  std::optional<double> snr_db;
  std::optional<double> rate_bpshz;
  std::string method;
  std::string status;
};

namespace detail {

inline SweepRow feasible_row(double p_f_dbm, const char* scheme,
                             std::optional<double> x, double snr,
                             const char* method) {
  return {p_f_dbm, scheme, x, linear_to_db(snr), rate(snr), method, "OK"};
}

inline SweepRow infeasible_row(double p_f_dbm, const char* scheme,
                               std::optional<double> x, const char* method) {
  return {p_f_dbm,     scheme, x, std::nullopt, std::nullopt,
          method, "INFEASIBLE"};
}

}  // namespace detail

// Runs the sweep serially in a fixed order (budget-major, then schemes as
// listed, then fixed x values), so output is deterministic byte for byte. The params
// argument supplies everything except P_F, which the sweep axis overwrites
// per point.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec,
                                       const SystemParams& base) {
  validate(spec);
  SystemParams p = base;
  p.P_F = 1.0;  // placeholder so full validation applies; overwritten below
  validate(p);

  // The benchmark's channels and phase design do not depend on the budget;
  // build them once and reuse across the axis.
  std::optional<ChannelSet> bench_ch;
  std::optional<ReflectionDesign> bench_design;
  const bool wants_bench =
      std::find(spec.schemes.begin(), spec.schemes.end(),
                SweepScheme::double_pirs) != spec.schemes.end();
  if (wants_bench) {
    bench_ch = build_channels(Scheme::double_pirs, p, 0.0);
    bench_design = make_design(*bench_ch, p);
  }

  std::vector<SweepRow> rows;
  for (double dbm : sweep_points_dbm(spec)) {
    p.P_F = dbm_to_watt(dbm);
    for (SweepScheme s : spec.schemes) {
      const char* token = sweep_scheme_token(s);
      switch (s) {
        case SweepScheme::tapr_opt:
        case SweepScheme::tpar_opt: {
          const Scheme base_scheme =
              (s == SweepScheme::tapr_opt) ? Scheme::tapr : Scheme::tpar;
          try {
            const PlacementResult r =
                optimize_grid(base_scheme, p, spec.grid_step);
            rows.push_back(detail::feasible_row(dbm, token, r.x_star,
                                                r.snr_star, "grid_search"));
          } catch (const InfeasibleError&) {
            rows.push_back(
                detail::infeasible_row(dbm, token, std::nullopt,
                                       "grid_search"));
          }
          break;
        }
        case SweepScheme::tapr_closed:
        case SweepScheme::tpar_closed: {
          const Scheme base_scheme =
              (s == SweepScheme::tapr_closed) ? Scheme::tapr : Scheme::tpar;
          try {
            const PlacementResult r = closed_form_placement(base_scheme, p);
            rows.push_back(detail::feasible_row(dbm, token, r.x_star,
                                                r.snr_star, "closed_form"));
          } catch (const InfeasibleError&) {
            rows.push_back(
                detail::infeasible_row(dbm, token, std::nullopt,
                                       "closed_form"));
          }
          break;
        }
        case SweepScheme::tapr_fixed:
        case SweepScheme::tpar_fixed: {
          const Scheme base_scheme =
              (s == SweepScheme::tapr_fixed) ? Scheme::tapr : Scheme::tpar;
          for (double x : spec.fixed_x) {
            try {
              if (!(x >= 0.0 && x <= p.D)) {
                throw std::invalid_argument("fixed x outside [0, D]");
              }
              const LinkMetrics m = snr_closed(base_scheme, p, x);
              rows.push_back(
                  detail::feasible_row(dbm, token, x, m.snr, "fixed"));
            } catch (const InfeasibleError&) {
              rows.push_back(detail::infeasible_row(dbm, token, x, "fixed"));
            } catch (const std::invalid_argument&) {
              rows.push_back(detail::infeasible_row(dbm, token, x, "fixed"));
            }
          }
          break;
        }
        case SweepScheme::double_pirs: {
          const LinkMetrics m = evaluate_cascade(*bench_ch, p, *bench_design);
          rows.push_back(detail::feasible_row(dbm, token, std::nullopt, m.snr,
                                              "baseline"));
          break;
        }
      }
    }
  }
  return rows;
}

namespace detail {

// 12 significant digits, C-locale decimal point.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string format_cell(const std::optional<double>& v) {
  return v.has_value() ? format_number(*v) : std::string{};
}

}  // namespace detail

inline std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "p_f_dbm,scheme,x_ta_m,snr_db,rate_bpshz,method,status\n";
  for (const SweepRow& r : rows) {
    out += detail::format_number(r.p_f_dbm);
    out += ',';
    out += r.scheme;
    out += ',';
    out += detail::format_cell(r.x_ta_m);
    out += ',';
    out += detail::format_cell(r.snr_db);
    out += ',';
    out += detail::format_cell(r.rate_bpshz);
    out += ',';
    out += r.method;
    out += ',';
    out += r.status;
    out += '\n';
  }
  return out;
}

// One row of a placement-only sweep: both placement routes side by side.
struct PlacementRow {
  double p_f_dbm;
  std::string scheme;  // "tapr" or "tpar"
  std::optional<double> x_star_grid_m;
  std::optional<double> x_star_closed_m;
};

// Placement-only view of a sweep. Sweep schemes reduce to their deployment
// order (first-appearance order, duplicates collapsed); the benchmark has no
// placement and is skipped.
inline std::vector<PlacementRow> placement_sweep(const SweepSpec& spec,
                                                 const SystemParams& base) {
  validate(spec);
  std::vector<Scheme> bases;
  for (SweepScheme s : spec.schemes) {
    Scheme b;
    switch (s) {
      case SweepScheme::tapr_opt:
      case SweepScheme::tapr_closed:
      case SweepScheme::tapr_fixed:
        b = Scheme::tapr;
        break;
      case SweepScheme::tpar_opt:
      case SweepScheme::tpar_closed:
      case SweepScheme::tpar_fixed:
        b = Scheme::tpar;
        break;
      case SweepScheme::double_pirs:
        continue;
    }
    if (std::find(bases.begin(), bases.end(), b) == bases.end()) {
      bases.push_back(b);
    }
  }
  if (bases.empty()) {
    throw std::invalid_argument(
        "placement sweep: need at least one scheme with a placement");
  }

  SystemParams p = base;
  p.P_F = 1.0;
  validate(p);

  std::vector<PlacementRow> rows;
  for (double dbm : sweep_points_dbm(spec)) {
    p.P_F = dbm_to_watt(dbm);
    for (Scheme b : bases) {
      PlacementRow row{dbm, scheme_name(b), std::nullopt, std::nullopt};
      try {
        row.x_star_grid_m = optimize_grid(b, p, spec.grid_step).x_star;
        row.x_star_closed_m = closed_form_placement(b, p).x_star;
      } catch (const InfeasibleError&) {
        row.x_star_grid_m.reset();
        row.x_star_closed_m.reset();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline std::string to_csv(const std::vector<PlacementRow>& rows) {
  std::string out = "p_f_dbm,scheme,x_star_grid_m,x_star_closed_m\n";
  for (const PlacementRow& r : rows) {
    out += detail::format_number(r.p_f_dbm);
    out += ',';
    out += r.scheme;
    out += ',';
    out += detail::format_cell(r.x_star_grid_m);
    out += ',';
    out += detail::format_cell(r.x_star_closed_m);
    out += '\n';
  }
  return out;
}

}  // namespace irslink
