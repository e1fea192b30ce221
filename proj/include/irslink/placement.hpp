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

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "irslink/geometry.hpp"
#include "irslink/link_eval.hpp"
#include "irslink/params.hpp"
#include "irslink/reflection.hpp"

namespace irslink {

enum class PlacementMethod { grid_search, closed_form };

// Outcome of a placement optimization: the chosen active-surface ground
// distance, the closed-form SNR/rate there, and the feasible interval the
// search ran over.
struct PlacementResult {
  double x_star;
  double snr_star;
  double rate_star;
  PlacementMethod method;
  double feasible_lo;
  double feasible_hi;
};

namespace detail {

// Feasible placement interval [lo, D]; throws when the budget admits no
// placement at all.
inline std::pair<double, double> feasible_interval(Scheme scheme,
                                                   const SystemParams& p) {
  const auto lo = min_feasible_x(scheme, p);
  if (!lo.has_value()) {
    throw InfeasibleError("placement: eta < 1 at every x (budget at or below "
                          "the amplification noise floor)");
  }
  if (*lo > p.D) {
    throw InfeasibleError("placement: feasible interval is empty (minimum "
                          "feasible x exceeds D)");
  }
  return {*lo, p.D};
}

}  // namespace detail

// Exhaustive search of the closed-form SNR over an even grid on the feasible
// interval [max(min feasible x, 0), D], both endpoints included, ties broken
// toward the smaller x. Deterministic for a given (scheme, params, step).
inline PlacementResult optimize_grid(Scheme scheme, const SystemParams& p,
                                     double step = 0.01) {
  if (scheme == Scheme::double_pirs) {
    throw std::invalid_argument("optimize_grid: benchmark has no placement");
  }
  if (!(step > 0.0)) {
    throw std::invalid_argument("optimize_grid: step must be > 0");
  }
  const auto [lo, hi] = detail::feasible_interval(scheme, p);

  PlacementResult best{};
  best.method = PlacementMethod::grid_search;
  best.feasible_lo = lo;
  best.feasible_hi = hi;
  best.snr_star = -1.0;

  const auto consider = [&](double x) {
    const double snr = snr_closed(scheme, p, x).snr;
    if (snr > best.snr_star) {
      best.snr_star = snr;
      best.x_star = x;
    }
  };
  const double span = hi - lo;
  const auto count = static_cast<std::size_t>(span / step);  // full steps
  for (std::size_t i = 0; i <= count; ++i) {
    consider(lo + static_cast<double>(i) * step);
  }
  if (lo + static_cast<double>(count) * step < hi) consider(hi);

  best.rate_star = rate(best.snr_star);
  return best;
}

// Closed-form placement from the distance-quadratic approximation, projected
// onto the feasible interval. With a = P_t*sigma2/(P_F*sigmaF2) and
// b = beta*N_p^2/H_P^2:
//   tapr: x = max(a*D/(a + b),     min feasible x)
//   tpar: x = max(a*b*D/(a*b + 1), min feasible x)
// The reported SNR/rate are the exact closed forms at that x, not the
// approximation.
inline PlacementResult closed_form_placement(Scheme scheme,
                                             const SystemParams& p) {
  if (scheme == Scheme::double_pirs) {
    throw std::invalid_argument(
        "closed_form_placement: benchmark has no placement");
  }
  const auto [lo, hi] = detail::feasible_interval(scheme, p);
  const double a = p.P_t * p.sigma2 / (p.P_F * p.sigmaF2);
  const double b =
      p.beta * static_cast<double>(p.N_p) * p.N_p / (p.H_P * p.H_P);
  const double unclamped = (scheme == Scheme::tapr)
                               ? a * p.D / (a + b)
                               : a * b * p.D / (a * b + 1.0);
  PlacementResult r{};
  r.method = PlacementMethod::closed_form;
  r.feasible_lo = lo;
  r.feasible_hi = hi;
  r.x_star = std::min(std::max(unclamped, lo), hi);
  r.snr_star = snr_closed(scheme, p, r.x_star).snr;
  r.rate_star = rate(r.snr_star);
  return r;
}

// Which side of a scheme-preference threshold the parameters sit on.
enum class ThresholdSide { below, at, above };

enum class Preferred { tapr, tpar, tie };

// Difference snr_approx(tapr) - snr_approx(tpar) in its factored form,
//   (beta*N_a/D^2) * (P_t/sigmaF2 - P_F/sigma2) * (H_P^2 - N_p^2*beta)/H_P^2,
// computed so that sitting exactly on either threshold yields exactly zero.
inline double approx_snr_gap(const SystemParams& p) {
  if (!p.has_p_f()) throw ParamError("approx_snr_gap: P_F is unset");
  const double power_factor = p.P_t * p.sigma2 - p.P_F * p.sigmaF2;
  const double size_factor =
      p.H_P * p.H_P - static_cast<double>(p.N_p) * p.N_p * p.beta;
  return p.beta * p.N_a * power_factor * size_factor /
         (p.D * p.D * p.sigma2 * p.sigmaF2 * p.H_P * p.H_P);
}

// Deployment-order comparison. In the regime where both closed-form
// placements are interior (the minimum-feasible-x clamp inactive, so eta > 1
// holds at both optima) the verdict comes from the sign of the factored
// approximate gap; otherwise both schemes are grid-optimized and their exact
// SNRs compared. The two regime flags report where the parameters sit
// relative to the preference thresholds N_p = H_P/sqrt(beta) and
// P_F = P_t*sigma2/sigmaF2 (below either threshold favors the
// Tx->active->passive->Rx order).
struct ComparisonVerdict {
  Preferred preferred;
  double snr_gap;  // tapr minus tpar
  ThresholdSide n_p_side;
  ThresholdSide p_f_side;
  bool used_grid_fallback;
};

inline ComparisonVerdict compare_schemes(const SystemParams& p,
                                         double grid_step = 0.01) {
  if (!p.has_p_f()) throw ParamError("compare_schemes: P_F is unset");

  ComparisonVerdict v{};
  const double np_delta =
      static_cast<double>(p.N_p) * p.N_p * p.beta - p.H_P * p.H_P;
  v.n_p_side = np_delta < 0.0 ? ThresholdSide::below
               : np_delta > 0.0 ? ThresholdSide::above
                                : ThresholdSide::at;
  const double pf_delta = p.P_F * p.sigmaF2 - p.P_t * p.sigma2;
  v.p_f_side = pf_delta < 0.0 ? ThresholdSide::below
               : pf_delta > 0.0 ? ThresholdSide::above
                                : ThresholdSide::at;

  const auto lo_a = min_feasible_x(Scheme::tapr, p);
  const auto lo_b = min_feasible_x(Scheme::tpar, p);
  if (!lo_a.has_value() || !lo_b.has_value()) {
    throw InfeasibleError("compare_schemes: budget below the amplification "
                          "noise floor for both schemes");
  }
  const double a = p.P_t * p.sigma2 / (p.P_F * p.sigmaF2);
  const double b =
      p.beta * static_cast<double>(p.N_p) * p.N_p / (p.H_P * p.H_P);
  const bool interior = (a * p.D / (a + b) > *lo_a) &&
                        (a * b * p.D / (a * b + 1.0) > *lo_b);

  if (interior) {
    v.used_grid_fallback = false;
    v.snr_gap = approx_snr_gap(p);
  } else {
    v.used_grid_fallback = true;
    v.snr_gap = optimize_grid(Scheme::tapr, p, grid_step).snr_star -
                optimize_grid(Scheme::tpar, p, grid_step).snr_star;
  }
  v.preferred = v.snr_gap > 0.0   ? Preferred::tapr
                : v.snr_gap < 0.0 ? Preferred::tpar
                                  : Preferred::tie;
  return v;
}

// Axis along which monotonicity_report sweeps the optimal placement.
enum class SweepAxis { p_f, n_p };

// Grid-search optimal placements along an axis, with every index i flagged
// where x*[i+1] moves against the expected direction by more than one grid
// step (the argmax is only resolved to the grid, so single-step jitter is
// not a violation). Expected directions:
//   tapr: non-increasing in P_F, non-increasing in N_p
//   tpar: non-increasing in P_F, non-decreasing in N_p
struct MonotonicityReport {
  Scheme scheme;
  SweepAxis axis;
  bool expect_non_increasing;
  std::vector<double> axis_values;
  std::vector<double> x_stars;
  std::vector<std::size_t> violations;  // indices i of offending steps

  bool ok() const { return violations.empty(); }
};

inline MonotonicityReport monotonicity_report(Scheme scheme, SystemParams p,
                                              SweepAxis axis,
                                              const std::vector<double>& values,
                                              double step = 0.01) {
  if (scheme == Scheme::double_pirs) {
    throw std::invalid_argument(
        "monotonicity_report: benchmark has no placement");
  }
  MonotonicityReport rep;
  rep.scheme = scheme;
  rep.axis = axis;
  rep.expect_non_increasing =
      (axis == SweepAxis::p_f) || (scheme == Scheme::tapr);
  rep.axis_values = values;
  rep.x_stars.reserve(values.size());
  for (double v : values) {
    if (axis == SweepAxis::p_f) {
      p.P_F = v;
    } else {
      if (v < 1.0 || v != std::floor(v)) {
        throw std::invalid_argument(
            "monotonicity_report: N_p values must be positive integers");
      }
      p.N_p = static_cast<int>(v);
    }
    rep.x_stars.push_back(optimize_grid(scheme, p, step).x_star);
  }
  const double slack = step + 1e-12;
  for (std::size_t i = 0; i + 1 < rep.x_stars.size(); ++i) {
    const double delta = rep.x_stars[i + 1] - rep.x_stars[i];
    if (rep.expect_non_increasing ? (delta > slack) : (delta < -slack)) {
      rep.violations.push_back(i);
    }
  }
  return rep;
}

}  // namespace irslink
