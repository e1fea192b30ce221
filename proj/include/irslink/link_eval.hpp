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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "irslink/channel.hpp"
#include "irslink/geometry.hpp"
#include "irslink/params.hpp"
#include "irslink/reflection.hpp"

namespace irslink {

// End-to-end link budget decomposition at the receiver. All powers in watts.
// snr = signal_power / (airs_noise_power + rx_noise_power) and
// rate = log2(1 + snr), exactly for the matrix route and to rounding for the
// closed forms (which compute snr in its fully reduced algebraic shape).
struct LinkMetrics {
  double signal_power;
  double airs_noise_power;  // amplification noise forwarded to the Rx
  double rx_noise_power;
  double snr;
  double rate;  // bit/s/Hz
};

inline double rate(double snr) {
  if (!std::isfinite(snr) || snr < 0.0) {
    throw std::domain_error("rate: snr must be finite and >= 0");
  }
  return std::log2(1.0 + snr);
}

namespace detail {

inline LinkMetrics metrics_from(double signal, double airs_noise,
                                double rx_noise) {
  LinkMetrics m;
  m.signal_power = signal;
  m.airs_noise_power = airs_noise;
  m.rx_noise_power = rx_noise;
  m.snr = signal / (airs_noise + rx_noise);
  m.rate = rate(m.snr);
  return m;
}

}  // namespace detail

// Ground-truth evaluation straight from the channel matrices. The emitted
// symbol power is P_t (P_t + P_F for the passive benchmark, which spends the
// whole budget at the Tx); the amplification noise reaches the receiver
// through every block downstream of the active surface. Verifies that the
// design respects eta >= 1 and the amplification power budget before
// evaluating.
inline LinkMetrics evaluate_cascade(const ChannelSet& ch,
                                    const SystemParams& p,
                                    const ReflectionDesign& d) {
  if (d.phi1.size() != ch.n1() || d.phi2.size() != ch.n2()) {
    throw std::invalid_argument("evaluate_cascade: design/channel size mismatch");
  }
  if (!p.has_p_f()) throw ParamError("evaluate_cascade: P_F is unset");

  if (ch.scheme == Scheme::double_pirs) {
    if (d.eta != 1.0) {
      throw InfeasibleError("evaluate_cascade: benchmark requires eta = 1");
    }
  } else {
    if (!(d.eta >= 1.0 - 1e-12)) {
      throw InfeasibleError("evaluate_cascade: eta < 1 is not realizable");
    }
    const double used = amplification_power(ch, d, p);
    if (used > p.P_F * (1.0 + 1e-6)) {
      throw InfeasibleError(
          "evaluate_cascade: design exceeds the amplification power budget");
    }
  }

  const Eigen::VectorXcd u1 = unit_phasors(d.phi1);
  const Eigen::VectorXcd u2 = unit_phasors(d.phi2);

  // h3 * diag(u2) * s12, a row vector over the first surface's elements.
  const Eigen::RowVectorXcd after2 = ch.h3.cwiseProduct(u2.transpose());
  const Eigen::RowVectorXcd row = after2 * ch.s12;
  const Eigen::RowVectorXcd downstream1 = row.cwiseProduct(u1.transpose());
  const std::complex<double> cascade = downstream1 * ch.g1;

  double tx_power = p.P_t;
  double airs_noise = 0.0;
  switch (ch.scheme) {
    case Scheme::tapr:
      // Amplifier sits at the first surface; its noise traverses everything
      // after it: sigmaF2 * eta^2 * |h3 diag(u2) s12 diag(u1)|^2.
      airs_noise = p.sigmaF2 * d.eta * d.eta * downstream1.squaredNorm();
      break;
    case Scheme::tpar:
      // Amplifier sits at the second surface; only the last hop follows it.
      airs_noise = p.sigmaF2 * d.eta * d.eta * after2.squaredNorm();
      break;
    case Scheme::double_pirs:
      tx_power = p.P_t + p.P_F;
      break;
  }

  const double amp2 = d.eta * d.eta * std::norm(cascade);
  return detail::metrics_from(tx_power * amp2, airs_noise, p.sigma2);
}

// Matrix-route SNR at one placement under a given design.
inline LinkMetrics snr_matrix(Scheme scheme, const SystemParams& p,
                              double x_ta, const ReflectionDesign& d) {
  return evaluate_cascade(build_channels(scheme, p, x_ta), p, d);
}

// Closed-form SNR under optimal phasing and the budget-exhausting
// amplification factor. With squared hop distances d1^2 (feed) and d2^2
// (exit) around the active surface and the constants
//   C1 = sigmaF2 * P_F * beta * N_p^2
//   C2 = sigma2 * P_t * H_P^2
//   C3 = H_P^2 * sigmaF2 * sigma2 / beta
// the two deployment orders give
//   tapr: snr = P_t*P_F*beta^2*N_a*N_p^2 / (C1*dTA^2 + C2*dAP^2 + C3*dTA^2*dAP^2)
//   tpar: snr = P_t*P_F*beta^2*N_a*N_p^2 /
//               (P_F*sigmaF2*H_P^2*dPA^2 + P_t*sigma2*beta*N_p^2*dAR^2
//                + C3*dPA^2*dAR^2)
// Component powers are reported alongside so the full LinkMetrics
// decomposition stays meaningful.
inline LinkMetrics snr_closed(Scheme scheme, const SystemParams& p,
                              double x_ta) {
  if (scheme == Scheme::double_pirs) {
    throw std::invalid_argument(
        "snr_closed: no closed form for the benchmark; use snr_matrix");
  }
  if (!p.has_p_f()) throw ParamError("snr_closed: P_F is unset");
  if (!(x_ta >= 0.0 && x_ta <= p.D)) {
    throw std::invalid_argument("snr_closed: x_ta outside [0, D]");
  }
  const auto x_min = min_feasible_x(scheme, p);
  if (!x_min.has_value()) {
    throw InfeasibleError("snr_closed: eta < 1 at every placement");
  }
  if (x_ta < *x_min) {
    throw InfeasibleError("snr_closed: x_ta below the minimum feasible "
                          "placement for this budget");
  }

  const double hp2 = p.H_P * p.H_P;
  const double np2 = static_cast<double>(p.N_p) * p.N_p;
  const double numerator = p.P_t * p.P_F * p.beta * p.beta * p.N_a * np2;
  const double c3 = hp2 * p.sigmaF2 * p.sigma2 / p.beta;
  const double eta = amplification_factor(scheme, p, x_ta);
  const double eta2 = eta * eta;

  double snr, signal, airs_noise;
  if (scheme == Scheme::tapr) {
    const double d1s = x_ta * x_ta + p.H_A * p.H_A;
    const double d2s = (p.D - x_ta) * (p.D - x_ta) +
                       (p.H_P - p.H_A) * (p.H_P - p.H_A);
    const double c1 = p.sigmaF2 * p.P_F * p.beta * np2;
    const double c2 = p.sigma2 * p.P_t * hp2;
    snr = numerator / (c1 * d1s + c2 * d2s + c3 * d1s * d2s);
    // Coherent cascade magnitude N_a*N_p*beta^1.5/(d1*d2*d3), squared.
    signal = p.P_t * eta2 * p.beta * p.beta * p.beta * p.N_a * p.N_a * np2 /
             (d1s * d2s * hp2);
    // Amplification noise rides the coherent PIRS gain over the last two hops.
    airs_noise = p.sigmaF2 * eta2 * p.beta * p.beta * p.N_a * np2 /
                 (hp2 * d2s);
  } else {
    const double d2s = x_ta * x_ta + (p.H_P - p.H_A) * (p.H_P - p.H_A);
    const double d3s = (p.D - x_ta) * (p.D - x_ta) + p.H_A * p.H_A;
    snr = numerator / (p.P_F * p.sigmaF2 * hp2 * d2s +
                       p.P_t * p.sigma2 * p.beta * np2 * d3s +
                       c3 * d2s * d3s);
    signal = p.P_t * eta2 * p.beta * p.beta * p.beta * p.N_a * p.N_a * np2 /
             (hp2 * d2s * d3s);
    // Only the single exit hop follows the amplifier.
    airs_noise = p.sigmaF2 * eta2 * p.beta * p.N_a / d3s;
  }

  LinkMetrics m;
  m.signal_power = signal;
  m.airs_noise_power = airs_noise;
  m.rx_noise_power = p.sigma2;
  m.snr = snr;
  m.rate = rate(snr);
  return m;
}

// Placement-independent SNR of the distance-quadratic approximation, i.e. the
// value attained at the interior optimum of the simplified placement problem
// (squared hops ~ squared ground distances, negligible product term):
//   tapr: (beta*N_a/D^2) * (P_t/sigmaF2 + P_F*N_p^2*beta/(sigma2*H_P^2))
//   tpar: (beta*N_a/D^2) * (P_t*N_p^2*beta/(sigmaF2*H_P^2) + P_F/sigma2)
inline double snr_approx(Scheme scheme, const SystemParams& p) {
  if (scheme == Scheme::double_pirs) {
    throw std::invalid_argument("snr_approx: no benchmark approximation");
  }
  if (!p.has_p_f()) throw ParamError("snr_approx: P_F is unset");
  const double np2 = static_cast<double>(p.N_p) * p.N_p;
  const double hp2 = p.H_P * p.H_P;
  const double lead = p.beta * p.N_a / (p.D * p.D);
  if (scheme == Scheme::tapr) {
    return lead * (p.P_t / p.sigmaF2 + p.P_F * np2 * p.beta / (p.sigma2 * hp2));
  }
  return lead * (p.P_t * np2 * p.beta / (p.sigmaF2 * hp2) + p.P_F / p.sigma2);
}

// Whether the quadratic distance terms dominate the product term in the
// closed-form SNR denominators across the whole segment, together with the
// margin: min of the two link-budget length scales
//   sqrt(beta)*N_p*sqrt(P_t*beta)/(H_P*sigma_F) + sqrt(P_F*beta)/sigma
//   sqrt(beta)*N_p*sqrt(P_F*beta)/(H_P*sigma)   + sqrt(P_t*beta)/sigma_F
// divided by the segment length D. The distance-quadratic approximation
// behind snr_approx and the closed-form placements is trustworthy when the
// margin clears the threshold.
struct DominanceReport {
  bool holds;
  double margin;
};

inline DominanceReport denominator_dominance(const SystemParams& p,
                                             double threshold = 10.0) {
  if (!p.has_p_f()) throw ParamError("denominator_dominance: P_F is unset");
  if (!(threshold > 0.0)) {
    throw std::invalid_argument("denominator_dominance: threshold must be > 0");
  }
  const double s = std::sqrt(p.sigma2);
  const double s_f = std::sqrt(p.sigmaF2);
  const double rb = std::sqrt(p.beta);
  const double t1 = rb * p.N_p * std::sqrt(p.P_t * p.beta) / (p.H_P * s_f) +
                    std::sqrt(p.P_F * p.beta) / s;
  const double t2 = rb * p.N_p * std::sqrt(p.P_F * p.beta) / (p.H_P * s) +
                    std::sqrt(p.P_t * p.beta) / s_f;
  const double margin = std::min(t1, t2) / p.D;
  return {margin >= threshold, margin};
}

}  // namespace irslink
