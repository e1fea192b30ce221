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
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>

#include "irslink/channel.hpp"
#include "irslink/geometry.hpp"
#include "irslink/params.hpp"

namespace irslink {

// Raised when the amplification power budget cannot support a requested
// configuration (eta < 1 everywhere, an empty feasible placement interval, a
// design that violates the power constraint). Distinct from the
// std::invalid_argument raised for plainly out-of-range inputs.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Canonical phase representative in [0, 2*pi).
inline double wrap_phase(double rad) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double out = std::fmod(rad, two_pi);
  if (out < 0.0) out += two_pi;
  if (out == two_pi) out = 0.0;  // fmod rounding can land exactly on 2*pi
  return out;
}

// Unit-modulus reflection coefficients e^{j*phi} for one surface.
inline Eigen::VectorXcd unit_phasors(const Eigen::VectorXd& phi) {
  Eigen::VectorXcd out(phi.size());
  for (Eigen::Index i = 0; i < phi.size(); ++i) {
    out(i) = std::complex<double>(std::cos(phi(i)), std::sin(phi(i)));
  }
  return out;
}

// Unit-modulus reflection coefficients of both surfaces (phase shifts in
// radians, cascade order) plus the active-surface amplification factor.
// For the passive-only benchmark eta stays 1.
struct ReflectionDesign {
  Eigen::VectorXd phi1;  // first surface along the cascade, size n1
  Eigen::VectorXd phi2;  // second surface along the cascade, size n2
  double eta = 1.0;
};

// Phase shifts that turn every term of the cascaded double sum
// h3 * diag(e^{j*phi2}) * s12 * diag(e^{j*phi1}) * g1 real and non-negative,
// which maximizes the cascade magnitude. The inter-surface block is rank one,
// s12(i, j) = r(i) * c(j); element j of the first surface cancels the angle
// of its column factor times its first-hop entry, element i of the second
// surface cancels the angle of its row factor times its last-hop entry.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> optimal_phases(
    const ChannelSet& ch) {
  if (ch.n1() < 1 || ch.n2() < 1 || ch.s12.rows() != ch.n2() ||
      ch.s12.cols() != ch.n1()) {
    throw std::invalid_argument("optimal_phases: inconsistent channel set");
  }
  // Recover a rank-one factorization from the block itself. The scalar
  // ambiguity (r, c) -> (alpha*r, c/alpha) shifts both phase profiles by
  // opposite constants and cancels in the cascade.
  const Eigen::VectorXcd r = ch.s12.col(0);
  if (r(0) == std::complex<double>(0.0, 0.0)) {
    throw std::invalid_argument("optimal_phases: zero channel entry");
  }
  const Eigen::RowVectorXcd c = ch.s12.row(0) / r(0);

  Eigen::VectorXd phi1(ch.n1());
  for (Eigen::Index j = 0; j < ch.n1(); ++j) {
    phi1(j) = wrap_phase(-std::arg(c(j) * ch.g1(j)));
  }
  Eigen::VectorXd phi2(ch.n2());
  for (Eigen::Index i = 0; i < ch.n2(); ++i) {
    phi2(i) = wrap_phase(-std::arg(ch.h3(i) * r(i)));
  }
  return {std::move(phi1), std::move(phi2)};
}

// Smallest ground distance x_ta at which the amplifier budget still allows
// eta >= 1, or nullopt when no placement on the segment does (budget at or
// below the amplification noise floor N_a * sigmaF2). The bound comes from
// making the power constraint hold with eta = 1:
//   tapr: the Tx->AIRS distance must satisfy
//         d^2 >= N_a*beta*P_t / (P_F - N_a*sigmaF2)
//   tpar: the PIRS->AIRS distance must satisfy
//         d^2 >= N_a*N_p^2*beta^2*P_t / ((P_F - N_a*sigmaF2) * H_P^2)
// The returned x may exceed D, in which case no point of [0, D] is feasible.
inline std::optional<double> min_feasible_x(Scheme scheme,
                                            const SystemParams& p) {
  if (scheme == Scheme::double_pirs) {
    throw std::invalid_argument("min_feasible_x: benchmark has no amplifier");
  }
  if (!p.has_p_f()) throw ParamError("min_feasible_x: P_F is unset");
  const double headroom = p.P_F - p.N_a * p.sigmaF2;
  if (headroom <= 0.0) return std::nullopt;
  double d2_min, alt2;
  if (scheme == Scheme::tapr) {
    d2_min = p.N_a * p.beta * p.P_t / headroom;
    alt2 = p.H_A * p.H_A;
  } else {
    d2_min = p.N_a * static_cast<double>(p.N_p) * p.N_p * p.beta * p.beta *
             p.P_t / (headroom * p.H_P * p.H_P);
    alt2 = (p.H_P - p.H_A) * (p.H_P - p.H_A);
  }
  return std::sqrt(std::max(0.0, d2_min - alt2));
}

// Amplification factor that spends the whole power budget P_F (the power
// constraint holds with equality). With d the distance of the hop feeding
// the amplifier:
//   tapr: eta = sqrt(P_F*d^2 / (N_a*(P_t*beta + d^2*sigmaF2)))
//   tpar: eta = sqrt(P_F*d^2*H_P^2 / (N_a*(P_t*beta^2*N_p^2 + d^2*sigmaF2*H_P^2)))
// (for tpar the incoming signal is already the coherent sum over the passive
// surface, hence the N_p^2 * beta^2 / H_P^2 energy factor).
inline double amplification_factor(Scheme scheme, const SystemParams& p,
                                   double x_ta) {
  if (scheme == Scheme::double_pirs) {
    throw std::invalid_argument(
        "amplification_factor: benchmark has no amplifier");
  }
  if (!p.has_p_f()) throw ParamError("amplification_factor: P_F is unset");
  if (!(x_ta >= 0.0 && x_ta <= p.D)) {
    throw std::invalid_argument("amplification_factor: x_ta outside [0, D]");
  }
  if (p.P_F - p.N_a * p.sigmaF2 <= 0.0) {
    throw InfeasibleError(
        "amplification_factor: budget at or below the amplification noise "
        "floor N_a*sigmaF2; eta < 1 at every placement");
  }
  double eta2;
  if (scheme == Scheme::tapr) {
    const double d2 = x_ta * x_ta + p.H_A * p.H_A;
    eta2 = p.P_F * d2 / (p.N_a * (p.P_t * p.beta + d2 * p.sigmaF2));
  } else {
    const double d2 = x_ta * x_ta + (p.H_P - p.H_A) * (p.H_P - p.H_A);
    const double hp2 = p.H_P * p.H_P;
    eta2 = p.P_F * d2 * hp2 /
           (p.N_a * (p.P_t * p.beta * p.beta * p.N_p * p.N_p +
                     d2 * p.sigmaF2 * hp2));
  }
  return std::sqrt(eta2);
}

// Full reflection design for a built channel set: aligned phases plus the
// budget-exhausting amplification factor (1 for the passive benchmark).
inline ReflectionDesign make_design(const ChannelSet& ch,
                                    const SystemParams& p) {
  ReflectionDesign d;
  std::tie(d.phi1, d.phi2) = optimal_phases(ch);
  if (ch.scheme == Scheme::double_pirs) {
    d.eta = 1.0;
    return d;
  }
  // Recover the active-surface ground distance from the cached hop lengths.
  // The sqrt/square round trip can land a hair outside [0, D] at the segment
  // ends, so clamp back onto it.
  const double alt = (ch.scheme == Scheme::tapr) ? p.H_A : (p.H_P - p.H_A);
  const double hop = (ch.scheme == Scheme::tapr) ? ch.hops.d1 : ch.hops.d2;
  const double x2 = std::max(0.0, hop * hop - alt * alt);
  d.eta = amplification_factor(ch.scheme, p, std::min(std::sqrt(x2), p.D));
  return d;
}

// Power the amplifier actually emits under a design, evaluated from the
// channel matrices: eta^2 * (P_t * |incoming signal at the active surface|^2
// + sigmaF2 * element count). Zero for the passive benchmark. This is the
// left-hand side of the amplification power constraint (<= P_F).
inline double amplification_power(const ChannelSet& ch,
                                  const ReflectionDesign& d,
                                  const SystemParams& p) {
  if (ch.scheme == Scheme::double_pirs) return 0.0;
  if (ch.scheme == Scheme::tapr) {
    // Active surface is the first hop: it amplifies the Tx signal directly.
    const Eigen::VectorXcd in = unit_phasors(d.phi1).cwiseProduct(ch.g1);
    return d.eta * d.eta *
           (p.P_t * in.squaredNorm() +
            p.sigmaF2 * static_cast<double>(ch.n1()));
  }
  // Active surface is the second hop: it amplifies the passive reflection.
  const Eigen::VectorXcd in = ch.s12 * unit_phasors(d.phi1).cwiseProduct(ch.g1);
  return d.eta * d.eta *
         (p.P_t * in.squaredNorm() +
          p.sigmaF2 * static_cast<double>(ch.n2()));
}

}  // namespace irslink
