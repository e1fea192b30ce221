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
#include <stdexcept>

#include "irslink/geometry.hpp"
#include "irslink/params.hpp"

namespace irslink {

// Rectangular element grid of a surface, n_x * n_y elements. Degenerate
// shapes (1 x M) are legal; {1, 1} models a single antenna.
struct ArrayShape {
  int n_x;
  int n_y;
  int count() const { return n_x * n_y; }
};

// Most-square factorization of n: the divisor pair (n_x, n_y), n_x <= n_y,
// minimizing n_y - n_x. Primes degenerate to 1 x n.
inline ArrayShape array_shape_for(int n) {
  if (n < 1) throw std::invalid_argument("array_shape_for: n must be >= 1");
  for (int f = static_cast<int>(std::sqrt(static_cast<double>(n))); f >= 1;
       --f) {
    if (n % f == 0) return {f, n / f};
  }
  return {1, n};  // unreachable; f = 1 always divides
}

// Uniform linear-array steering vector: entry k is exp(-j*pi*arg*k),
// k = 0..m-1.
inline Eigen::VectorXcd steering_vector(double arg, int m) {
  if (m < 1) throw std::invalid_argument("steering_vector: m must be >= 1");
  if (!std::isfinite(arg)) {
    throw std::invalid_argument("steering_vector: non-finite argument");
  }
  Eigen::VectorXcd v(m);
  for (int k = 0; k < m; ++k) {
    const double phase = -std::numbers::pi * arg * k;
    v(k) = std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return v;
}

// Direction of a link as seen from a surface whose normal is +z:
// theta    — polar angle measured from +z,
// vartheta — azimuth of the projection onto the array (x-y) plane.
struct ArrivalAngles {
  double theta;
  double vartheta;
};

inline ArrivalAngles angles_from_geometry(const Eigen::Vector3d& from,
                                          const Eigen::Vector3d& to) {
  const Eigen::Vector3d d = to - from;
  if (d.norm() == 0.0) {
    throw std::invalid_argument("angles_from_geometry: coincident endpoints");
  }
  const double horiz = std::hypot(d.x(), d.y());
  return {std::atan2(horiz, d.z()), std::atan2(d.y(), d.x())};
}

// Planar-array response: Kronecker product of the x-axis steering vector
// (argument (2*spacing/lambda)*sin(theta)*cos(vartheta), length n_x) with the
// y-axis steering vector (argument (2*spacing/lambda)*sin(theta)*
// sin(vartheta), length n_y). Every entry has unit magnitude.
inline Eigen::VectorXcd upa_response(double theta, double vartheta,
                                     ArrayShape shape, double spacing,
                                     double lambda) {
  if (shape.n_x < 1 || shape.n_y < 1) {
    throw std::invalid_argument("upa_response: empty array shape");
  }
  if (!(spacing > 0.0) || !(lambda > 0.0)) {
    throw std::invalid_argument("upa_response: spacing and lambda must be > 0");
  }
  const double scale = 2.0 * spacing / lambda;
  const Eigen::VectorXcd ex =
      steering_vector(scale * std::sin(theta) * std::cos(vartheta), shape.n_x);
  const Eigen::VectorXcd ey =
      steering_vector(scale * std::sin(theta) * std::sin(vartheta), shape.n_y);
  Eigen::VectorXcd out(shape.count());
  for (int ix = 0; ix < shape.n_x; ++ix) {
    out.segment(static_cast<Eigen::Index>(ix) * shape.n_y, shape.n_y) =
        ex(ix) * ey;
  }
  return out;
}

// Line-of-sight channel block from a node at `from` (array `tx_shape`,
// element spacing `tx_spacing`) to a node at `to` (array `rx_shape`,
// spacing `rx_spacing`):
//
//   (sqrt(beta)/d) * exp(-j*2*pi*d/lambda) * a_rx * a_tx^H,
//
// an rx_count x tx_count rank-one matrix whose every entry has magnitude
// sqrt(beta)/d. A single antenna is the {1, 1} shape.
inline Eigen::MatrixXcd los_block(const Eigen::Vector3d& from,
                                  const Eigen::Vector3d& to,
                                  ArrayShape tx_shape, double tx_spacing,
                                  ArrayShape rx_shape, double rx_spacing,
                                  const SystemParams& p) {
  const double d = (to - from).norm();
  if (d == 0.0) {
    throw std::invalid_argument("los_block: coincident endpoints");
  }
  const ArrivalAngles dep = angles_from_geometry(from, to);
  const ArrivalAngles arr = angles_from_geometry(to, from);
  const Eigen::VectorXcd a_tx =
      upa_response(dep.theta, dep.vartheta, tx_shape, tx_spacing, p.lambda);
  const Eigen::VectorXcd a_rx =
      upa_response(arr.theta, arr.vartheta, rx_shape, rx_spacing, p.lambda);
  const double prop = -2.0 * std::numbers::pi * d / p.lambda;
  const std::complex<double> pref =
      std::sqrt(p.beta) / d * std::complex<double>(std::cos(prop),
                                                   std::sin(prop));
  return pref * (a_rx * a_tx.adjoint());
}

// The three line-of-sight blocks of one cascade, in hop order:
//   g1  : Tx -> first surface          (n1 column vector)
//   s12 : first -> second surface      (n2 x n1, rank one)
//   h3  : second surface -> Rx         (n2 row vector)
struct ChannelSet {
  Scheme scheme;
  Eigen::VectorXcd g1;
  Eigen::MatrixXcd s12;
  Eigen::RowVectorXcd h3;
  HopDistances hops;

  Eigen::Index n1() const { return g1.size(); }
  Eigen::Index n2() const { return h3.size(); }
};

// Element count and spacing of each surface, in cascade order. The benchmark
// splits N_a + N_p equally (first surface takes the extra element when the
// total is odd) and uses the passive-surface spacing for both.
inline std::pair<ArrayShape, ArrayShape> surface_shapes(
    Scheme scheme, const SystemParams& p) {
  switch (scheme) {
    case Scheme::tapr:
      return {array_shape_for(p.N_a), array_shape_for(p.N_p)};
    case Scheme::tpar:
      return {array_shape_for(p.N_p), array_shape_for(p.N_a)};
    case Scheme::double_pirs: {
      const int total = p.N_a + p.N_p;
      return {array_shape_for(total - total / 2),
              array_shape_for(total / 2)};
    }
  }
  throw std::invalid_argument("surface_shapes: bad scheme value");
}

inline std::pair<double, double> surface_spacings(Scheme scheme,
                                                  const SystemParams& p) {
  switch (scheme) {
    case Scheme::tapr: return {p.delta_A, p.delta_P};
    case Scheme::tpar: return {p.delta_P, p.delta_A};
    case Scheme::double_pirs: return {p.delta_P, p.delta_P};
  }
  throw std::invalid_argument("surface_spacings: bad scheme value");
}

inline ChannelSet build_channels(Scheme scheme, const SystemParams& p,
                                 double x_ta) {
  const NodeLayout n = layout(scheme, p, x_ta);
  const auto [shape1, shape2] = surface_shapes(scheme, p);
  const auto [sp1, sp2] = surface_spacings(scheme, p);
  const ArrayShape single{1, 1};

  ChannelSet ch;
  ch.scheme = scheme;
  ch.g1 = los_block(n.tx, n.irs1, single, sp1, shape1, sp1, p).col(0);
  ch.s12 = los_block(n.irs1, n.irs2, shape1, sp1, shape2, sp2, p);
  ch.h3 = los_block(n.irs2, n.rx, shape2, sp2, single, sp2, p).row(0);
  ch.hops = {(n.irs1 - n.tx).norm(), (n.irs2 - n.irs1).norm(),
             (n.rx - n.irs2).norm()};
  return ch;
}

}  // namespace irslink
