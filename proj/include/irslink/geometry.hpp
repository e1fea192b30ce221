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
#include <stdexcept>
#include <string>

#include "irslink/params.hpp"

namespace irslink {

// Deployment order of the two reflecting surfaces along the Tx -> Rx cascade.
//   tapr        : Tx -> active surface -> passive surface -> Rx
//                 (passive surface mounted above the Rx)
//   tpar        : Tx -> passive surface -> active surface -> Rx
//                 (passive surface mounted above the Tx)
//   double_pirs : passive-only benchmark, one passive surface above each end,
//                 element budget N_a + N_p split equally between them
enum class Scheme { tapr, tpar, double_pirs };

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::tapr: return "tapr";
    case Scheme::tpar: return "tpar";
    case Scheme::double_pirs: return "double-pirs";
  }
  throw std::invalid_argument("scheme_name: bad scheme value");
}

// Node positions in a common frame: Tx at the origin, Rx on the x axis at
// ground level, surfaces elevated. `irs1` is the first surface the signal
// hits along the cascade, `irs2` the second.
struct NodeLayout {
  Eigen::Vector3d tx;
  Eigen::Vector3d rx;
  Eigen::Vector3d irs1;
  Eigen::Vector3d irs2;
};

// Per-hop propagation distances in cascade order:
// d1 = Tx -> irs1, d2 = irs1 -> irs2, d3 = irs2 -> Rx.
struct HopDistances {
  double d1;
  double d2;
  double d3;
};

// Places all four nodes. `x_ta` is the ground distance from the Tx to the
// active surface; it must lie in [0, D]. The benchmark scheme has no active
// surface, so it ignores `x_ta` (both passive surfaces sit at the segment
// ends at altitude H_P).
inline NodeLayout layout(Scheme scheme, const SystemParams& p, double x_ta) {
  if (!(x_ta >= 0.0 && x_ta <= p.D)) {
    throw std::invalid_argument("layout: x_ta = " + std::to_string(x_ta) +
                                " outside [0, D]");
  }
  NodeLayout n;
  n.tx = {0.0, 0.0, 0.0};
  n.rx = {p.D, 0.0, 0.0};
  switch (scheme) {
    case Scheme::tapr:
      n.irs1 = {x_ta, 0.0, p.H_A};
      n.irs2 = {p.D, 0.0, p.H_P};
      break;
    case Scheme::tpar:
      n.irs1 = {0.0, 0.0, p.H_P};
      n.irs2 = {x_ta, 0.0, p.H_A};
      break;
    case Scheme::double_pirs:
      n.irs1 = {0.0, 0.0, p.H_P};
      n.irs2 = {p.D, 0.0, p.H_P};
      break;
  }
  return n;
}

inline HopDistances hop_distances(Scheme scheme, const SystemParams& p,
                                  double x_ta) {
  const NodeLayout n = layout(scheme, p, x_ta);
  return {(n.irs1 - n.tx).norm(), (n.irs2 - n.irs1).norm(),
          (n.rx - n.irs2).norm()};
}

}  // namespace irslink
