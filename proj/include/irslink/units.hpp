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
#include <stdexcept>

namespace irslink {

// Decibel <-> linear conversions. Everything inside the library computes in
// linear SI units (watts, meters); dB and dBm exist only at I/O boundaries.

inline double db_to_linear(double db) {
  if (!std::isfinite(db)) {
    throw std::invalid_argument("db_to_linear: non-finite input");
  }
  return std::pow(10.0, db / 10.0);
}

inline double linear_to_db(double value) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw std::invalid_argument("linear_to_db: input must be finite and > 0");
  }
  return 10.0 * std::log10(value);
}

inline double dbm_to_watt(double dbm) {
  if (!std::isfinite(dbm)) {
    throw std::invalid_argument("dbm_to_watt: non-finite input");
  }
  return std::pow(10.0, dbm / 10.0) * 1e-3;
}

inline double watt_to_dbm(double watt) {
  if (!std::isfinite(watt) || watt <= 0.0) {
    throw std::invalid_argument("watt_to_dbm: input must be finite and > 0");
  }
  return 10.0 * std::log10(watt * 1e3);
}

}  // namespace irslink
