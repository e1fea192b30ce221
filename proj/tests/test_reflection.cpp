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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "irslink/reflection.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace irslink;

namespace {

SystemParams defaults_with_pf(double p_f = 0.01) {
  SystemParams p = default_params();
  p.P_F = p_f;
  return p;
}

// Cascade amplitude under a design (without the amplification factor):
// h3 * diag(e^{j phi2}) * s12 * diag(e^{j phi1}) * g1.
std::complex<double> cascade_sum(const ChannelSet& ch,
                                 const Eigen::VectorXd& phi1,
                                 const Eigen::VectorXd& phi2) {
  const Eigen::VectorXcd inner =
      ch.s12 * unit_phasors(phi1).cwiseProduct(ch.g1);
  return (ch.h3.transpose().cwiseProduct(unit_phasors(phi2)))
      .cwiseProduct(inner)
      .sum();
}

}  // namespace

TEST_CASE("phase wrapping", "[reflection]") {
  const double two_pi = 2.0 * std::numbers::pi;
  CHECK(wrap_phase(0.0) == 0.0);
  CHECK_THAT(wrap_phase(-std::numbers::pi / 2),
             WithinRel(1.5 * std::numbers::pi, 1e-15));
  CHECK_THAT(wrap_phase(7.5 * std::numbers::pi),
             WithinRel(1.5 * std::numbers::pi, 1e-12));
  CHECK_THAT(wrap_phase(-0.1), WithinRel(two_pi - 0.1, 1e-12));

  std::mt19937 rng(20240904);
  std::uniform_real_distribution<double> any(-50.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const double w = wrap_phase(any(rng));
    CHECK(w >= 0.0);
    CHECK(w < two_pi);
  }
}

TEST_CASE("unit phasors", "[reflection]") {
  Eigen::VectorXd phi(3);
  phi << 0.0, std::numbers::pi / 2, std::numbers::pi;
  const Eigen::VectorXcd u = unit_phasors(phi);
  CHECK_THAT(std::abs(u(0) - std::complex<double>(1, 0)), WithinAbs(0, 1e-15));
  CHECK_THAT(std::abs(u(1) - std::complex<double>(0, 1)), WithinAbs(0, 1e-15));
  CHECK_THAT(std::abs(u(2) - std::complex<double>(-1, 0)),
             WithinAbs(0, 1e-15));
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    CHECK_THAT(std::abs(u(k)), WithinRel(1.0, 1e-15));
  }
}

TEST_CASE("aligned cascade is real, positive, and at the magnitude law",
          "[reflection]") {
  const SystemParams p = defaults_with_pf();

  for (Scheme scheme : {Scheme::tapr, Scheme::tpar}) {
    const ChannelSet ch = build_channels(scheme, p, 10.0);
    const auto [phi1, phi2] = optimal_phases(ch);

    // Every phase lies in the canonical interval.
    for (Eigen::Index j = 0; j < phi1.size(); ++j) {
      CHECK(phi1(j) >= 0.0);
      CHECK(phi1(j) < 2.0 * std::numbers::pi);
    }
    for (Eigen::Index i = 0; i < phi2.size(); ++i) {
      CHECK(phi2(i) >= 0.0);
      CHECK(phi2(i) < 2.0 * std::numbers::pi);
    }

    const std::complex<double> t = cascade_sum(ch, phi1, phi2);
    CHECK(t.real() > 0.0);
    CHECK(std::abs(t.imag()) < 1e-9 * t.real());

    // Fully coherent combining: N1 * N2 * beta^(3/2) / (d1*d2*d3).
    const double law = static_cast<double>(ch.n1()) *
                       static_cast<double>(ch.n2()) * std::pow(p.beta, 1.5) /
                       (ch.hops.d1 * ch.hops.d2 * ch.hops.d3);
    CHECK_THAT(std::abs(t), WithinRel(law, 1e-12));
  }

  // Frozen magnitude for the active-first order at x = 10 m.
  const ChannelSet ch = build_channels(Scheme::tapr, p, 10.0);
  const auto [phi1, phi2] = optimal_phases(ch);
  CHECK_THAT(std::abs(cascade_sum(ch, phi1, phi2)),
             WithinRel(8.204499999595249e-05, 1e-9));
}

TEST_CASE("every cascade term is aligned", "[reflection]") {
  SystemParams p = defaults_with_pf();
  p.N_a = 6;
  p.N_p = 8;

  for (Scheme scheme : {Scheme::tapr, Scheme::tpar}) {
    const ChannelSet ch = build_channels(scheme, p, 7.0);
    const auto [phi1, phi2] = optimal_phases(ch);
    const Eigen::VectorXcd u1 = unit_phasors(phi1);
    const Eigen::VectorXcd u2 = unit_phasors(phi2);

    double min_real = std::numeric_limits<double>::infinity();
    double max_imag = 0.0;
    double term_scale = 0.0;
    for (Eigen::Index i = 0; i < ch.n2(); ++i) {
      for (Eigen::Index j = 0; j < ch.n1(); ++j) {
        const std::complex<double> term =
            ch.h3(i) * u2(i) * ch.s12(i, j) * u1(j) * ch.g1(j);
        min_real = std::min(min_real, term.real());
        max_imag = std::max(max_imag, std::abs(term.imag()));
        term_scale = std::max(term_scale, std::abs(term));
      }
    }
    CHECK(min_real > 0.0);
    CHECK(max_imag < 1e-12 * term_scale);
  }
}

TEST_CASE("no single-element phase change improves the cascade",
          "[reflection]") {
  SystemParams p = defaults_with_pf();
  p.N_a = 6;
  p.N_p = 8;
  const ChannelSet ch = build_channels(Scheme::tapr, p, 12.0);
  const auto [phi1, phi2] = optimal_phases(ch);
  const double best = std::abs(cascade_sum(ch, phi1, phi2));

  std::mt19937 rng(20240905);
  std::uniform_real_distribution<double> delta(-std::numbers::pi,
                                               std::numbers::pi);
  std::uniform_int_distribution<int> which(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    Eigen::VectorXd q1 = phi1;
    Eigen::VectorXd q2 = phi2;
    if (which(rng) == 0) {
      std::uniform_int_distribution<int> idx(0, static_cast<int>(ch.n1()) - 1);
      q1(idx(rng)) = wrap_phase(q1(idx(rng)) + delta(rng));
    } else {
      std::uniform_int_distribution<int> idx(0, static_cast<int>(ch.n2()) - 1);
      q2(idx(rng)) = wrap_phase(q2(idx(rng)) + delta(rng));
    }
    CHECK(std::abs(cascade_sum(ch, q1, q2)) <= best * (1.0 + 1e-12));
  }
}

TEST_CASE("minimum feasible placement", "[reflection]") {
  SECTION("defaults leave the whole segment feasible") {
    const SystemParams p = defaults_with_pf();
    const auto a = min_feasible_x(Scheme::tapr, p);
    const auto b = min_feasible_x(Scheme::tpar, p);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(*a == 0.0);
    CHECK(*b == 0.0);
  }
  SECTION("tight budgets push the bound into the interior") {
    const SystemParams p = defaults_with_pf(2.2571425513227265e-05);
    const auto a = min_feasible_x(Scheme::tapr, p);
    REQUIRE(a.has_value());
    CHECK_THAT(*a, WithinRel(8.0, 1e-9));
  }
  SECTION("budget at or below the amplification noise floor") {
    // N_a * sigmaF2 = 450 * 4e-11 = 1.8e-8 W.
    CHECK_FALSE(min_feasible_x(Scheme::tapr, defaults_with_pf(1.8e-8))
                    .has_value());
    CHECK_FALSE(min_feasible_x(Scheme::tpar, defaults_with_pf(1e-8))
                    .has_value());
  }
  SECTION("contract errors") {
    CHECK_THROWS_AS(min_feasible_x(Scheme::double_pirs, defaults_with_pf()),
                    std::invalid_argument);
    CHECK_THROWS_AS(min_feasible_x(Scheme::tapr, default_params()),
                    ParamError);
  }
}

TEST_CASE("amplification factor spends the whole budget", "[reflection]") {
  SECTION("unity gain exactly at the feasibility bound") {
    const SystemParams p = defaults_with_pf(2.2571425513227265e-05);
    CHECK_THAT(amplification_factor(Scheme::tapr, p, 8.0),
               WithinRel(1.0, 1e-9));
    CHECK(amplification_factor(Scheme::tapr, p, 7.0) < 1.0);
    CHECK(amplification_factor(Scheme::tapr, p, 9.0) > 1.0);
  }
  SECTION("vanishing transmit power leaves only the noise term") {
    SystemParams p = defaults_with_pf();
    p.P_t = 1e-30;
    const double expected = std::sqrt(p.P_F / (p.N_a * p.sigmaF2));
    CHECK_THAT(amplification_factor(Scheme::tapr, p, 10.0),
               WithinRel(expected, 1e-12));
    CHECK_THAT(amplification_factor(Scheme::tpar, p, 10.0),
               WithinRel(expected, 1e-12));
  }
  SECTION("contract errors") {
    const SystemParams p = defaults_with_pf();
    CHECK_THROWS_AS(amplification_factor(Scheme::double_pirs, p, 10.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(amplification_factor(Scheme::tapr, p, -1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(amplification_factor(Scheme::tapr, p, p.D + 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        amplification_factor(Scheme::tapr, defaults_with_pf(1e-8), 10.0),
        InfeasibleError);
  }
}

TEST_CASE("designed amplifier meets the power constraint with equality",
          "[reflection]") {
  const SystemParams p = defaults_with_pf();

  for (Scheme scheme : {Scheme::tapr, Scheme::tpar}) {
    for (double x : {0.7, 10.0, 23.3, 29.9}) {
      const ChannelSet ch = build_channels(scheme, p, x);
      const ReflectionDesign d = make_design(ch, p);

      // The design recovers the same gain the closed form gives directly.
      CHECK_THAT(d.eta,
                 WithinRel(amplification_factor(scheme, p, x), 1e-12));

      // Matrix-level emitted power equals the budget.
      const double emitted = amplification_power(ch, d, p);
      CHECK_THAT(emitted, WithinRel(p.P_F, 1e-9));
    }
  }

  // The passive benchmark has no amplifier at all.
  const ChannelSet bench = build_channels(Scheme::double_pirs, p, 0.0);
  const ReflectionDesign d = make_design(bench, p);
  CHECK(d.eta == 1.0);
  CHECK(amplification_power(bench, d, p) == 0.0);
}
