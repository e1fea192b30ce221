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

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "irslink/irslink.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

int fail_usage(const CLI::App& app, const std::string& msg) {
  std::cerr << "error: " << msg << "\n\n" << app.help();
  return kExitConfig;
}

// Binary mode keeps the CSV byte-identical regardless of platform newline
// conventions.
bool write_output(const std::string& target, const std::string& text) {
  if (target == "stdout") {
    std::cout << text;
    return static_cast<bool>(std::cout.flush());
  }
  std::ofstream out(target, std::ios::binary);
  if (!out) return false;
  out << text;
  out.flush();
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "irslink — achievable-rate and placement sweeps for a wireless link "
      "aided by one active and one passive reflecting surface"};

  std::string params_path;
  std::vector<std::string> scheme_tokens;
  std::vector<double> sweep_vals;
  std::vector<double> fixed_x;
  double grid_step = 0.01;
  std::string out_target = "stdout";
  bool placement_only = false;

  app.add_option("--params", params_path,
                 "Parameter file (key = value lines); defaults used if "
                 "omitted");
  app.add_option("--scheme", scheme_tokens,
                 "Curve to emit (repeatable): tapr-opt, tapr-closed, "
                 "tapr-fixed, tpar-opt, tpar-closed, tpar-fixed, double-pirs")
      ->required();
  app.add_option("--sweep-pf", sweep_vals,
                 "Amplification-power axis: FROM TO STEP in dBm")
      ->expected(3)
      ->required();
  app.add_option("--fixed-x", fixed_x,
                 "Surface position in meters for *-fixed schemes "
                 "(repeatable)");
  app.add_option("--grid-step", grid_step,
                 "Placement grid resolution in meters (default 0.01)");
  app.add_option("--out", out_target, "Output CSV path, or 'stdout'");
  app.add_flag("--placement-only", placement_only,
               "Emit optimal positions (grid and closed form) instead of "
               "rates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  irslink::SystemParams params = irslink::default_params();
  if (!params_path.empty()) {
    std::ifstream in(params_path, std::ios::binary);
    if (!in) {
      return fail_usage(app, "cannot open params file: " + params_path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
      // P_F comes from the sweep axis, so the file may leave it unset.
      params = irslink::load_params(text.str(), /*require_p_f=*/false);
    } catch (const irslink::ParamError& e) {
      return fail_usage(app, std::string{"bad params file: "} + e.what());
    }
  }

  irslink::SweepSpec spec;
  spec.from_dbm = sweep_vals[0];
  spec.to_dbm = sweep_vals[1];
  spec.step_db = sweep_vals[2];
  spec.fixed_x = fixed_x;
  spec.grid_step = grid_step;
  for (const std::string& token : scheme_tokens) {
    const auto scheme = irslink::sweep_scheme_from_token(token);
    if (!scheme) {
      return fail_usage(app, "unknown scheme: " + token);
    }
    spec.schemes.push_back(*scheme);
  }

  try {
    irslink::validate(spec);

    std::string csv;
    bool all_infeasible = false;
    if (placement_only) {
      const auto rows = irslink::placement_sweep(spec, params);
      csv = irslink::to_csv(rows);
      all_infeasible =
          std::all_of(rows.begin(), rows.end(), [](const auto& r) {
            return !r.x_star_grid_m.has_value() &&
                   !r.x_star_closed_m.has_value();
          });
    } else {
      const auto rows = irslink::run_sweep(spec, params);
      csv = irslink::to_csv(rows);
      all_infeasible =
          std::all_of(rows.begin(), rows.end(), [](const auto& r) {
            return r.status == "INFEASIBLE";
          });
    }

    if (!write_output(out_target, csv)) {
      std::cerr << "error: cannot write output: " << out_target << "\n";
      return kExitConfig;
    }
    return all_infeasible ? kExitInfeasible : kExitOk;
  } catch (const std::invalid_argument& e) {
    return fail_usage(app, e.what());
  } catch (const irslink::ParamError& e) {
    return fail_usage(app, e.what());
  }
}
