// Copyright 2026 The pmctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON and CSV encodings of fields, optimization runs, maps and decay curves.
//
// CSV: comma separated, one header row, '.' decimal, LF line endings; numbers
// use the shortest representation that reads back to the same double.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pmctl/basis.hpp"
#include "pmctl/ddsim.hpp"
#include "pmctl/optimizer.hpp"
#include "pmctl/robustness.hpp"

namespace pmctl::serialize {

using json = nlohmann::json;

/// Shortest round-trip decimal form of v.
std::string number(double v);

/// {family, N, T_ns, omega0_MHz, params, exact}. `params` lists amplitudes and
/// frequencies in MHz and phases in rad; `exact` repeats the horizon, carrier
/// and parameters in s and rad/s so that save/load reproduces the field bit
/// for bit.
json field_to_json(const basis::ControlField& field);

/// Accepts documents with or without the `exact` block. When both are present
/// they must agree to 1e-12 relative. Throws ConfigError on malformed input.
basis::ControlField field_from_json(const json& doc);

/// Pretty-printed document with a trailing newline.
std::string dump(const json& doc);

/// Spec echo plus per-run records (start, best parameters, value, n_f).
json runset_to_json(const optimizer::RunSet& runs, const json& spec_echo);
/// rank,start_index,best_value,n_f (best_value is the penalized objective)
std::string runs_csv(const optimizer::RunSet& runs);
/// rank,start_index,evaluations,best_value
std::string trace_csv(const optimizer::RunSet& runs);

/// delta_MHz,alpha,fidelity in long format, delta varying fastest.
std::string map_csv(const robustness::FidelityMap& map);

/// gamma_MHz,fidelity,stderr
std::string sweep_csv(const std::vector<robustness::SweepPoint>& points);

/// T_us,tau_us,P0,stderr,n_trials
std::string dd_csv(const std::vector<ddsim::CurvePoint>& curve);

/// freq_MHz,x_mag_MHz,y_mag_MHz for the two quadratures.
std::string quadrature_csv(const basis::Spectrum& s);
/// freq_MHz,mag_MHz for the complex envelope.
std::string envelope_csv(const basis::Spectrum& s);

}  // namespace pmctl::serialize
