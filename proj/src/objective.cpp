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

#include "pmctl/objective.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pmctl/errors.hpp"
#include "pmctl/parallel.hpp"

namespace pmctl::objective {

using dynamics::SampledDrive;

ObjectiveSpec ObjectiveSpec::state_transfer(const EnsembleModel& ensemble, double horizon, const ConstraintSet& c) {
    ObjectiveSpec s;
    s.kind = Kind::StateTransfer;
    s.ensemble = ensemble;
    s.horizon = horizon;
    s.dt = horizon / 2000.0;
    s.constraints = c;
    return s;
}

ObjectiveSpec ObjectiveSpec::gate(const Unitary2& target, const EnsembleModel& ensemble, double horizon,
                                  const ConstraintSet& c) {
    ObjectiveSpec s = state_transfer(ensemble, horizon, c);
    s.kind = Kind::Gate;
    s.target_gate = target;
    return s;
}

namespace {

double fidelity_at(const SampledDrive& drive, const ObjectiveSpec& spec, double delta) {
    if (spec.kind == Kind::Gate) return qcore::gate_fidelity(spec.target_gate, drive.unitary(delta, spec.alpha));
    if (spec.gamma > 0.0) {
        const auto rho = drive.lindblad(delta, spec.alpha, spec.gamma, qcore::DensityMatrix::from_state(spec.initial));
        return qcore::mixed_fidelity(rho, spec.target_state);
    }
    return qcore::state_fidelity(spec.target_state, drive.state(delta, spec.alpha, spec.initial));
}

// Per-detuning fidelities, evaluated in parallel and returned in input order.
std::vector<double> fidelities(const ControlField& field, const ObjectiveSpec& spec, const std::vector<double>& deltas) {
    const SampledDrive drive(field, 0.0, spec.horizon, spec.dt);
    std::vector<double> f(deltas.size());
    parallel_for(deltas.size(), deltas.size() < 64 ? 1u : spec.threads,
                 [&](std::size_t i) { f[i] = fidelity_at(drive, spec, deltas[i]); });
    return f;
}

double grid_average(const ControlField& field, const ObjectiveSpec& spec) {
    const auto grid = dynamics::grid_detunings(spec.ensemble);
    const auto f = fidelities(field, spec, grid.delta);
    double sum = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) sum += grid.weight[k] * f[k];
    return std::clamp(sum, 0.0, 1.0);
}

}  // namespace

double state_objective(const ControlField& field, const ObjectiveSpec& spec) {
    if (spec.kind != Kind::StateTransfer) throw ArgumentError("state_objective: spec is not a state-transfer objective");
    return grid_average(field, spec);
}

double gate_objective(const ControlField& field, const ObjectiveSpec& spec) {
    if (spec.kind != Kind::Gate) throw ArgumentError("gate_objective: spec is not a gate objective");
    return grid_average(field, spec);
}

double ensemble_objective(const ControlField& field, const ObjectiveSpec& spec) { return grid_average(field, spec); }

double member_fidelity(const ControlField& field, const ObjectiveSpec& spec, double delta) {
    return fidelity_at(SampledDrive(field, 0.0, spec.horizon, spec.dt), spec, delta);
}

McEstimate monte_carlo_fidelity(const ControlField& field, const ObjectiveSpec& spec, std::uint64_t seed) {
    const auto deltas = dynamics::random_detunings(spec.ensemble, seed);
    const auto f = fidelities(field, spec, deltas);
    const double n = static_cast<double>(f.size());
    double sum = 0.0;
    for (double v : f) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : f) ss += (v - mean) * (v - mean);
    const double var = f.size() > 1 ? ss / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n), f.size()};
}

double amplitude_penalty(const ControlField& field, const ConstraintSet& c) {
    if (!(c.omega_max > 0.0)) return 0.0;
    const double excess = basis::envelope_peak(field) - c.omega_max;
    if (excess <= 0.0) return 0.0;
    return kPenaltyWeight * excess * excess / (c.omega_max * c.omega_max);
}

double penalized_objective(const ControlField& field, const ObjectiveSpec& spec) {
    return 1.0 - ensemble_objective(field, spec) + amplitude_penalty(field, spec.constraints);
}

}  // namespace pmctl::objective
