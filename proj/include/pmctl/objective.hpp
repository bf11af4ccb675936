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

#pragma once

#include <cstdint>

#include "pmctl/basis.hpp"
#include "pmctl/dynamics.hpp"
#include "pmctl/qcore.hpp"

namespace pmctl::objective {

using basis::ConstraintSet;
using basis::ControlField;
using dynamics::EnsembleModel;
using qcore::PureState;
using qcore::Unitary2;

enum class Kind { StateTransfer, Gate };

struct ObjectiveSpec {
    Kind kind = Kind::StateTransfer;
    PureState initial = PureState::down();
    PureState target_state = PureState::up();
    Unitary2 target_gate = Unitary2::identity();
    EnsembleModel ensemble;
    double horizon = 100e-9;  ///< T, s
    double dt = 100e-9 / 2000;
    ConstraintSet constraints;
    double alpha = 1.0;
    double gamma = 0.0;  ///< dephasing rate, 1/s; state transfer only
    unsigned threads = 1;  ///< workers for the per-detuning loops; 0 = all cores

    static ObjectiveSpec state_transfer(const EnsembleModel& ensemble, double horizon, const ConstraintSet& c);
    static ObjectiveSpec gate(const Unitary2& target, const EnsembleModel& ensemble, double horizon,
                              const ConstraintSet& c);
};

/// Grid-weighted ensemble state-transfer fidelity F_obj in [0, 1].
double state_objective(const ControlField& field, const ObjectiveSpec& spec);

/// Grid-weighted ensemble gate fidelity in [0, 1].
double gate_objective(const ControlField& field, const ObjectiveSpec& spec);

/// Dispatches on spec.kind.
double ensemble_objective(const ControlField& field, const ObjectiveSpec& spec);

/// Fidelity of a single member with detuning delta (state or gate by spec.kind).
double member_fidelity(const ControlField& field, const ObjectiveSpec& spec, double delta);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t draws = 0;
};

/// Average over K Gaussian detunings drawn with `seed` (F or F_G by spec.kind).
McEstimate monte_carlo_fidelity(const ControlField& field, const ObjectiveSpec& spec, std::uint64_t seed);

inline constexpr double kPenaltyWeight = 1e3;

/// lambda max(0, peak - omega_max)^2 / omega_max^2
double amplitude_penalty(const ControlField& field, const ConstraintSet& c);

/// 1 - objective + penalty; the quantity handed to the optimizer.
double penalized_objective(const ControlField& field, const ObjectiveSpec& spec);

}  // namespace pmctl::objective
