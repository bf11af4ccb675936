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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pmctl/errors.hpp"
#include "pmctl/objective.hpp"
#include "pmctl/units.hpp"
#include "support/oracles.hpp"

using namespace pmctl;
using namespace pmctl::objective;
using units::mhz_to_angular;

namespace {

const double kOmega = mhz_to_angular(10.0);
constexpr double kTp = 50e-9;

ObjectiveSpec pi_pulse_spec(int m, std::size_t k = 1000) {
    const auto ens = dynamics::EnsembleModel::from_fwhm(mhz_to_angular(10.0), m, k);
    return ObjectiveSpec::state_transfer(ens, kTp, basis::ConstraintSet::for_horizon(kOmega, kTp));
}

}  // namespace

TEST(Objective, GridAverageMatchesHandSum) {
    const auto spec = pi_pulse_spec(7);
    const auto field = basis::constant_field(kOmega, kTp);
    const auto grid = dynamics::grid_detunings(spec.ensemble);
    double expect = 0.0;
    for (std::size_t i = 0; i < grid.delta.size(); ++i)
        expect += grid.weight[i] * oracle::rabi_transfer(kOmega, grid.delta[i], kTp);
    EXPECT_NEAR(state_objective(field, spec), expect, 1e-9);
    EXPECT_NEAR(ensemble_objective(field, spec), expect, 1e-15);
}

TEST(Objective, SingleMemberIsResonantFidelity) {
    const auto spec = pi_pulse_spec(1);
    EXPECT_NEAR(state_objective(basis::constant_field(kOmega, kTp), spec), 1.0, 1e-10);
    EXPECT_NEAR(member_fidelity(basis::constant_field(kOmega, kTp), spec, mhz_to_angular(5.0)),
                oracle::rabi_transfer(kOmega, mhz_to_angular(5.0), kTp), 1e-9);
}

TEST(Objective, KindMismatchThrows) {
    const auto spec = pi_pulse_spec(3);
    EXPECT_THROW(gate_objective(basis::constant_field(kOmega, kTp), spec), ArgumentError);
    auto g = ObjectiveSpec::gate(qcore::gates::pauli_x(), spec.ensemble, kTp, spec.constraints);
    EXPECT_THROW(state_objective(basis::constant_field(kOmega, kTp), g), ArgumentError);
}

TEST(Objective, GateIdentities) {
    const auto ens = dynamics::EnsembleModel::from_fwhm(mhz_to_angular(10.0), 1);
    const auto c = basis::ConstraintSet::for_horizon(kOmega, kTp);
    // A resonant pi-area pulse is exactly R_x(pi), i.e. X up to phase.
    const auto x = ObjectiveSpec::gate(qcore::rotation_x(std::numbers::pi), ens, kTp, c);
    EXPECT_NEAR(gate_objective(basis::constant_field(kOmega, kTp), x), 1.0, 1e-8);
    // Doing nothing against target X.
    const auto xi = ObjectiveSpec::gate(qcore::gates::pauli_x(), ens, kTp, c);
    EXPECT_NEAR(gate_objective(basis::constant_field(0.0, kTp), xi), 1.0 / 3.0, 1e-10);
}

TEST(Objective, MonteCarloAgreesWithQuadrature) {
    const auto spec = pi_pulse_spec(15, 20000);
    const auto est = monte_carlo_fidelity(basis::constant_field(kOmega, kTp), spec, 3);
    const double ref = oracle::gaussian_rabi_average(kOmega, kTp, spec.ensemble.sigma);
    EXPECT_EQ(est.draws, 20000u);
    EXPECT_GT(est.std_error, 0.0);
    EXPECT_LT(std::abs(est.mean - ref), 4.0 * est.std_error);
    const auto again = monte_carlo_fidelity(basis::constant_field(kOmega, kTp), spec, 3);
    EXPECT_EQ(est.mean, again.mean);
}

TEST(Objective, AmplitudePenalty) {
    const auto c = basis::ConstraintSet::for_horizon(kOmega, kTp);
    EXPECT_EQ(amplitude_penalty(basis::constant_field(kOmega, kTp), c), 0.0);
    EXPECT_EQ(amplitude_penalty(basis::constant_field(0.5 * kOmega, kTp), c), 0.0);
    // Twice the bound: lambda * (omega)^2 / omega^2.
    EXPECT_NEAR(amplitude_penalty(basis::constant_field(2.0 * kOmega, kTp), c), kPenaltyWeight, 1e-6);
    const auto spec = pi_pulse_spec(5);
    const auto f = basis::constant_field(1.5 * kOmega, kTp);
    EXPECT_NEAR(penalized_objective(f, spec), 1.0 - state_objective(f, spec) + amplitude_penalty(f, spec.constraints),
                1e-15);
}

TEST(Objective, ThreadedGridIsDeterministic) {
    auto spec = pi_pulse_spec(101);
    const auto f = basis::constant_field(kOmega, kTp);
    spec.threads = 1;
    const double serial = state_objective(f, spec);
    spec.threads = 4;
    EXPECT_EQ(state_objective(f, spec), serial);
}

TEST(Objective, DephasingUsesTheMasterEquation) {
    auto spec = pi_pulse_spec(1);
    const auto f = basis::constant_field(kOmega, kTp);
    spec.gamma = 1e7;
    const double with = state_objective(f, spec);
    EXPECT_LT(with, 0.99);
    EXPECT_GT(with, 0.5);
}
