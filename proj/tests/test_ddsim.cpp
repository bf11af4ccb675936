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

#include "pmctl/ddsim.hpp"
#include "pmctl/errors.hpp"
#include "pmctl/units.hpp"

using namespace pmctl;
using namespace pmctl::ddsim;

namespace {

constexpr double kTp = 50e-9;
const double kOmega = std::numbers::pi / kTp;

}  // namespace

TEST(DDSim, Xy8Layout) {
    const auto s = build_xy8(kTp, 1e-6, PulseImpl::rectangular(kOmega));
    EXPECT_EQ(s.segments.size(), 17u);
    EXPECT_EQ(s.pulse_count(GateAxis::X), 4);
    EXPECT_EQ(s.pulse_count(GateAxis::Y), 4);
    EXPECT_NEAR(s.total_duration(), 8 * kTp + 8e-6, 1e-18);
    EXPECT_NEAR(s.idle_duration(), 8e-6, 1e-18);
    EXPECT_NEAR(s.shortest_segment(), kTp, 1e-20);
    const std::string order = [&] {
        std::string o;
        for (const auto& seg : s.segments)
            if (const auto* p = std::get_if<Pulse>(&seg)) o += p->axis == GateAxis::X ? 'X' : 'Y';
        return o;
    }();
    EXPECT_EQ(order, "XYXYYXYX");
    EXPECT_THROW(build_xy8(0.0, 1e-6, PulseImpl::rectangular(kOmega)), ArgumentError);
    EXPECT_THROW(build_xy8(kTp, -1.0, PulseImpl::rectangular(kOmega)), ArgumentError);
}

TEST(DDSim, PulseImplementations) {
    const auto rect = PulseImpl::rectangular(kOmega);
    EXPECT_EQ(rect.name(), "rect");
    const auto y = rect.shape(GateAxis::Y, kTp);
    EXPECT_NEAR(y.phase, std::numbers::pi / 2.0, 1e-15);
    EXPECT_NEAR(std::abs(y.field.envelope(1e-8)), kOmega, 1e-6);

    const basis::ControlField fx(basis::Family::PM, 1, {1.0, 2.0, 3.0}, 1e-7);
    const basis::ControlField fy(basis::Family::PM, 1, {4.0, 5.0, 6.0}, 1e-7);
    const auto opt = PulseImpl::optimized(fx, fy);
    EXPECT_EQ(opt.shape(GateAxis::Y, 1e-7).field, fy);
    EXPECT_EQ(opt.shape(GateAxis::Y, 1e-7).phase, 0.0);
    const auto shifted = PulseImpl::phase_shifted(fx);
    EXPECT_EQ(shifted.shape(GateAxis::Y, 1e-7).field, fx);
    EXPECT_NEAR(shifted.shape(GateAxis::Y, 1e-7).phase, std::numbers::pi / 2.0, 1e-15);
}

TEST(DDSim, NoiselessSequenceReturnsToZero) {
    // Ideal pi pulses compose to the identity; pi/2 + 3pi/2 about X is a 2 pi turn.
    const auto s = build_xy8(kTp, 1e-6, PulseImpl::rectangular(kOmega));
    const auto est = simulate_population(s, dynamics::NoiseModel{}, 4, 0.5e-9, 1);
    EXPECT_NEAR(est.p0, 1.0, 1e-10);
    EXPECT_NEAR(est.std_error, 0.0, 1e-10);
}

TEST(DDSim, StaticDetuningIsRefocusedByIdealPulses) {
    // With a very strong drive the pulses are nearly ideal and the echo
    // removes any static offset.
    const double tp = 1e-9;
    const auto s = build_xy8(tp, 2e-6, PulseImpl::rectangular(std::numbers::pi / tp));
    dynamics::NoiseModel noise;
    noise.static_fwhm = units::mhz_to_angular(0.5);
    const auto est = simulate_population(s, noise, 50, 0.25e-9, 2);
    EXPECT_GT(est.p0, 0.999);
}

TEST(DDSim, FreeDecayWithoutPulsesMatchesGaussianDephasing) {
    // A single idle period: P0 = (1 + <cos(delta T)>) / 2 = (1 + exp(-sigma^2 T^2 / 2)) / 2.
    DDSchedule s;
    const double t = 50e-9;
    s.segments.push_back(Idle{t});
    dynamics::NoiseModel noise;
    noise.static_fwhm = units::mhz_to_angular(5.0);
    const double sigma = noise.static_fwhm / dynamics::fwhm_factor();
    const auto est = simulate_population(s, noise, 20000, 1e-9, 3, 2);
    const double expect = 0.5 * (1.0 + std::exp(-0.5 * sigma * sigma * t * t));
    EXPECT_NEAR(est.p0, expect, 4.0 * est.std_error);
}

TEST(DDSim, DeterministicAcrossThreads) {
    const auto s = build_xy8(kTp, 0.5e-6, PulseImpl::rectangular(kOmega));
    dynamics::NoiseModel noise;
    noise.ou_tau = 20e-6;
    noise.ou_c = dynamics::NoiseModel::diffusion_for_std(units::mhz_to_angular(0.05), noise.ou_tau);
    noise.static_fwhm = units::mhz_to_angular(26.5);
    const auto a = simulate_population(s, noise, 16, 0.5e-9, 9, 1);
    const auto b = simulate_population(s, noise, 16, 0.5e-9, 9, 4);
    EXPECT_EQ(a.p0, b.p0);
    EXPECT_EQ(a.std_error, b.std_error);
}

TEST(DDSim, RejectsCoarseSteps) {
    const auto s = build_xy8(kTp, 1e-6, PulseImpl::rectangular(kOmega));
    EXPECT_THROW(simulate_population(s, dynamics::NoiseModel{}, 1, 60e-9, 1), ArgumentError);
    EXPECT_THROW(simulate_population(s, dynamics::NoiseModel{}, 0, 1e-9, 1), ArgumentError);
}

TEST(DDSim, T2Extraction) {
    const double thr = t2_threshold();
    EXPECT_NEAR(thr, (1.0 + std::exp(-1.0)) / 2.0, 1e-15);
    // Linear interpolation between the bracketing points.
    const std::vector<std::pair<double, double>> curve = {{1.0, 0.95}, {2.0, 0.8}, {3.0, 0.6}, {4.0, 0.55}};
    const auto t2 = extract_t2(curve);
    ASSERT_TRUE(t2.has_value());
    EXPECT_NEAR(*t2, 2.0 + (0.8 - thr) / 0.2, 1e-12);
    EXPECT_FALSE(extract_t2({{1.0, 0.99}, {2.0, 0.9}}).has_value());
    EXPECT_FALSE(extract_t2({{1.0, 0.5}, {2.0, 0.4}}).has_value());
    EXPECT_THROW(extract_t2({{2.0, 0.9}, {1.0, 0.5}}), ArgumentError);
}
