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

// XY-8 decoupling under static Gaussian plus Ornstein-Uhlenbeck detuning noise.
//
// Each trial draws a static detuning once and an OU path at the propagation
// step, starts in |0> = |up>, applies an instantaneous pi/2 rotation about X,
// the schedule (noise active during pulses and idles), an instantaneous
// 3 pi/2 rotation about X, and records the population of |0>.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pmctl/basis.hpp"
#include "pmctl/dynamics.hpp"

namespace pmctl::ddsim {

enum class GateAxis { X, Y };

/// Envelope of one pulse; the field is multiplied by exp(i phase).
struct PulseShape {
    basis::ControlField field;
    double phase = 0.0;
};

struct Idle {
    double duration;
};

struct Pulse {
    GateAxis axis;
    PulseShape shape;
    double duration;
};

using Segment = std::variant<Idle, Pulse>;

struct DDSchedule {
    std::vector<Segment> segments;

    double total_duration() const;
    double idle_duration() const;
    int pulse_count(GateAxis axis) const;
    double shortest_segment() const;
};

/// How the X and Y pi pulses are realized.
class PulseImpl {
public:
    /// Constant envelope `omega` (X: real, Y: imaginary) for the pulse duration.
    static PulseImpl rectangular(double omega);
    /// Independently optimized X and Y fields.
    static PulseImpl optimized(basis::ControlField x, basis::ControlField y);
    /// One X field; the Y pulse is the same field with a 90 degree phase shift.
    static PulseImpl phase_shifted(basis::ControlField x);

    PulseShape shape(GateAxis axis, double duration) const;
    const std::string& name() const { return name_; }

private:
    PulseImpl(std::string name, std::optional<basis::ControlField> x, std::optional<basis::ControlField> y,
              double omega, double y_phase)
        : name_(std::move(name)), x_(std::move(x)), y_(std::move(y)), omega_(omega), y_phase_(y_phase) {}

    std::string name_;
    std::optional<basis::ControlField> x_;
    std::optional<basis::ControlField> y_;
    double omega_ = 0.0;
    double y_phase_ = 0.0;
};

/// X-Y-X-Y-Y-X-Y-X with tau/2 idles at both ends and tau between pulses;
/// total 8 T_pulse + 8 tau. Throws ArgumentError for non-positive durations.
DDSchedule build_xy8(double t_pulse, double tau, const PulseImpl& impl);

struct PopulationEstimate {
    double p0 = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
};

/// Mean population of |0> over `n_trials` noisy trajectories; trial i uses
/// the stream (seed, i). Throws ArgumentError when dt exceeds the shortest
/// segment or n_trials < 1.
PopulationEstimate simulate_population(const DDSchedule& schedule, const dynamics::NoiseModel& noise,
                                       std::size_t n_trials, double dt, std::uint64_t seed, unsigned threads = 1);

struct CurvePoint {
    double total_time;  ///< s
    double tau;         ///< s
    PopulationEstimate estimate;
};

/// P0 versus total time for each pulse separation in `taus`.
std::vector<CurvePoint> decay_curve(double t_pulse, const std::vector<double>& taus, const PulseImpl& impl,
                                    const dynamics::NoiseModel& noise, std::size_t n_trials, double dt,
                                    std::uint64_t seed, unsigned threads = 1);

/// (1 + 1/e) / 2
double t2_threshold();

/// First downward crossing of t2_threshold(), linearly interpolated between
/// the bracketing samples. std::nullopt when the curve never crosses.
/// `curve` holds (T, P0) pairs sorted by T.
std::optional<double> extract_t2(const std::vector<std::pair<double, double>>& curve);

}  // namespace pmctl::ddsim
