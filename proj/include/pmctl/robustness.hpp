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
#include <vector>

#include "pmctl/basis.hpp"
#include "pmctl/dynamics.hpp"
#include "pmctl/objective.hpp"

namespace pmctl::robustness {

/// Fidelity over a detuning x amplitude-scale grid; values[a][d] belongs to
/// (alpha[a], delta[d]).
struct FidelityMap {
    std::vector<double> delta;  ///< rad/s
    std::vector<double> alpha;
    std::vector<std::vector<double>> values;
    double gamma = 0.0;

    double at(std::size_t a, std::size_t d) const { return values[a][d]; }
};

/// Evenly spaced axis with `n` points over [lo, hi] (n = 1 gives {lo}).
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Default axes: delta in [-1.5 W, 1.5 W] and alpha in [0.5, 1.5], 101 points each.
std::vector<double> default_delta_axis(double fwhm, std::size_t n = 101);
std::vector<double> default_alpha_axis(std::size_t n = 101);

/// Per-cell single-member fidelity. The state-transfer or gate target and the
/// propagation horizon/step come from `spec`; `spec.gamma` selects the
/// dephasing propagator when positive.
FidelityMap fidelity_map(const basis::ControlField& field, const std::vector<double>& delta_axis,
                         const std::vector<double>& alpha_axis, const objective::ObjectiveSpec& spec);

/// Area of the cells whose fidelity exceeds `threshold`, in (rad/s) x (alpha)
/// units. Each grid point owns the cell bounded by the midpoints to its
/// neighbours, clipped to the axis extent, so an all-ones map returns the
/// full rectangle.
double area_above(const FidelityMap& map, double threshold);

/// Full rectangle area covered by the axes.
double total_area(const FidelityMap& map);

struct SweepPoint {
    double gamma;
    double fidelity;
    double std_error;
};

/// Monte-Carlo ensemble fidelity under dephasing for each gamma.
std::vector<SweepPoint> dephasing_sweep(const basis::ControlField& field, const std::vector<double>& gammas,
                                        const objective::ObjectiveSpec& spec, std::uint64_t seed);

}  // namespace pmctl::robustness
