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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pmctl/basis.hpp"
#include "pmctl/objective.hpp"

namespace pmctl::optimizer {

struct Bounds {
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t size() const { return lo.size(); }
    bool contains(std::span<const double> x) const;
    /// Throws ArgumentError on size mismatch, lo > hi or non-finite entries.
    void validate() const;
};

/// Search box for a family: amplitudes in [-omega_max, omega_max], frequency
/// parameters in [freq_lo, freq_hi], phases in [0, 2 pi].
Bounds default_bounds(basis::Family family, int terms, const basis::ConstraintSet& c);

struct TracePoint {
    std::size_t evaluations;
    double best;
};

struct RunRecord {
    std::size_t start_index = 0;
    std::vector<double> start;
    std::vector<double> best_params;
    double best_value = 0.0;
    std::size_t evaluations = 0;     ///< n_f
    std::vector<TracePoint> trace;   ///< best-so-far after each improvement
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
    double initial_step = 0.1;     ///< initial simplex edge as a fraction of each box width
    double diameter_tol = 1e-9;    ///< stop once the simplex fits in this L-infinity ball
};

/// Box-bounded Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2). Trial points are clipped to the box. Stops after `budget`
/// evaluations or when the simplex diameter drops below the tolerance.
/// Throws ArgumentError when x0 lies outside the box or budget < 1.
RunRecord nelder_mead(const ObjectiveFn& f, std::vector<double> x0, const Bounds& bounds, std::size_t budget,
                      NelderMeadOptions options = {});

/// Uniform per coordinate within the box; deterministic per seed.
std::vector<double> random_start(const Bounds& bounds, std::uint64_t seed);

struct OptimizationSpec {
    objective::ObjectiveSpec objective;
    basis::Family family = basis::Family::PM;
    int terms = 1;
    Bounds bounds;             ///< empty: default_bounds(family, terms, objective.constraints)
    std::size_t n_starts = 120;
    std::size_t budget = 0;    ///< 0: 200 x (number of optimized parameters)
    std::uint64_t seed = 1;
    bool randomize_freqs = false;  ///< freeze w_j (SFB families) or nu_j (PM) at random start values
    unsigned threads = 0;      ///< workers across starts; 0 = all cores
    double carrier = 0.0;
};

/// Parameters that randomize_freqs freezes: w_j for the Fourier families, nu_j for PM.
std::vector<bool> frozen_frequency_mask(basis::Family family, int terms);

struct RunSet {
    std::vector<RunRecord> runs;  ///< sorted by (best value, start index)
    std::size_t budget = 0;
    std::size_t free_params = 0;
    basis::ControlField best_field;
    double best_value() const { return runs.front().best_value; }
    double mean_evaluations() const;
};

RunSet multi_start(const OptimizationSpec& spec);

}  // namespace pmctl::optimizer
