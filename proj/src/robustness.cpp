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

#include "pmctl/robustness.hpp"

#include <algorithm>

#include "pmctl/errors.hpp"
#include "pmctl/parallel.hpp"

namespace pmctl::robustness {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 0) throw ArgumentError("linspace: need at least one point");
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    v.back() = hi;
    return v;
}

std::vector<double> default_delta_axis(double fwhm, std::size_t n) { return linspace(-1.5 * fwhm, 1.5 * fwhm, n); }

std::vector<double> default_alpha_axis(std::size_t n) { return linspace(0.5, 1.5, n); }

FidelityMap fidelity_map(const basis::ControlField& field, const std::vector<double>& delta_axis,
                         const std::vector<double>& alpha_axis, const objective::ObjectiveSpec& spec) {
    if (delta_axis.empty() || alpha_axis.empty()) throw ArgumentError("fidelity_map: empty axis");
    const dynamics::SampledDrive drive(field, 0.0, spec.horizon, spec.dt);
    FidelityMap map{delta_axis, alpha_axis, std::vector<std::vector<double>>(alpha_axis.size()), spec.gamma};
    const auto rho0 = qcore::DensityMatrix::from_state(spec.initial);
    parallel_for(alpha_axis.size(), spec.threads, [&](std::size_t a) {
        auto& row = map.values[a];
        row.resize(delta_axis.size());
        for (std::size_t d = 0; d < delta_axis.size(); ++d) {
            const double delta = delta_axis[d];
            const double alpha = alpha_axis[a];
            if (spec.kind == objective::Kind::Gate) {
                row[d] = qcore::gate_fidelity(spec.target_gate, drive.unitary(delta, alpha));
            } else if (spec.gamma > 0.0) {
                row[d] = qcore::mixed_fidelity(drive.lindblad(delta, alpha, spec.gamma, rho0), spec.target_state);
            } else {
                row[d] = qcore::state_fidelity(spec.target_state, drive.state(delta, alpha, spec.initial));
            }
        }
    });
    return map;
}

namespace {

// Width of the cell owned by each axis point.
std::vector<double> cell_widths(const std::vector<double>& axis) {
    const std::size_t n = axis.size();
    std::vector<double> w(n, 1.0);
    if (n == 1) return w;
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i == 0 ? axis[0] : 0.5 * (axis[i - 1] + axis[i]);
        const double right = i + 1 == n ? axis[n - 1] : 0.5 * (axis[i] + axis[i + 1]);
        w[i] = std::abs(right - left);
    }
    return w;
}

}  // namespace

double area_above(const FidelityMap& map, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) throw ArgumentError("area_above: threshold must lie in (0, 1)");
    const auto wd = cell_widths(map.delta);
    const auto wa = cell_widths(map.alpha);
    double area = 0.0;
    for (std::size_t a = 0; a < map.alpha.size(); ++a)
        for (std::size_t d = 0; d < map.delta.size(); ++d)
            if (map.values[a][d] > threshold) area += wa[a] * wd[d];
    return area;
}

double total_area(const FidelityMap& map) {
    double sd = 0.0, sa = 0.0;
    for (double w : cell_widths(map.delta)) sd += w;
    for (double w : cell_widths(map.alpha)) sa += w;
    return sd * sa;
}

std::vector<SweepPoint> dephasing_sweep(const basis::ControlField& field, const std::vector<double>& gammas,
                                        const objective::ObjectiveSpec& spec, std::uint64_t seed) {
    if (spec.kind != objective::Kind::StateTransfer)
        throw ArgumentError("dephasing_sweep: only state-transfer objectives are supported");
    std::vector<SweepPoint> out;
    out.reserve(gammas.size());
    for (double g : gammas) {
        if (!(g >= 0.0)) throw ArgumentError("dephasing_sweep: gamma must be >= 0");
        objective::ObjectiveSpec s = spec;
        s.gamma = g;
        // Common random numbers across gamma values.
        const auto est = objective::monte_carlo_fidelity(field, s, seed);
        out.push_back({g, est.mean, est.std_error});
    }
    return out;
}

}  // namespace pmctl::robustness
