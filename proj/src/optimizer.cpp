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

#include "pmctl/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "pmctl/errors.hpp"
#include "pmctl/parallel.hpp"
#include "pmctl/rng.hpp"
#include "pmctl/units.hpp"

namespace pmctl::optimizer {

bool Bounds::contains(std::span<const double> x) const {
    if (x.size() != size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i] >= lo[i] && x[i] <= hi[i])) return false;
    return true;
}

void Bounds::validate() const {
    if (lo.size() != hi.size()) throw ArgumentError("Bounds: lo/hi size mismatch");
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!std::isfinite(lo[i]) || !std::isfinite(hi[i])) throw ArgumentError("Bounds: non-finite bound");
        if (lo[i] > hi[i]) throw ArgumentError("Bounds: lo > hi at coordinate " + std::to_string(i));
    }
}

Bounds default_bounds(basis::Family family, int terms, const basis::ConstraintSet& c) {
    c.validate();
    const std::size_t bs = basis::block_size(family);
    Bounds b;
    for (int j = 0; j < terms; ++j) {
        for (std::size_t i = 0; i < bs; ++i) {
            switch (basis::param_role(family, i)) {
                case basis::ParamRole::Amplitude:
                    b.lo.push_back(-c.omega_max);
                    b.hi.push_back(c.omega_max);
                    break;
                case basis::ParamRole::Frequency:
                    b.lo.push_back(c.freq_lo);
                    b.hi.push_back(c.freq_hi);
                    break;
                case basis::ParamRole::Phase:
                    b.lo.push_back(0.0);
                    b.hi.push_back(units::kTwoPi);
                    break;
            }
        }
    }
    return b;
}

namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

class Evaluator {
public:
    Evaluator(const ObjectiveFn& f, std::size_t budget, RunRecord& rec) : f_(f), budget_(budget), rec_(rec) {}

    bool exhausted() const { return rec_.evaluations >= budget_; }

    std::optional<double> operator()(const std::vector<double>& x) {
        if (exhausted()) return std::nullopt;
        double v = f_(x);
        if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
        ++rec_.evaluations;
        if (rec_.trace.empty() || v < rec_.best_value) {
            rec_.best_value = v;
            rec_.best_params = x;
            rec_.trace.push_back({rec_.evaluations, v});
        }
        return v;
    }

private:
    const ObjectiveFn& f_;
    std::size_t budget_;
    RunRecord& rec_;
};

void clip(std::vector<double>& x, const Bounds& b) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], b.lo[i], b.hi[i]);
}

// c + s (c - w), clipped.
std::vector<double> along(const std::vector<double>& c, const std::vector<double>& w, double s, const Bounds& b) {
    std::vector<double> x(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) x[i] = c[i] + s * (c[i] - w[i]);
    clip(x, b);
    return x;
}

double diameter(const std::vector<Vertex>& simplex) {
    double d = 0.0;
    for (std::size_t v = 1; v < simplex.size(); ++v)
        for (std::size_t i = 0; i < simplex[0].x.size(); ++i) d = std::max(d, std::abs(simplex[v].x[i] - simplex[0].x[i]));
    return d;
}

}  // namespace

RunRecord nelder_mead(const ObjectiveFn& f, std::vector<double> x0, const Bounds& bounds, std::size_t budget,
                      NelderMeadOptions options) {
    bounds.validate();
    if (budget < 1) throw ArgumentError("nelder_mead: budget must be >= 1");
    if (!bounds.contains(x0)) throw ArgumentError("nelder_mead: x0 lies outside the bounds");

    const std::size_t n = x0.size();
    RunRecord rec;
    rec.start = x0;
    Evaluator eval(f, budget, rec);

    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    simplex.push_back({x0, *eval(x0)});
    for (std::size_t i = 0; i < n && !eval.exhausted(); ++i) {
        std::vector<double> x = x0;
        const double step = options.initial_step * (bounds.hi[i] - bounds.lo[i]);
        x[i] = x0[i] + step <= bounds.hi[i] ? x0[i] + step : x0[i] - step;
        clip(x, bounds);
        simplex.push_back({x, *eval(x)});
    }
    if (simplex.size() < n + 1) return rec;

    auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
    std::vector<double> centroid(n);

    while (!eval.exhausted()) {
        std::stable_sort(simplex.begin(), simplex.end(), by_value);
        if (diameter(simplex) < options.diameter_tol) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(n);
        Vertex& worst = simplex[n];

        auto xr = along(centroid, worst.x, 1.0, bounds);
        const auto fr = eval(xr);
        if (!fr) break;

        if (*fr < simplex[0].f) {
            auto xe = along(centroid, worst.x, 2.0, bounds);
            const auto fe = eval(xe);
            if (fe && *fe < *fr)
                worst = {std::move(xe), *fe};
            else
                worst = {std::move(xr), *fr};
            continue;
        }
        if (*fr < simplex[n - 1].f) {
            worst = {std::move(xr), *fr};
            continue;
        }

        bool shrink = false;
        if (*fr < worst.f) {
            auto xc = along(centroid, worst.x, 0.5, bounds);
            const auto fc = eval(xc);
            if (!fc) break;
            if (*fc <= *fr)
                worst = {std::move(xc), *fc};
            else
                shrink = true;
        } else {
            auto xcc = along(centroid, worst.x, -0.5, bounds);
            const auto fcc = eval(xcc);
            if (!fcc) break;
            if (*fcc < worst.f)
                worst = {std::move(xcc), *fcc};
            else
                shrink = true;
        }
        if (shrink) {
            for (std::size_t v = 1; v <= n; ++v) {
                for (std::size_t i = 0; i < n; ++i)
                    simplex[v].x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
                const auto fv = eval(simplex[v].x);
                if (!fv) break;
                simplex[v].f = *fv;
            }
        }
    }
    return rec;
}

std::vector<double> random_start(const Bounds& bounds, std::uint64_t seed) {
    bounds.validate();
    Rng rng(stream_seed(seed, 0));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(bounds.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = bounds.lo[i] + u(rng) * (bounds.hi[i] - bounds.lo[i]);
        x[i] = std::clamp(x[i], bounds.lo[i], bounds.hi[i]);
    }
    return x;
}

std::vector<bool> frozen_frequency_mask(basis::Family family, int terms) {
    const std::size_t bs = basis::block_size(family);
    const std::size_t slot = family == basis::Family::PM ? 2 : 1;
    std::vector<bool> mask(bs * static_cast<std::size_t>(terms), false);
    for (int j = 0; j < terms; ++j) mask[static_cast<std::size_t>(j) * bs + slot] = true;
    return mask;
}

double RunSet::mean_evaluations() const {
    if (runs.empty()) return 0.0;
    double s = 0.0;
    for (const auto& r : runs) s += static_cast<double>(r.evaluations);
    return s / static_cast<double>(runs.size());
}

RunSet multi_start(const OptimizationSpec& spec) {
    if (spec.terms < 1) throw ArgumentError("multi_start: N must be >= 1");
    if (spec.n_starts < 1) throw ArgumentError("multi_start: need at least one start");
    const Bounds bounds = spec.bounds.size() > 0 ? spec.bounds
                                                 : default_bounds(spec.family, spec.terms, spec.objective.constraints);
    bounds.validate();
    const std::size_t np = static_cast<std::size_t>(spec.terms) * basis::block_size(spec.family);
    if (bounds.size() != np) throw ArgumentError("multi_start: bounds do not match the family parameter count");

    std::vector<bool> frozen = spec.randomize_freqs ? frozen_frequency_mask(spec.family, spec.terms)
                                                    : std::vector<bool>(np, false);
    std::vector<std::size_t> free_idx;
    for (std::size_t i = 0; i < np; ++i)
        if (!frozen[i] && bounds.hi[i] > bounds.lo[i]) free_idx.push_back(i);
    const std::size_t budget = spec.budget > 0 ? spec.budget : 200 * std::max<std::size_t>(1, free_idx.size());

    // Each start searches the free coordinates mapped onto the unit box, so
    // the simplex tolerance is scale free.
    Bounds unit;
    unit.lo.assign(free_idx.size(), 0.0);
    unit.hi.assign(free_idx.size(), 1.0);

    objective::ObjectiveSpec inner = spec.objective;
    inner.threads = 1;
    const double horizon = inner.horizon;

    std::vector<RunRecord> runs(spec.n_starts);
    parallel_for(spec.n_starts, spec.threads, [&](std::size_t s) {
        const std::vector<double> start = random_start(bounds, stream_seed(spec.seed, s));
        auto to_params = [&](std::span<const double> z) {
            std::vector<double> p = start;
            for (std::size_t k = 0; k < free_idx.size(); ++k) {
                const std::size_t i = free_idx[k];
                p[i] = std::clamp(bounds.lo[i] + z[k] * (bounds.hi[i] - bounds.lo[i]), bounds.lo[i], bounds.hi[i]);
            }
            return p;
        };
        const ObjectiveFn f = [&](std::span<const double> z) {
            const basis::ControlField field(spec.family, spec.terms, to_params(z), horizon, spec.carrier);
            return objective::penalized_objective(field, inner);
        };
        std::vector<double> z0(free_idx.size());
        for (std::size_t k = 0; k < free_idx.size(); ++k) {
            const std::size_t i = free_idx[k];
            z0[k] = (start[i] - bounds.lo[i]) / (bounds.hi[i] - bounds.lo[i]);
        }

        RunRecord rec;
        if (free_idx.empty()) {
            rec.best_params = start;
            rec.best_value = objective::penalized_objective(
                basis::ControlField(spec.family, spec.terms, start, horizon, spec.carrier), inner);
            rec.evaluations = 1;
            rec.trace.push_back({1, rec.best_value});
        } else {
            rec = nelder_mead(f, z0, unit, budget);
            rec.best_params = to_params(rec.best_params);
        }
        rec.start = start;
        rec.start_index = s;
        runs[s] = std::move(rec);
    });

    std::stable_sort(runs.begin(), runs.end(), [](const RunRecord& a, const RunRecord& b) {
        if (a.best_value != b.best_value) return a.best_value < b.best_value;
        return a.start_index < b.start_index;
    });

    basis::ControlField best(spec.family, spec.terms, runs.front().best_params, horizon, spec.carrier);
    return RunSet{std::move(runs), budget, free_idx.size(), std::move(best)};
}

}  // namespace pmctl::optimizer
