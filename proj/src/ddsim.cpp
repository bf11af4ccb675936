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

#include "pmctl/ddsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pmctl/errors.hpp"
#include "pmctl/parallel.hpp"
#include "pmctl/rng.hpp"

namespace pmctl::ddsim {

using basis::cplx;

double DDSchedule::total_duration() const {
    double t = 0.0;
    for (const auto& s : segments) t += std::visit([](const auto& x) { return x.duration; }, s);
    return t;
}

double DDSchedule::idle_duration() const {
    double t = 0.0;
    for (const auto& s : segments)
        if (const auto* idle = std::get_if<Idle>(&s)) t += idle->duration;
    return t;
}

int DDSchedule::pulse_count(GateAxis axis) const {
    return static_cast<int>(std::count_if(segments.begin(), segments.end(), [&](const Segment& s) {
        const auto* p = std::get_if<Pulse>(&s);
        return p && p->axis == axis;
    }));
}

double DDSchedule::shortest_segment() const {
    double t = std::numeric_limits<double>::infinity();
    for (const auto& s : segments) t = std::min(t, std::visit([](const auto& x) { return x.duration; }, s));
    return t;
}

PulseImpl PulseImpl::rectangular(double omega) {
    return PulseImpl("rect", std::nullopt, std::nullopt, omega, std::numbers::pi / 2.0);
}

PulseImpl PulseImpl::optimized(basis::ControlField x, basis::ControlField y) {
    return PulseImpl("optimized", std::move(x), std::move(y), 0.0, 0.0);
}

PulseImpl PulseImpl::phase_shifted(basis::ControlField x) {
    return PulseImpl("phase_shifted", std::move(x), std::nullopt, 0.0, std::numbers::pi / 2.0);
}

PulseShape PulseImpl::shape(GateAxis axis, double duration) const {
    if (!x_) {
        return {basis::constant_field(omega_, duration), axis == GateAxis::Y ? y_phase_ : 0.0};
    }
    if (axis == GateAxis::X) return {*x_, 0.0};
    if (y_) return {*y_, 0.0};
    return {*x_, y_phase_};
}

DDSchedule build_xy8(double t_pulse, double tau, const PulseImpl& impl) {
    if (!(t_pulse > 0.0) || !(tau > 0.0)) throw ArgumentError("build_xy8: durations must be > 0");
    static constexpr GateAxis kOrder[8] = {GateAxis::X, GateAxis::Y, GateAxis::X, GateAxis::Y,
                                           GateAxis::Y, GateAxis::X, GateAxis::Y, GateAxis::X};
    const PulseShape xs = impl.shape(GateAxis::X, t_pulse);
    const PulseShape ys = impl.shape(GateAxis::Y, t_pulse);
    DDSchedule s;
    s.segments.push_back(Idle{tau / 2.0});
    for (int i = 0; i < 8; ++i) {
        if (i > 0) s.segments.push_back(Idle{tau});
        s.segments.push_back(Pulse{kOrder[i], kOrder[i] == GateAxis::X ? xs : ys, t_pulse});
    }
    s.segments.push_back(Idle{tau / 2.0});
    return s;
}

namespace {

struct PreparedSegment {
    bool idle;
    std::size_t steps;
    double h;
    std::vector<cplx> drive;  // midpoint envelope, pulses only
};

PreparedSegment prepare(const Segment& seg, double dt) {
    if (const auto* idle = std::get_if<Idle>(&seg)) {
        const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(idle->duration / dt * (1.0 - 1e-12))));
        return {true, n, idle->duration / static_cast<double>(n), {}};
    }
    const auto& p = std::get<Pulse>(seg);
    const dynamics::SampledDrive drive(p.shape.field, 0.0, p.duration, dt);
    const cplx rot = std::polar(1.0, p.shape.phase);
    std::vector<cplx> mid(drive.midpoints().begin(), drive.midpoints().end());
    for (auto& c : mid) c *= rot;
    return {false, mid.size(), drive.step(), std::move(mid)};
}

}  // namespace

PopulationEstimate simulate_population(const DDSchedule& schedule, const dynamics::NoiseModel& noise,
                                       std::size_t n_trials, double dt, std::uint64_t seed, unsigned threads) {
    noise.validate();
    if (n_trials < 1) throw ArgumentError("simulate_population: n_trials must be >= 1");
    if (!(dt > 0.0)) throw ArgumentError("simulate_population: dt must be > 0");
    if (schedule.segments.empty()) throw ArgumentError("simulate_population: empty schedule");
    if (dt > schedule.shortest_segment() * (1.0 + 1e-12))
        throw ArgumentError("simulate_population: dt exceeds the shortest schedule segment");

    std::vector<PreparedSegment> prepared;
    prepared.reserve(schedule.segments.size());
    for (const auto& s : schedule.segments) prepared.push_back(prepare(s, dt));

    const bool dynamic = noise.ou_tau > 0.0 && noise.ou_c > 0.0;
    std::vector<dynamics::OuStepper> ou;
    if (dynamic)
        for (const auto& p : prepared) ou.emplace_back(noise.ou_tau, noise.ou_c, p.h);
    const double static_sigma = noise.static_fwhm / dynamics::fwhm_factor();
    const double ou_std = dynamic ? std::sqrt(noise.ou_c * noise.ou_tau / 2.0) : 0.0;

    const auto init = qcore::rotation_x(std::numbers::pi / 2.0).apply(qcore::PureState::up());
    const auto readout = qcore::rotation_x(3.0 * std::numbers::pi / 2.0);

    std::vector<double> p0(n_trials);
    parallel_for(n_trials, threads, [&](std::size_t trial) {
        Rng rng = make_rng(seed, trial);
        std::normal_distribution<double> normal(0.0, 1.0);
        const double delta_static = static_sigma > 0.0 ? static_sigma * normal(rng) : 0.0;
        // The OU path starts from its stationary distribution.
        double delta_dyn = dynamic ? ou_std * normal(rng) : 0.0;

        cplx u = init.up_amplitude();
        cplx d = init.down_amplitude();
        for (std::size_t s = 0; s < prepared.size(); ++s) {
            const auto& seg = prepared[s];
            if (seg.idle) {
                double phase = 0.0;
                for (std::size_t k = 0; k < seg.steps; ++k) {
                    phase += (delta_static + delta_dyn) * seg.h;
                    if (dynamic) delta_dyn = ou[s](delta_dyn, normal(rng));
                }
                u *= std::polar(1.0, -0.5 * phase);
                d *= std::polar(1.0, 0.5 * phase);
                continue;
            }
            for (std::size_t k = 0; k < seg.steps; ++k) {
                const cplx c = seg.drive[k];
                const double hx = 0.5 * c.real(), hy = 0.5 * c.imag(), hz = 0.5 * (delta_static + delta_dyn);
                const double n = std::sqrt(hx * hx + hy * hy + hz * hz);
                const double th = n * seg.h;
                const double sn = n > 0.0 ? std::sin(th) / n : seg.h;
                const double cs = std::cos(th);
                const cplx u00(cs, -sn * hz), u01(-sn * hy, -sn * hx), u10(sn * hy, -sn * hx), u11(cs, sn * hz);
                const cplx nu = u00 * u + u01 * d;
                d = u10 * u + u11 * d;
                u = nu;
                if (dynamic) delta_dyn = ou[s](delta_dyn, normal(rng));
            }
        }
        const auto out = readout.apply(qcore::PureState(u, d));
        p0[trial] = std::norm(out.up_amplitude());
    });

    double sum = 0.0;
    for (double v : p0) sum += v;
    const double n = static_cast<double>(n_trials);
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : p0) ss += (v - mean) * (v - mean);
    const double se = n_trials > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return {mean, se, n_trials};
}

std::vector<CurvePoint> decay_curve(double t_pulse, const std::vector<double>& taus, const PulseImpl& impl,
                                    const dynamics::NoiseModel& noise, std::size_t n_trials, double dt,
                                    std::uint64_t seed, unsigned threads) {
    std::vector<CurvePoint> out;
    out.reserve(taus.size());
    for (double tau : taus) {
        const auto schedule = build_xy8(t_pulse, tau, impl);
        out.push_back({schedule.total_duration(), tau, simulate_population(schedule, noise, n_trials, dt, seed, threads)});
    }
    return out;
}

double t2_threshold() { return (1.0 + std::exp(-1.0)) / 2.0; }

std::optional<double> extract_t2(const std::vector<std::pair<double, double>>& curve) {
    const double thr = t2_threshold();
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (curve[i].first < curve[i - 1].first) throw ArgumentError("extract_t2: curve must be sorted by time");
    }
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const auto [t0, p0] = curve[i];
        const auto [t1, p1] = curve[i + 1];
        if (p0 >= thr && p1 < thr) return t0 + (p0 - thr) / (p0 - p1) * (t1 - t0);
    }
    return std::nullopt;
}

}  // namespace pmctl::ddsim
