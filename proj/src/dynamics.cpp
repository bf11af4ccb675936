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

#include "pmctl/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "pmctl/errors.hpp"
#include "pmctl/rng.hpp"

namespace pmctl::dynamics {

using basis::cplx;
using qcore::Mat2;

double fwhm_factor() {
    static const double f = 2.0 * std::sqrt(2.0 * std::numbers::ln2);
    return f;
}

EnsembleModel EnsembleModel::from_fwhm(double fwhm, int grid_points, std::size_t mc_draws) {
    EnsembleModel m{fwhm / fwhm_factor(), grid_points, mc_draws};
    m.validate();
    return m;
}

double EnsembleModel::fwhm() const { return sigma * fwhm_factor(); }

void EnsembleModel::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ArgumentError("EnsembleModel: sigma must be >= 0");
    if (grid_points < 1) throw ArgumentError("EnsembleModel: M must be >= 1");
    if (mc_draws < 1) throw ArgumentError("EnsembleModel: K must be >= 1");
}

double NoiseModel::diffusion_for_std(double std, double tau) {
    if (!(tau > 0.0)) throw ArgumentError("NoiseModel: tau must be > 0");
    return 2.0 * std * std / tau;
}

void NoiseModel::validate() const {
    if (!(gamma >= 0.0 && ou_tau >= 0.0 && ou_c >= 0.0 && static_fwhm >= 0.0))
        throw ArgumentError("NoiseModel: gamma, tau, c and static FWHM must be >= 0");
}

// --- SampledDrive ----------------------------------------------------------

SampledDrive::SampledDrive(const ControlField& field, double t_begin, double t_end, double dt) {
    const double len = t_end - t_begin;
    if (!(dt > 0.0)) throw ArgumentError("propagation: dt must be > 0");
    if (!(len > 0.0)) throw ArgumentError("propagation: empty time interval");
    if (dt > len * (1.0 + 1e-12)) throw ArgumentError("propagation: dt exceeds the propagation time");
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(len / dt * (1.0 - 1e-12))));
    h_ = len / static_cast<double>(n);
    mid_.resize(n);
    for (std::size_t k = 0; k < n; ++k) mid_[k] = field.envelope(t_begin + (static_cast<double>(k) + 0.5) * h_);
}

namespace {

// Coefficients of exp(-i (hx sx + hy sy + hz sz) h) = cos I - i sinc (h.sigma).
struct StepCoeffs {
    double c;
    double sx, sy, sz;  // sin(|h| dt)/|h| times each component
};

inline StepCoeffs step_coeffs(double hx, double hy, double hz, double dt) {
    const double n = std::sqrt(hx * hx + hy * hy + hz * hz);
    const double th = n * dt;
    const double s = n > 0.0 ? std::sin(th) / n : dt;
    return {std::cos(th), s * hx, s * hy, s * hz};
}

}  // namespace

PureState SampledDrive::state(double delta, double alpha, const PureState& psi0) const {
    cplx u = psi0.up_amplitude();
    cplx d = psi0.down_amplitude();
    const double hz = 0.5 * delta;
    const double ha = 0.5 * alpha;
    for (const cplx& c : mid_) {
        const StepCoeffs k = step_coeffs(ha * c.real(), ha * c.imag(), hz, h_);
        // U = [[c - i sz, -i sx - sy], [-i sx + sy, c + i sz]]
        const cplx u00(k.c, -k.sz), u01(-k.sy, -k.sx), u10(k.sy, -k.sx), u11(k.c, k.sz);
        const cplx nu = u00 * u + u01 * d;
        d = u10 * u + u11 * d;
        u = nu;
    }
    return {u, d};
}

Unitary2 SampledDrive::unitary(double delta, double alpha) const {
    // Columns of U are the images of the basis states.
    Mat2 acc = Mat2::identity();
    const double hz = 0.5 * delta;
    const double ha = 0.5 * alpha;
    for (const cplx& c : mid_) {
        const StepCoeffs k = step_coeffs(ha * c.real(), ha * c.imag(), hz, h_);
        const Mat2 step{cplx(k.c, -k.sz), cplx(-k.sy, -k.sx), cplx(k.sy, -k.sx), cplx(k.c, k.sz)};
        acc = step * acc;
    }
    return Unitary2(acc);
}

DensityMatrix SampledDrive::lindblad(double delta, double alpha, double gamma, const DensityMatrix& rho0) const {
    if (!(gamma >= 0.0)) throw ArgumentError("propagate_lindblad: gamma must be >= 0");
    // Bloch form: dr/dt = W x r - gamma (x, y, 0) with W = (alpha Re c, alpha Im c, delta).
    auto r = rho0.bloch();
    const double h = h_;
    for (const cplx& c : mid_) {
        const double wx = alpha * c.real(), wy = alpha * c.imag(), wz = delta;
        auto f = [&](const std::array<double, 3>& v) -> std::array<double, 3> {
            return {wy * v[2] - wz * v[1] - gamma * v[0], wz * v[0] - wx * v[2] - gamma * v[1],
                    wx * v[1] - wy * v[0]};
        };
        auto axpy = [](const std::array<double, 3>& a, double s, const std::array<double, 3>& b) {
            return std::array<double, 3>{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
        };
        const auto k1 = f(r);
        const auto k2 = f(axpy(r, 0.5 * h, k1));
        const auto k3 = f(axpy(r, 0.5 * h, k2));
        const auto k4 = f(axpy(r, h, k3));
        for (int i = 0; i < 3; ++i) r[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return DensityMatrix::from_bloch(r[0], r[1], r[2]);
}

// --- free functions --------------------------------------------------------

Unitary2 propagate_unitary(const ControlField& field, double delta, double alpha, double T, double dt) {
    return SampledDrive(field, 0.0, T, dt).unitary(delta, alpha);
}

PureState propagate_state(const ControlField& field, double delta, double alpha, double T, double dt,
                          const PureState& psi0) {
    return SampledDrive(field, 0.0, T, dt).state(delta, alpha, psi0);
}

PureState propagate_state_interval(const ControlField& field, double delta, double alpha, double t_begin,
                                   double t_end, double dt, const PureState& psi0) {
    return SampledDrive(field, t_begin, t_end, dt).state(delta, alpha, psi0);
}

DensityMatrix propagate_lindblad(const ControlField& field, double delta, double alpha, double gamma, double T,
                                 double dt, const DensityMatrix& rho0) {
    return SampledDrive(field, 0.0, T, dt).lindblad(delta, alpha, gamma, rho0);
}

DetuningGrid grid_detunings(const EnsembleModel& model) {
    model.validate();
    const int m = model.grid_points;
    DetuningGrid g;
    g.delta.resize(static_cast<std::size_t>(m));
    g.weight.resize(static_cast<std::size_t>(m));
    if (m == 1) {
        g.delta[0] = 0.0;
        g.weight[0] = 1.0;
        return g;
    }
    const double w = model.fwhm();
    double total = 0.0;
    for (int k = 0; k < m; ++k) {
        // Odd numerator about the centre keeps the grid exactly symmetric.
        const double x = w * static_cast<double>(2 * k - (m - 1)) / static_cast<double>(m - 1);
        g.delta[static_cast<std::size_t>(k)] = x;
        const double p = model.sigma > 0.0 ? std::exp(-x * x / (2.0 * model.sigma * model.sigma)) : 1.0;
        g.weight[static_cast<std::size_t>(k)] = p;
        total += p;
    }
    for (auto& p : g.weight) p /= total;
    return g;
}

std::vector<double> random_detunings(const EnsembleModel& model, std::uint64_t seed) {
    model.validate();
    std::vector<double> out(model.mc_draws, 0.0);
    if (model.sigma == 0.0) return out;
    Rng rng(stream_seed(seed, 0));
    std::normal_distribution<double> normal(0.0, model.sigma);
    for (auto& x : out) x = normal(rng);
    return out;
}

OuStepper::OuStepper(double tau, double c, double dt) {
    if (!(tau > 0.0)) throw ArgumentError("OU: tau must be > 0");
    if (!(c >= 0.0)) throw ArgumentError("OU: c must be >= 0");
    if (!(dt > 0.0)) throw ArgumentError("OU: dt must be > 0");
    decay = std::exp(-dt / tau);
    kick = std::sqrt(c * tau / 2.0 * (1.0 - std::exp(-2.0 * dt / tau)));
}

std::vector<double> ou_trajectory(double tau, double c, double dt, std::size_t n_steps, std::uint64_t seed,
                                  double delta0) {
    const OuStepper step(tau, c, dt);
    Rng rng(stream_seed(seed, 0));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> out;
    out.reserve(n_steps + 1);
    out.push_back(delta0);
    for (std::size_t k = 0; k < n_steps; ++k) out.push_back(step(out.back(), normal(rng)));
    return out;
}

}  // namespace pmctl::dynamics
