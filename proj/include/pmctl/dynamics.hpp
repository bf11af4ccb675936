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

// Time evolution under H(t) = (delta/2) sz + alpha [(Re c/2) sx + (Im c/2) sy].
//
// The envelope is sampled at the midpoint of each of n uniform steps of
// length h = T / n, n = ceil(T / dt). Unitary propagation applies the exact
// exponential of each piecewise-constant step (second order in h). The
// dephasing propagator integrates the same piecewise-constant Hamiltonian
// with classical RK4 on the Bloch vector, so both paths share one
// discretization and agree at gamma = 0.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pmctl/basis.hpp"
#include "pmctl/qcore.hpp"

namespace pmctl::dynamics {

using basis::ControlField;
using qcore::DensityMatrix;
using qcore::PureState;
using qcore::Unitary2;

/// 2 sqrt(2 ln 2), the FWHM / sigma ratio of a Gaussian.
double fwhm_factor();

struct EnsembleModel {
    double sigma = 0.0;        ///< detuning standard deviation, rad/s
    int grid_points = 15;      ///< M
    std::size_t mc_draws = 100000;  ///< K

    static EnsembleModel from_fwhm(double fwhm, int grid_points = 15, std::size_t mc_draws = 100000);
    double fwhm() const;
    /// Throws ArgumentError on sigma < 0, M < 1 or K < 1.
    void validate() const;
};

struct NoiseModel {
    double gamma = 0.0;        ///< pure dephasing rate, 1/s
    double ou_tau = 0.0;       ///< OU relaxation time, s
    double ou_c = 0.0;         ///< OU diffusion constant, rad^2/s^3
    double static_fwhm = 0.0;  ///< FWHM of the static detuning, rad/s

    /// c such that the stationary OU standard deviation (c tau / 2)^(1/2) equals `std`.
    static double diffusion_for_std(double std, double tau);
    /// Throws ArgumentError on any negative field.
    void validate() const;
};

/// Envelope samples at step midpoints, shared by every detuning of an ensemble.
class SampledDrive {
public:
    /// Covers [t_begin, t_end] with n = ceil((t_end - t_begin) / dt) steps.
    /// Throws ArgumentError unless 0 < dt <= t_end - t_begin.
    SampledDrive(const ControlField& field, double t_begin, double t_end, double dt);

    std::size_t steps() const { return mid_.size(); }
    double step() const { return h_; }
    std::span<const basis::cplx> midpoints() const { return mid_; }

    Unitary2 unitary(double delta, double alpha) const;
    PureState state(double delta, double alpha, const PureState& psi0) const;
    DensityMatrix lindblad(double delta, double alpha, double gamma, const DensityMatrix& rho0) const;

private:
    std::vector<basis::cplx> mid_;
    double h_ = 0.0;
};

/// Time-ordered propagator over [0, T]. Throws ArgumentError if dt > T or dt <= 0.
Unitary2 propagate_unitary(const ControlField& field, double delta, double alpha, double T, double dt);

PureState propagate_state(const ControlField& field, double delta, double alpha, double T, double dt,
                          const PureState& psi0);

/// Propagates over [t_begin, t_end] only.
PureState propagate_state_interval(const ControlField& field, double delta, double alpha, double t_begin,
                                   double t_end, double dt, const PureState& psi0);

/// d rho/dt = -i[H, rho] + (gamma/2)(sz rho sz - rho).
DensityMatrix propagate_lindblad(const ControlField& field, double delta, double alpha, double gamma, double T,
                                 double dt, const DensityMatrix& rho0);

struct DetuningGrid {
    std::vector<double> delta;   ///< rad/s
    std::vector<double> weight;  ///< normalized Gaussian weights, sum 1
};

/// M evenly spaced detunings spanning [-W, W] with weights proportional to p(delta).
DetuningGrid grid_detunings(const EnsembleModel& model);

/// K draws from N(0, sigma); deterministic per seed.
std::vector<double> random_detunings(const EnsembleModel& model, std::uint64_t seed);

/// delta(t + dt) = delta(t) e^{-dt/tau} + [c tau/2 (1 - e^{-2 dt/tau})]^{1/2} n.
/// Returns n_steps + 1 values starting with delta0.
std::vector<double> ou_trajectory(double tau, double c, double dt, std::size_t n_steps, std::uint64_t seed,
                                  double delta0);

/// One exact OU update; `unit_normal` is the standard normal draw.
struct OuStepper {
    OuStepper(double tau, double c, double dt);
    double decay;
    double kick;
    double operator()(double current, double unit_normal) const { return current * decay + kick * unit_normal; }
};

}  // namespace pmctl::dynamics
