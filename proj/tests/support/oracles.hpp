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

// Reference results computed without the library: closed forms, series and
// generic quadrature / ODE integration.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

using cplx = std::complex<double>;

/// Generalized Rabi formula: |<up|U|down>|^2 for a constant drive of
/// amplitude `omega` (H = delta/2 sz + omega/2 sx) after time t.
inline double rabi_transfer(double omega, double delta, double t) {
    const double w2 = omega * omega + delta * delta;
    if (w2 == 0.0) return 0.0;
    const double s = std::sin(std::sqrt(w2) * t / 2.0);
    return omega * omega / w2 * s * s;
}

/// Envelope a e^{i(w t + phi)}: in the frame rotating at w about z the drive
/// is static with effective detuning delta - w.
inline double rotating_frame_transfer(double a, double w, double delta, double t) {
    return rabi_transfer(a, delta - w, t);
}

/// J_n(x) from its power series, J_{-n} = (-1)^n J_n.
inline double bessel_series(int n, double x) {
    if (n < 0) return (n % 2 == 0 ? 1.0 : -1.0) * bessel_series(-n, x);
    long double term = 1.0L;
    for (int k = 1; k <= n; ++k) term *= static_cast<long double>(x) / 2.0L / k;
    long double sum = term;
    const long double q = -static_cast<long double>(x) * x / 4.0L;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<long double>(k) * (k + n));
        sum += term;
        if (std::fabs(term) < 1e-22L * std::fabs(sum) + 1e-300L) break;
    }
    return static_cast<double>(sum);
}

/// Gaussian-weighted Rabi transfer for a constant pi-type drive, integrated
/// with adaptive Gauss-Kronrod quadrature over +-12 sigma.
inline double gaussian_rabi_average(double omega, double t, double sigma) {
    if (sigma == 0.0) return rabi_transfer(omega, 0.0, t);
    const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma);
    auto f = [&](double d) { return norm * std::exp(-d * d / (2.0 * sigma * sigma)) * rabi_transfer(omega, d, t); };
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -12.0 * sigma, 12.0 * sigma, 15, 1e-13,
                                                                         &err);
}

/// Average gate fidelity of two single-qubit unitaries via the trace overlap
/// (|Tr(U^dag V)|^2 + 2) / 6; row-major 2x2 matrices.
inline double trace_gate_fidelity(const std::array<cplx, 4>& u, const std::array<cplx, 4>& v) {
    const cplx tr = std::conj(u[0]) * v[0] + std::conj(u[2]) * v[2] + std::conj(u[1]) * v[1] + std::conj(u[3]) * v[3];
    return (std::norm(tr) + 2.0) / 6.0;
}

/// Schrodinger equation for H = delta/2 sz + (Re c/2) sx + (Im c/2) sy with
/// classical RK4 on the continuous envelope; returns the final state.
inline std::array<cplx, 2> rk4_state(const std::function<cplx(double)>& c, double delta, double t_end, int steps,
                                     std::array<cplx, 2> psi) {
    const cplx i(0.0, 1.0);
    auto rhs = [&](double t, const std::array<cplx, 2>& p) {
        const cplx e = c(t);
        // -i H psi with H = [[delta/2, conj(e)/2], [e/2, -delta/2]]
        return std::array<cplx, 2>{-i * (0.5 * delta * p[0] + 0.5 * std::conj(e) * p[1]),
                                   -i * (0.5 * e * p[0] - 0.5 * delta * p[1])};
    };
    const double h = t_end / steps;
    for (int k = 0; k < steps; ++k) {
        const double t = k * h;
        auto add = [](const std::array<cplx, 2>& a, const std::array<cplx, 2>& b, double s) {
            return std::array<cplx, 2>{a[0] + s * b[0], a[1] + s * b[1]};
        };
        const auto k1 = rhs(t, psi);
        const auto k2 = rhs(t + h / 2, add(psi, k1, h / 2));
        const auto k3 = rhs(t + h / 2, add(psi, k2, h / 2));
        const auto k4 = rhs(t + h, add(psi, k3, h));
        for (int j = 0; j < 2; ++j) psi[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    return psi;
}

}  // namespace oracle
