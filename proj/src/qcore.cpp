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

#include "pmctl/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pmctl/errors.hpp"

namespace pmctl::qcore {

namespace {

constexpr cplx kI{0.0, 1.0};

double hermitian_defect(const Mat2& h) {
    return std::max({std::abs(h(0, 0).imag()), std::abs(h(1, 1).imag()),
                     std::abs(h(0, 1) - std::conj(h(1, 0)))});
}

}  // namespace

Mat2 Mat2::adjoint() const {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

double Mat2::max_abs() const {
    double r = 0.0;
    for (const auto& z : m) r = std::max(r, std::abs(z));
    return r;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
            a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)};
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.m[0] + b.m[0], a.m[1] + b.m[1], a.m[2] + b.m[2], a.m[3] + b.m[3]};
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m[0] - b.m[0], a.m[1] - b.m[1], a.m[2] - b.m[2], a.m[3] - b.m[3]};
}

Mat2 operator*(cplx s, const Mat2& a) { return {s * a.m[0], s * a.m[1], s * a.m[2], s * a.m[3]}; }

const Mat2& sigma_x() {
    static const Mat2 s{0.0, 1.0, 1.0, 0.0};
    return s;
}

const Mat2& sigma_y() {
    static const Mat2 s{0.0, -kI, kI, 0.0};
    return s;
}

const Mat2& sigma_z() {
    static const Mat2 s{1.0, 0.0, 0.0, -1.0};
    return s;
}

// --- PureState -------------------------------------------------------------

PureState::PureState(cplx up, cplx down) {
    const double n = std::sqrt(std::norm(up) + std::norm(down));
    if (!(n > 0.0) || !std::isfinite(n)) throw ContractViolation("PureState: zero or non-finite amplitude vector");
    amp_ = {up / n, down / n};
}

// --- DensityMatrix ---------------------------------------------------------

DensityMatrix::DensityMatrix(const Mat2& rho) : rho_(rho) {
    if (hermitian_defect(rho) > 1e-12) throw ContractViolation("DensityMatrix: not Hermitian");
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-10) {
        std::ostringstream os;
        os << "DensityMatrix: trace " << tr << " != 1";
        throw ContractViolation(os.str());
    }
    const auto r = bloch();
    const double len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    if ((1.0 - len) / 2.0 < -1e-10) throw ContractViolation("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::from_state(const PureState& psi) {
    const auto& a = psi.amplitudes();
    Mat2 rho{a[0] * std::conj(a[0]), a[0] * std::conj(a[1]), a[1] * std::conj(a[0]), a[1] * std::conj(a[1])};
    // Exact Hermiticity regardless of rounding in the outer product.
    rho(0, 0) = rho(0, 0).real();
    rho(1, 1) = rho(1, 1).real();
    rho(1, 0) = std::conj(rho(0, 1));
    return DensityMatrix(rho);
}

DensityMatrix DensityMatrix::from_bloch(double x, double y, double z) {
    return DensityMatrix(Mat2{(1.0 + z) / 2.0, cplx(x, -y) / 2.0, cplx(x, y) / 2.0, (1.0 - z) / 2.0});
}

std::array<double, 3> DensityMatrix::bloch() const {
    return {2.0 * rho_(1, 0).real(), 2.0 * rho_(1, 0).imag(), (rho_(0, 0) - rho_(1, 1)).real()};
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

// --- Unitary2 --------------------------------------------------------------

Unitary2::Unitary2(const Mat2& u) : u_(u) {
    const Mat2 d = u.adjoint() * u - Mat2::identity();
    if (d.max_abs() > 1e-10) throw ContractViolation("Unitary2: matrix is not unitary");
}

Unitary2 Unitary2::adjoint() const { return Unitary2(u_.adjoint()); }

PureState Unitary2::apply(const PureState& psi) const {
    const auto& a = psi.amplitudes();
    return {u_(0, 0) * a[0] + u_(0, 1) * a[1], u_(1, 0) * a[0] + u_(1, 1) * a[1]};
}

Unitary2 operator*(const Unitary2& a, const Unitary2& b) { return Unitary2(a.u_ * b.u_); }

// --- HermitianOp2 ----------------------------------------------------------

HermitianOp2::HermitianOp2(const Mat2& h) {
    if (hermitian_defect(h) > 1e-12 * std::max(1.0, h.max_abs()))
        throw ContractViolation("HermitianOp2: matrix is not Hermitian");
    c_ = {(h(0, 0) + h(1, 1)).real() / 2.0, (h(0, 1) + h(1, 0)).real() / 2.0,
          (h(1, 0) - h(0, 1)).imag() / 2.0, (h(0, 0) - h(1, 1)).real() / 2.0};
}

Mat2 HermitianOp2::matrix() const {
    const auto [h0, hx, hy, hz] = c_;
    return {h0 + hz, cplx(hx, -hy), cplx(hx, hy), h0 - hz};
}

Unitary2 expm_step(const HermitianOp2& h, double dt) {
    if (!(dt >= 0.0)) throw ArgumentError("expm_step: dt must be >= 0");
    const double hx = h.x(), hy = h.y(), hz = h.z();
    const double n = std::sqrt(hx * hx + hy * hy + hz * hz);
    const double theta = n * dt;
    const double c = std::cos(theta);
    // sin(n dt)/n, continuous at n = 0.
    const double s = n > 0.0 ? std::sin(theta) / n : dt;
    const cplx phase = std::exp(cplx(0.0, -h.identity_part() * dt));
    const Mat2 u{phase * cplx(c, -s * hz), phase * (-kI * s * cplx(hx, -hy)), phase * (-kI * s * cplx(hx, hy)),
                 phase * cplx(c, s * hz)};
    return Unitary2(u);
}

Unitary2 expm_step(const Mat2& h, double dt) { return expm_step(HermitianOp2(h), dt); }

double state_fidelity(const PureState& a, const PureState& b) {
    const auto& x = a.amplitudes();
    const auto& y = b.amplitudes();
    const cplx overlap = std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1];
    return std::clamp(std::norm(overlap), 0.0, 1.0);
}

double mixed_fidelity(const DensityMatrix& rho, const PureState& psi) {
    const auto& a = psi.amplitudes();
    const auto& r = rho.matrix();
    const cplx v = std::conj(a[0]) * (r(0, 0) * a[0] + r(0, 1) * a[1]) + std::conj(a[1]) * (r(1, 0) * a[0] + r(1, 1) * a[1]);
    return std::clamp(v.real(), 0.0, 1.0);
}

double gate_fidelity(const Unitary2& target, const Unitary2& actual) {
    const Mat2& u = target.matrix();
    const Mat2& v = actual.matrix();
    const Mat2 ud = u.adjoint();
    const Mat2 vd = v.adjoint();
    double sum = 0.0;
    for (const Mat2* s : {&sigma_x(), &sigma_y(), &sigma_z()}) {
        sum += ((u * *s * ud) * (v * *s * vd)).trace().real() / 4.0;
    }
    return std::clamp(0.5 + sum / 3.0, 0.0, 1.0);
}

Unitary2 rotation_x(double theta) { return expm_step(HermitianOp2(0.0, 0.5, 0.0, 0.0), theta); }
Unitary2 rotation_y(double theta) { return expm_step(HermitianOp2(0.0, 0.0, 0.5, 0.0), theta); }

namespace gates {
Unitary2 identity() { return Unitary2::identity(); }
Unitary2 pauli_x() { return Unitary2(sigma_x()); }
Unitary2 pauli_y() { return Unitary2(sigma_y()); }
Unitary2 pauli_z() { return Unitary2(sigma_z()); }
Unitary2 hadamard() {
    const double r = std::numbers::sqrt2 / 2.0;
    return Unitary2(Mat2{r, r, r, -r});
}
}  // namespace gates

}  // namespace pmctl::qcore
