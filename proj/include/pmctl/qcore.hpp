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

// Exact two-level primitives.
//
// Basis convention used throughout the library:
//   sigma_z = diag(1, -1),  |up> = (1, 0)^T,  |down> = (0, 1)^T.
// State-transfer problems start in |down> and target |up>. Fidelities only
// depend on populations, so the choice does not affect any reported number.
// The "|0>" of the decoupling simulation is |up>.

#pragma once

#include <array>
#include <complex>

namespace pmctl::qcore {

using cplx = std::complex<double>;

/// Plain 2x2 complex matrix, row major: {m00, m01, m10, m11}.
struct Mat2 {
    std::array<cplx, 4> m{};

    constexpr Mat2() = default;
    constexpr Mat2(cplx a, cplx b, cplx c, cplx d) : m{a, b, c, d} {}

    constexpr cplx& operator()(int r, int c) { return m[2 * r + c]; }
    constexpr const cplx& operator()(int r, int c) const { return m[2 * r + c]; }

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Mat2 adjoint() const;
    cplx trace() const { return m[0] + m[3]; }
    /// Largest absolute entry.
    double max_abs() const;
};

Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(cplx s, const Mat2& a);

const Mat2& sigma_x();
const Mat2& sigma_y();
const Mat2& sigma_z();

class PureState {
public:
    /// Normalizes the given amplitudes; throws ContractViolation on a zero vector.
    PureState(cplx up, cplx down);

    static PureState up() { return {1.0, 0.0}; }
    static PureState down() { return {0.0, 1.0}; }

    cplx up_amplitude() const { return amp_[0]; }
    cplx down_amplitude() const { return amp_[1]; }
    const std::array<cplx, 2>& amplitudes() const { return amp_; }

private:
    std::array<cplx, 2> amp_;
};

class DensityMatrix {
public:
    /// Validates Hermiticity (1e-12), unit trace (1e-10) and eigenvalues >= -1e-10.
    explicit DensityMatrix(const Mat2& rho);

    static DensityMatrix from_state(const PureState& psi);
    /// rho = (I + x sx + y sy + z sz) / 2.
    static DensityMatrix from_bloch(double x, double y, double z);

    const Mat2& matrix() const { return rho_; }
    std::array<double, 3> bloch() const;
    double purity() const;

private:
    Mat2 rho_;
};

class Unitary2 {
public:
    /// Validates U^dagger U = I within 1e-10.
    explicit Unitary2(const Mat2& u);

    static Unitary2 identity() { return Unitary2(Mat2::identity()); }

    const Mat2& matrix() const { return u_; }
    Unitary2 adjoint() const;
    PureState apply(const PureState& psi) const;

    friend Unitary2 operator*(const Unitary2& a, const Unitary2& b);

private:
    Mat2 u_;
};

/// Hermitian generator in angular-frequency units, stored as
/// H = h0 I + hx sx + hy sy + hz sz.
class HermitianOp2 {
public:
    /// Validates Hermiticity within 1e-12 relative to the entry scale.
    explicit HermitianOp2(const Mat2& h);
    HermitianOp2(double h0, double hx, double hy, double hz) : c_{h0, hx, hy, hz} {}

    double identity_part() const { return c_[0]; }
    double x() const { return c_[1]; }
    double y() const { return c_[2]; }
    double z() const { return c_[3]; }
    Mat2 matrix() const;

private:
    std::array<double, 4> c_;
};

/// exp(-i H dt), closed form through the Pauli decomposition.
Unitary2 expm_step(const HermitianOp2& h, double dt);
/// Same, for a raw matrix; throws ContractViolation when `h` is not Hermitian.
Unitary2 expm_step(const Mat2& h, double dt);

/// |<a|b>|^2
double state_fidelity(const PureState& a, const PureState& b);
/// <psi|rho|psi>
double mixed_fidelity(const DensityMatrix& rho, const PureState& psi);
/// Average gate fidelity 1/2 + 1/3 sum_k Tr(U s_k/2 U^+ V s_k/2 V^+);
/// insensitive to a global phase on either argument.
double gate_fidelity(const Unitary2& target, const Unitary2& actual);

/// Rotation exp(-i theta sigma_x / 2).
Unitary2 rotation_x(double theta);
Unitary2 rotation_y(double theta);

namespace gates {
Unitary2 identity();
Unitary2 pauli_x();
Unitary2 pauli_y();
Unitary2 pauli_z();
Unitary2 hadamard();
}  // namespace gates

}  // namespace pmctl::qcore
