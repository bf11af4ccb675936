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

#include "pmctl/basis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "pmctl/errors.hpp"
#include "pmctl/units.hpp"

namespace pmctl::basis {

namespace {

// (b / nu) sin(nu t), with the first-order limit b t once nu T is negligible.
inline double pm_phase(double b, double nu, double t, double horizon) {
    if (std::abs(nu) * horizon < 1e-6) return b * t;
    return b / nu * std::sin(nu * t);
}

}  // namespace

std::size_t block_size(Family f) {
    return f == Family::SFB_P2 ? 4 : 3;
}

std::string_view family_name(Family f) {
    switch (f) {
        case Family::SFB: return "sfb";
        case Family::SFB_P: return "sfb_p";
        case Family::SFB_P2: return "sfb_p2";
        case Family::PM: return "pm";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    std::string s(name);
    for (auto& ch : s) ch = ch == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (s == "sfb") return Family::SFB;
    if (s == "sfb_p") return Family::SFB_P;
    if (s == "sfb_p2") return Family::SFB_P2;
    if (s == "pm") return Family::PM;
    throw ConfigError("unknown field family '" + std::string(name) + "' (expected sfb, sfb_p, sfb_p2 or pm)");
}

ParamRole param_role(Family f, std::size_t i) {
    if (i == 0) return ParamRole::Amplitude;
    if (f == Family::PM) return ParamRole::Frequency;  // b, nu
    return i == 1 ? ParamRole::Frequency : ParamRole::Phase;
}

ControlField::ControlField(Family family, int terms, std::vector<double> params, double horizon, double carrier)
    : family_(family), terms_(terms), params_(std::move(params)), horizon_(horizon), carrier_(carrier) {
    if (terms_ < 1) throw ArgumentError("ControlField: N must be >= 1");
    if (params_.size() != static_cast<std::size_t>(terms_) * block_size(family_))
        throw ArgumentError("ControlField: expected " + std::to_string(terms_ * block_size(family_)) +
                            " parameters for " + std::string(family_name(family_)) + " with N=" +
                            std::to_string(terms_) + ", got " + std::to_string(params_.size()));
    if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) throw ArgumentError("ControlField: horizon must be > 0");
    for (double p : params_)
        if (!std::isfinite(p)) throw ArgumentError("ControlField: non-finite parameter");
}

cplx ControlField::envelope(double t) const {
    const double* p = params_.data();
    double re = 0.0, im = 0.0;
    switch (family_) {
        case Family::SFB:
            for (int j = 0; j < terms_; ++j, p += 3) re += p[0] * std::cos(p[1] * t + p[2]);
            break;
        case Family::SFB_P:
            for (int j = 0; j < terms_; ++j, p += 3) {
                const double th = p[1] * t + p[2];
                re += p[0] * std::cos(th);
                im += p[0] * std::sin(th);
            }
            break;
        case Family::SFB_P2:
            for (int j = 0; j < terms_; ++j, p += 4) {
                const double v = p[0] * std::cos(p[1] * t + p[2]);
                re += v * std::cos(p[3]);
                im += v * std::sin(p[3]);
            }
            break;
        case Family::PM:
            for (int j = 0; j < terms_; ++j, p += 3) {
                const double th = pm_phase(p[1], p[2], t, horizon_);
                re += p[0] * std::cos(th);
                im += p[0] * std::sin(th);
            }
            break;
    }
    return {re, im};
}

double ControlField::lab(double t) const {
    const double* p = params_.data();
    const double w0t = carrier_ * t;
    double g = 0.0;
    switch (family_) {
        case Family::SFB:
            for (int j = 0; j < terms_; ++j, p += 3) g += p[0] * std::cos(p[1] * t + p[2]) * std::cos(w0t);
            break;
        case Family::SFB_P:
            for (int j = 0; j < terms_; ++j, p += 3) g += p[0] * std::cos(w0t + p[1] * t + p[2]);
            break;
        case Family::SFB_P2:
            for (int j = 0; j < terms_; ++j, p += 4) g += p[0] * std::cos(p[1] * t + p[2]) * std::cos(w0t + p[3]);
            break;
        case Family::PM:
            for (int j = 0; j < terms_; ++j, p += 3) g += p[0] * std::cos(w0t + pm_phase(p[1], p[2], t, horizon_));
            break;
    }
    return g;
}

ControlField ControlField::with_params(std::vector<double> params) const {
    return ControlField(family_, terms_, std::move(params), horizon_, carrier_);
}

ControlField constant_field(double amplitude, double horizon, double phase) {
    return ControlField(Family::SFB_P, 1, {amplitude, 0.0, phase}, horizon);
}

void sample_envelope(const ControlField& field, double t0, double step, std::span<cplx> out) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = field.envelope(t0 + static_cast<double>(k) * step);
}

ConstraintSet ConstraintSet::for_horizon(double omega_max, double horizon) {
    if (!(horizon > 0.0)) throw ArgumentError("ConstraintSet: horizon must be > 0");
    return {omega_max, 0.0, units::kTwoPi * 5.0 / horizon};
}

void ConstraintSet::validate() const {
    if (!(omega_max > 0.0)) throw ArgumentError("ConstraintSet: omega_max must be > 0");
    if (!(freq_lo <= freq_hi)) throw ArgumentError("ConstraintSet: freq_lo must be <= freq_hi");
}

double envelope_peak(const ControlField& field, std::size_t n_grid) {
    if (n_grid < 1000) throw ArgumentError("envelope_peak: n_grid must be >= 1000");
    const double h = field.horizon() / static_cast<double>(n_grid - 1);
    double peak = 0.0;
    for (std::size_t k = 0; k < n_grid; ++k) peak = std::max(peak, std::abs(field.envelope(static_cast<double>(k) * h)));
    return peak;
}

double average_amplitude(const ControlField& field, std::size_t n_intervals) {
    if (n_intervals < 1) throw ArgumentError("average_amplitude: need at least one interval");
    const double h = field.horizon() / static_cast<double>(n_intervals);
    double sum = 0.5 * (std::abs(field.envelope(0.0)) + std::abs(field.envelope(field.horizon())));
    for (std::size_t k = 1; k < n_intervals; ++k) sum += std::abs(field.envelope(static_cast<double>(k) * h));
    return sum / static_cast<double>(n_intervals);
}

std::vector<Sideband> pm_sidebands(double a, double b, double nu, int l_max) {
    if (l_max < 0) throw ArgumentError("pm_sidebands: l_max must be >= 0");
    if (!(nu > 0.0) && b != 0.0) throw ArgumentError("pm_sidebands: nu must be > 0 unless b = 0");
    const double x = b == 0.0 ? 0.0 : b / nu;
    const double ax = std::abs(x);
    std::vector<Sideband> out;
    out.reserve(2 * static_cast<std::size_t>(l_max) + 1);
    for (int l = -l_max; l <= l_max; ++l) {
        const int n = std::abs(l);
        double j = std::cyl_bessel_j(static_cast<double>(n), ax);
        // J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x).
        if (n % 2 == 1 && (l < 0) != (x < 0.0)) j = -j;
        out.push_back({l, l * (nu > 0.0 ? nu : 0.0), a * j});
    }
    return out;
}

}  // namespace pmctl::basis
