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

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "pmctl/basis.hpp"
#include "pmctl/errors.hpp"

namespace pmctl::basis {

namespace {

// FFTW's planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<cplx> forward_fft(std::vector<cplx> in) {
    std::vector<cplx> out(in.size());
    auto* pin = reinterpret_cast<fftw_complex*>(in.data());
    auto* pout = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(in.size()), pin, pout, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

Spectrum spectrum(const ControlField& field, double f_max_hz, std::size_t n_samples, SpectrumOptions options) {
    if (n_samples < 4096 || !is_power_of_two(n_samples))
        throw ArgumentError("spectrum: n_samples must be a power of two >= 4096");
    if (!(f_max_hz > 0.0)) throw ArgumentError("spectrum: f_max must be > 0");
    if (options.zero_pad < 1) throw ArgumentError("spectrum: zero_pad must be >= 1");

    const std::size_t n = n_samples;
    const std::size_t total = n * options.zero_pad;
    const double dt = field.horizon() / static_cast<double>(n);

    std::vector<cplx> buf(total, cplx{});
    double wsum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = options.window == Window::Hann
                             ? 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n)))
                             : 1.0;
        wsum += w;
        buf[k] = w * field.envelope(static_cast<double>(k) * dt);
    }
    const std::vector<cplx> z = forward_fft(std::move(buf));

    Spectrum s;
    s.bin_hz = 1.0 / (static_cast<double>(total) * dt);
    const std::size_t half = total / 2;
    std::size_t jmax = static_cast<std::size_t>(std::floor(f_max_hz / s.bin_hz + 1e-9));
    if (jmax > half) jmax = half;

    s.freq_hz.reserve(jmax + 1);
    s.x_mag.reserve(jmax + 1);
    s.y_mag.reserve(jmax + 1);
    for (std::size_t j = 0; j <= jmax; ++j) {
        const cplx zp = z[j];
        const cplx zm = std::conj(z[(total - j) % total]);
        s.freq_hz.push_back(static_cast<double>(j) * s.bin_hz);
        s.x_mag.push_back(std::abs((zp + zm) / 2.0) / wsum);
        s.y_mag.push_back(std::abs((zp - zm) / cplx(0.0, 2.0)) / wsum);
    }

    const std::size_t jneg = std::min(jmax, total - half - 1);
    s.envelope_freq_hz.reserve(jneg + jmax + 1);
    s.envelope_mag.reserve(jneg + jmax + 1);
    for (std::size_t j = jneg; j >= 1; --j) {
        s.envelope_freq_hz.push_back(-static_cast<double>(j) * s.bin_hz);
        s.envelope_mag.push_back(std::abs(z[total - j]) / wsum);
    }
    for (std::size_t j = 0; j <= jmax; ++j) {
        s.envelope_freq_hz.push_back(static_cast<double>(j) * s.bin_hz);
        s.envelope_mag.push_back(std::abs(z[j]) / wsum);
    }
    return s;
}

std::vector<Peak> find_peaks(std::span<const double> freq_hz, std::span<const double> mag, double floor) {
    if (freq_hz.size() != mag.size()) throw ArgumentError("find_peaks: size mismatch");
    std::vector<Peak> peaks;
    for (std::size_t k = 1; k + 1 < mag.size(); ++k) {
        const double a = mag[k - 1], b = mag[k], c = mag[k + 1];
        if (!(b > a && b >= c)) continue;
        const double denom = a - 2.0 * b + c;
        const double p = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
        const double value = b - 0.25 * (a - c) * p;
        if (value < floor) continue;
        const double step = freq_hz[k + 1] - freq_hz[k];
        peaks.push_back({freq_hz[k] + p * step, value});
    }
    return peaks;
}

int count_components(const Spectrum& s, double threshold) {
    if (!(threshold > 0.0)) throw ArgumentError("count_components: threshold must be > 0");
    return static_cast<int>(find_peaks(s.envelope_freq_hz, s.envelope_mag, threshold).size());
}

}  // namespace pmctl::basis
