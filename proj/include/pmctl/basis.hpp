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

// Control-field families.
//
// Every family is evaluated as a complex interaction-picture envelope c(t)
// such that the control Hamiltonian is (Re c / 2) sx + (Im c / 2) sy:
//
//   SFB     (a, w, phi)        c = sum a cos(w t + phi)
//   SFB_P   (a, w, phi)        c = sum a exp(i (w t + phi))
//   SFB_P2  (a, w, phi, phi2)  c = sum a cos(w t + phi) exp(i phi2)
//   PM      (a, b, nu)         c = sum a exp(i (b / nu) sin(nu t))
//
// The lab-frame field g(t) multiplies the same terms onto the carrier
// cos(omega0 t + ...), see lab_field().

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace pmctl::basis {

using cplx = std::complex<double>;

enum class Family { SFB, SFB_P, SFB_P2, PM };

/// Parameters per basis term: 3, 3, 4, 3.
std::size_t block_size(Family f);
/// "sfb", "sfb_p", "sfb_p2", "pm"
std::string_view family_name(Family f);
/// Accepts the names above (case-insensitive, '-' or '_'). Throws ConfigError.
Family parse_family(std::string_view name);

/// Role of a parameter inside its block, used to build search boxes.
enum class ParamRole { Amplitude, Frequency, Phase };
ParamRole param_role(Family f, std::size_t index_in_block);

class ControlField {
public:
    /// Throws ArgumentError when `params.size() != terms * block_size(family)`,
    /// `terms < 1` or `horizon <= 0`.
    ControlField(Family family, int terms, std::vector<double> params, double horizon, double carrier = 0.0);

    Family family() const { return family_; }
    int terms() const { return terms_; }
    /// N_p, the number of real parameters.
    std::size_t num_params() const { return params_.size(); }
    std::span<const double> params() const { return params_; }
    /// Horizon T in seconds.
    double horizon() const { return horizon_; }
    /// Carrier omega0 in rad/s (lab-frame synthesis only).
    double carrier() const { return carrier_; }

    /// c(t), angular frequency.
    cplx envelope(double t) const;
    /// g(t), angular frequency.
    double lab(double t) const;

    ControlField with_params(std::vector<double> params) const;

    friend bool operator==(const ControlField&, const ControlField&) = default;

private:
    Family family_;
    int terms_;
    std::vector<double> params_;
    double horizon_;
    double carrier_;
};

/// Constant envelope amplitude * exp(i phase) over [0, horizon].
ControlField constant_field(double amplitude, double horizon, double phase = 0.0);

/// Fills out[k] = c(t0 + k * step).
void sample_envelope(const ControlField& field, double t0, double step, std::span<cplx> out);

struct ConstraintSet {
    double omega_max = 0.0;  ///< peak envelope bound, rad/s
    double freq_lo = 0.0;    ///< bounds on w_j, b_j, nu_j, rad/s
    double freq_hi = 0.0;

    /// Default frequency window 2 pi [0, 5/T].
    static ConstraintSet for_horizon(double omega_max, double horizon);
    /// Throws ArgumentError unless freq_lo <= freq_hi and omega_max > 0.
    void validate() const;
};

/// Envelope grid used for the amplitude constraint.
inline constexpr std::size_t kDefaultConstraintGrid = 4096;

/// max |c(t)| on `n_grid` uniform points spanning [0, T]. Requires n_grid >= 1000.
double envelope_peak(const ControlField& field, std::size_t n_grid = kDefaultConstraintGrid);

/// (1/T) int_0^T |c(t)| dt. This is the envelope magnitude; the lab-frame
/// |g| average differs by the carrier factor 2/pi for every family alike.
double average_amplitude(const ControlField& field, std::size_t n_intervals = 8192);

struct Sideband {
    int order;         ///< l
    double offset;     ///< l * nu, rad/s
    double amplitude;  ///< a * J_l(b / nu)
};

/// Jacobi-Anger sidebands of one PM term for l in [-l_max, l_max].
std::vector<Sideband> pm_sidebands(double a, double b, double nu, int l_max);

// --- spectra ---------------------------------------------------------------

enum class Window { Hann, Rectangular };

struct SpectrumOptions {
    Window window = Window::Hann;
    std::size_t zero_pad = 4;
};

/// Discrete spectra of a sampled envelope. Magnitudes are two-sided
/// amplitudes in rad/s: a tone A cos(2 pi f t) shows A/2 at +-f and a
/// constant A shows A at 0. With the rectangular window and no padding the
/// squared magnitudes over all bins sum to the mean square of the samples.
struct Spectrum {
    double bin_hz = 0.0;                 ///< frequency spacing of the reported bins
    std::vector<double> freq_hz;         ///< 0 .. f_max
    std::vector<double> x_mag;           ///< |DFT(Re c)|
    std::vector<double> y_mag;           ///< |DFT(Im c)|
    std::vector<double> envelope_freq_hz;  ///< -f_max .. f_max
    std::vector<double> envelope_mag;      ///< |DFT(c)|, the lab-frame sidebands around the carrier
};

/// `n_samples` must be a power of two >= 4096. Samples c(k T / n), k < n.
Spectrum spectrum(const ControlField& field, double f_max_hz, std::size_t n_samples = 4096,
                  SpectrumOptions options = {});

struct Peak {
    double freq_hz;
    double magnitude;
};

/// Local maxima with magnitude >= floor, refined by parabolic interpolation.
std::vector<Peak> find_peaks(std::span<const double> freq_hz, std::span<const double> mag, double floor);

/// Number of frequency components of the driving field whose amplitude is at
/// least `threshold` (rad/s): local maxima of the envelope spectrum, which is
/// the lab-frame spectrum shifted by the carrier.
int count_components(const Spectrum& s, double threshold);

}  // namespace pmctl::basis
