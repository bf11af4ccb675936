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

#include "pmctl/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>

#include "pmctl/basis.hpp"
#include "pmctl/ddsim.hpp"
#include "pmctl/errors.hpp"
#include "pmctl/objective.hpp"
#include "pmctl/optimizer.hpp"
#include "pmctl/robustness.hpp"
#include "pmctl/serialize.hpp"
#include "pmctl/units.hpp"

namespace pmctl::commands {

namespace {

using serialize::field_from_json;
using serialize::field_to_json;

// Typed access to a config object that remembers which keys were consumed.
class Reader {
public:
    Reader(const json& config, std::string command) : j_(config), command_(std::move(command)) {
        if (!j_.is_object()) throw ConfigError(command_ + ": config must be a JSON object");
    }

    bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

    double number(const std::string& key, double fallback) {
        if (!mark(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number()) fail(key, "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) fail(key, "expected a finite number");
        return x;
    }

    double positive(const std::string& key, double fallback) {
        const double x = number(key, fallback);
        if (!(x > 0.0)) fail(key, "must be > 0");
        return x;
    }

    double non_negative(const std::string& key, double fallback) {
        const double x = number(key, fallback);
        if (!(x >= 0.0)) fail(key, "must be >= 0");
        return x;
    }

    long long integer(const std::string& key, long long fallback, long long min_value) {
        if (!mark(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number_integer()) fail(key, "expected an integer");
        const auto x = v.get<long long>();
        if (x < min_value) fail(key, "must be >= " + std::to_string(min_value));
        return x;
    }

    bool boolean(const std::string& key, bool fallback) {
        if (!mark(key)) return fallback;
        if (!j_.at(key).is_boolean()) fail(key, "expected true or false");
        return j_.at(key).get<bool>();
    }

    std::string string(const std::string& key, const std::string& fallback) {
        if (!mark(key)) return fallback;
        if (!j_.at(key).is_string()) fail(key, "expected a string");
        return j_.at(key).get<std::string>();
    }

    std::vector<double> numbers(const std::string& key) {
        mark(key);
        const json& v = j_.at(key);
        if (!v.is_array()) fail(key, "expected an array of numbers");
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) fail(key, "expected an array of numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }

    basis::ControlField field(const std::string& key) {
        if (!has(key)) fail(key, "required field document is missing");
        mark(key);
        try {
            return field_from_json(j_.at(key));
        } catch (const ConfigError& e) {
            fail(key, e.what());
        }
    }

    std::uint64_t seed() { return static_cast<std::uint64_t>(integer("seed", 1, 0)); }
    unsigned threads() { return static_cast<unsigned>(integer("threads", 0, 0)); }

    /// Throws on keys no one asked for, which are almost always typos.
    void finish() const {
        for (const auto& [key, value] : j_.items())
            if (!value.is_null() && !used_.count(key)) throw ConfigError(command_ + ": unknown config key '" + key + "'");
    }

    [[noreturn]] void fail(const std::string& key, const std::string& why) const {
        throw ConfigError(command_ + ": config key '" + key + "': " + why);
    }

private:
    bool mark(const std::string& key) {
        used_.insert(key);
        return has(key);
    }

    const json& j_;
    std::string command_;
    std::set<std::string> used_;
};

qcore::Unitary2 parse_gate(const std::string& name, Reader& r) {
    if (name == "identity") return qcore::gates::identity();
    if (name == "pauli_x") return qcore::gates::pauli_x();
    if (name == "pauli_y") return qcore::gates::pauli_y();
    if (name == "pauli_z") return qcore::gates::pauli_z();
    if (name == "hadamard") return qcore::gates::hadamard();
    r.fail("target", "unknown gate '" + name + "' (identity, pauli_x, pauli_y, pauli_z, hadamard)");
}

double read_gamma(Reader& r) {
    const double g = r.non_negative("gamma_MHz", 0.0);
    return r.boolean("gamma_angular", false) ? units::mhz_to_angular(g) : units::mhz_to_rate(g);
}

// Objective, ensemble and constraints shared by optimize / eval / map.
objective::ObjectiveSpec read_objective(Reader& r, double horizon) {
    const double w = units::mhz_to_angular(r.non_negative("W_MHz", 10.0));
    const auto m = static_cast<int>(r.integer("M", 15, 1));
    const auto k = static_cast<std::size_t>(r.integer("K", 100000, 1));
    const auto ensemble = dynamics::EnsembleModel::from_fwhm(w, m, k);

    const double omega_max = units::mhz_to_angular(r.positive("Omega_max_MHz", 10.0));
    auto constraints = basis::ConstraintSet::for_horizon(omega_max, horizon);
    if (r.has("freq_min_MHz")) constraints.freq_lo = units::mhz_to_angular(r.number("freq_min_MHz", 0.0));
    if (r.has("freq_max_MHz")) constraints.freq_hi = units::mhz_to_angular(r.number("freq_max_MHz", 0.0));
    if (constraints.freq_lo > constraints.freq_hi) r.fail("freq_min_MHz", "must not exceed freq_max_MHz");

    const std::string kind = r.string("objective", "state");
    objective::ObjectiveSpec spec;
    if (kind == "state") {
        spec = objective::ObjectiveSpec::state_transfer(ensemble, horizon, constraints);
    } else if (kind == "gate") {
        spec = objective::ObjectiveSpec::gate(parse_gate(r.string("target", "pauli_x"), r), ensemble, horizon,
                                              constraints);
    } else {
        r.fail("objective", "expected 'state' or 'gate'");
    }
    if (r.has("dt_ns")) {
        spec.dt = units::ns_to_s(r.positive("dt_ns", 0.0));
        if (spec.dt > horizon) r.fail("dt_ns", "exceeds the pulse duration");
    }
    spec.alpha = r.positive("alpha", 1.0);
    spec.gamma = read_gamma(r);
    if (spec.gamma > 0.0 && spec.kind == objective::Kind::Gate)
        r.fail("gamma_MHz", "dephasing is only supported for state transfer");
    spec.threads = r.threads();
    return spec;
}

// The horizon is set by the field; an explicit T_ns must agree with it.
void check_horizon(Reader& r, const basis::ControlField& field) {
    if (!r.has("T_ns")) return;
    const double t = units::ns_to_s(r.positive("T_ns", 1.0));
    if (std::abs(t - field.horizon()) > 1e-12 * field.horizon()) r.fail("T_ns", "disagrees with the field duration");
}

json field_metrics(const basis::ControlField& field, const objective::ObjectiveSpec& spec) {
    return {{"peak_MHz", units::angular_to_mhz(basis::envelope_peak(field))},
            {"omega_ave_MHz", units::angular_to_mhz(basis::average_amplitude(field))},
            {"penalty", objective::amplitude_penalty(field, spec.constraints)}};
}

}  // namespace

const std::vector<std::string>& names() {
    static const std::vector<std::string> n = {"optimize", "eval", "map", "sweep", "dd", "spectrum"};
    return n;
}

CommandResult run(std::string_view command, const json& config) {
    if (command == "optimize") return optimize(config);
    if (command == "eval") return eval(config);
    if (command == "map") return map(config);
    if (command == "sweep") return sweep(config);
    if (command == "dd") return dd(config);
    if (command == "spectrum") return spectrum(config);
    throw ConfigError("unknown command '" + std::string(command) + "'");
}

CommandResult optimize(const json& config) {
    Reader r(config, "optimize");
    optimizer::OptimizationSpec os;
    try {
        os.family = basis::parse_family(r.string("family", "pm"));
    } catch (const ConfigError& e) {
        r.fail("family", e.what());
    }
    os.terms = static_cast<int>(r.integer("N", 1, 1));
    const double horizon = units::ns_to_s(r.positive("T_ns", 100.0));
    os.objective = read_objective(r, horizon);
    os.n_starts = static_cast<std::size_t>(r.integer("starts", 120, 1));
    os.budget = static_cast<std::size_t>(r.integer("budget", 0, 0));
    os.seed = r.seed();
    os.randomize_freqs = r.boolean("randomize_freqs", false);
    os.carrier = units::mhz_to_angular(r.number("omega0_MHz", 0.0));
    os.threads = os.objective.threads;
    r.finish();

    const auto runs = optimizer::multi_start(os);
    const auto& best = runs.best_field;
    const double fobj = objective::ensemble_objective(best, os.objective);
    std::size_t near_best = 0;
    for (const auto& run : runs.runs)
        if (run.best_value - runs.best_value() <= 1e-3) ++near_best;

    CommandResult out;
    out.summary = {{"command", "optimize"},
                   {"family", std::string(basis::family_name(os.family))},
                   {"N", os.terms},
                   {"N_p", best.num_params()},
                   {"starts", os.n_starts},
                   {"budget", runs.budget},
                   {"free_params", runs.free_params},
                   {"best_objective", runs.best_value()},
                   {"best_F_obj", fobj},
                   {"mean_n_f", runs.mean_evaluations()},
                   {"fraction_within_1e-3", static_cast<double>(near_best) / static_cast<double>(runs.runs.size())}};
    out.summary.update(field_metrics(best, os.objective));
    out.artifacts.push_back({"best_field.json", serialize::dump(field_to_json(best))});
    out.artifacts.push_back({"runs.csv", serialize::runs_csv(runs)});
    out.artifacts.push_back({"trace.csv", serialize::trace_csv(runs)});
    out.artifacts.push_back({"runset.json", serialize::dump(serialize::runset_to_json(runs, config))});
    out.artifacts.push_back({"summary.json", serialize::dump(out.summary)});
    return out;
}

CommandResult eval(const json& config) {
    Reader r(config, "eval");
    const auto field = r.field("field");
    check_horizon(r, field);
    auto spec = read_objective(r, field.horizon());
    const bool mc = r.boolean("monte_carlo", true);
    const auto seed = r.seed();
    r.finish();

    CommandResult out;
    out.summary = {{"command", "eval"},
                   {"objective", spec.kind == objective::Kind::Gate ? "gate" : "state"},
                   {"F_obj", objective::ensemble_objective(field, spec)},
                   {"penalized_objective", objective::penalized_objective(field, spec)}};
    if (mc) {
        const auto est = objective::monte_carlo_fidelity(field, spec, seed);
        out.summary["F_mc"] = est.mean;
        out.summary["F_mc_stderr"] = est.std_error;
        out.summary["K"] = est.draws;
    }
    out.summary.update(field_metrics(field, spec));
    out.artifacts.push_back({"summary.json", serialize::dump(out.summary)});
    return out;
}

CommandResult map(const json& config) {
    Reader r(config, "map");
    const auto field = r.field("field");
    std::optional<basis::ControlField> field2;
    if (r.has("field2")) field2 = r.field("field2");
    check_horizon(r, field);
    auto spec = read_objective(r, field.horizon());
    const double threshold = r.number("threshold", 0.9);
    if (!(threshold > 0.0 && threshold < 1.0)) r.fail("threshold", "must lie in (0, 1)");
    const auto n_delta = static_cast<std::size_t>(r.integer("n_delta", 101, 1));
    const auto n_alpha = static_cast<std::size_t>(r.integer("n_alpha", 101, 1));
    const double w_mhz = units::angular_to_mhz(spec.ensemble.fwhm());
    const double dmax = units::mhz_to_angular(r.positive("delta_max_MHz", w_mhz > 0.0 ? 1.5 * w_mhz : 15.0));
    const double amin = r.positive("alpha_min", 0.5);
    const double amax = r.positive("alpha_max", 1.5);
    if (amin > amax) r.fail("alpha_min", "must not exceed alpha_max");
    r.finish();

    const auto delta_axis = robustness::linspace(-dmax, dmax, n_delta);
    const auto alpha_axis = robustness::linspace(amin, amax, n_alpha);
    const double to_mhz = units::angular_to_mhz(1.0);

    CommandResult out;
    const auto m1 = robustness::fidelity_map(field, delta_axis, alpha_axis, spec);
    const double a1 = robustness::area_above(m1, threshold) * to_mhz;
    out.summary = {{"command", "map"},
                   {"threshold", threshold},
                   {"total_area_MHz", robustness::total_area(m1) * to_mhz},
                   {"area_MHz", a1}};
    out.artifacts.push_back({"map.csv", serialize::map_csv(m1)});
    if (field2) {
        if (std::abs(field2->horizon() - field.horizon()) > 1e-12 * field.horizon())
            throw ConfigError("map: 'field' and 'field2' have different durations");
        const auto m2 = robustness::fidelity_map(*field2, delta_axis, alpha_axis, spec);
        const double a2 = robustness::area_above(m2, threshold) * to_mhz;
        out.summary["area2_MHz"] = a2;
        // area(field) : area(field2); null when the second map has no cell above threshold.
        out.summary["area_ratio"] = a2 > 0.0 ? json(a1 / a2) : json(nullptr);
        out.artifacts.push_back({"map2.csv", serialize::map_csv(m2)});
    }
    out.artifacts.push_back({"summary.json", serialize::dump(out.summary)});
    return out;
}

CommandResult sweep(const json& config) {
    Reader r(config, "sweep");
    const auto field = r.field("field");
    check_horizon(r, field);
    std::vector<double> gammas_mhz;
    if (r.has("gammas_MHz")) {
        if (r.has("gamma_max_MHz") || r.has("n_gamma")) r.fail("gammas_MHz", "conflicts with gamma_max_MHz/n_gamma");
        gammas_mhz = r.numbers("gammas_MHz");
    } else {
        const double gmax = r.non_negative("gamma_max_MHz", 2.0);
        gammas_mhz = robustness::linspace(0.0, gmax, static_cast<std::size_t>(r.integer("n_gamma", 11, 1)));
    }
    const bool angular = r.boolean("gamma_angular", false);
    // The rates come from the sweep axis, not from gamma_MHz.
    if (r.has("gamma_MHz")) r.fail("gamma_MHz", "use gammas_MHz or gamma_max_MHz with sweep");
    auto spec = read_objective(r, field.horizon());
    if (spec.kind != objective::Kind::StateTransfer) r.fail("objective", "sweep supports state transfer only");
    const auto seed = r.seed();
    if (!r.has("K")) spec.ensemble.mc_draws = 10000;
    r.finish();

    std::vector<double> gammas;
    for (double g : gammas_mhz) {
        if (!(g >= 0.0)) r.fail("gammas_MHz", "rates must be >= 0");
        gammas.push_back(angular ? units::mhz_to_angular(g) : units::mhz_to_rate(g));
    }
    const auto points = robustness::dephasing_sweep(field, gammas, spec, seed);

    CommandResult out;
    json rows = json::array();
    for (std::size_t i = 0; i < points.size(); ++i)
        rows.push_back({{"gamma_MHz", gammas_mhz[i]}, {"fidelity", points[i].fidelity}, {"stderr", points[i].std_error}});
    out.summary = {{"command", "sweep"}, {"K", spec.ensemble.mc_draws}, {"gamma_angular", angular}, {"points", rows}};
    // CSV rates are reported as entered (MHz, angular or not per gamma_angular).
    std::vector<robustness::SweepPoint> shown = points;
    for (std::size_t i = 0; i < shown.size(); ++i) shown[i].gamma = units::mhz_to_rate(gammas_mhz[i]);
    out.artifacts.push_back({"sweep.csv", serialize::sweep_csv(shown)});
    out.artifacts.push_back({"summary.json", serialize::dump(out.summary)});
    return out;
}

CommandResult dd(const json& config) {
    Reader r(config, "dd");
    const std::string pulse = r.string("pulse", "rect");
    std::optional<ddsim::PulseImpl> impl;
    double t_pulse = 0.0;
    if (pulse == "rect") {
        t_pulse = units::ns_to_s(r.positive("Tpulse_ns", 50.0));
        // Default amplitude gives a pi rotation over the pulse.
        const double omega = r.has("Omega_MHz") ? units::mhz_to_angular(r.positive("Omega_MHz", 1.0))
                                                : std::numbers::pi / t_pulse;
        impl = ddsim::PulseImpl::rectangular(omega);
    } else if (pulse == "optimized" || pulse == "phase_shifted") {
        const auto x = r.field("field");
        t_pulse = x.horizon();
        if (r.has("Tpulse_ns") && std::abs(units::ns_to_s(r.positive("Tpulse_ns", 1.0)) - t_pulse) > 1e-12 * t_pulse)
            r.fail("Tpulse_ns", "disagrees with the field duration");
        if (pulse == "optimized") {
            const auto y = r.field("field2");
            if (std::abs(y.horizon() - t_pulse) > 1e-12 * t_pulse)
                r.fail("field2", "X and Y pulses must have the same duration");
            impl = ddsim::PulseImpl::optimized(x, y);
        } else {
            impl = ddsim::PulseImpl::phase_shifted(x);
        }
    } else {
        r.fail("pulse", "expected 'rect', 'optimized' or 'phase_shifted'");
    }

    dynamics::NoiseModel noise;
    noise.ou_tau = units::us_to_s(r.non_negative("ou_tau_us", 20.0));
    const double ou_std = units::mhz_to_angular(r.non_negative("ou_std_kHz", 50.0) * 1e-3);
    noise.ou_c = noise.ou_tau > 0.0 ? dynamics::NoiseModel::diffusion_for_std(ou_std, noise.ou_tau) : 0.0;
    noise.static_fwhm = units::mhz_to_angular(r.non_negative("static_fwhm_MHz", 26.5));

    const auto n_trials = static_cast<std::size_t>(r.integer("n_trials", 200, 1));
    const auto n_points = static_cast<std::size_t>(r.integer("n_tau", 20, 1));
    const double t_min = units::us_to_s(r.positive("T_min_us", 4.0));
    const double t_max = units::us_to_s(r.positive("T_max_us", 45.6));
    if (t_min > t_max) r.fail("T_min_us", "must not exceed T_max_us");
    const double dt = units::ns_to_s(r.positive("dt_ns", 0.5));
    const auto seed = r.seed();
    const unsigned threads = r.threads();
    r.finish();

    std::vector<double> taus;
    for (double total : robustness::linspace(t_min, t_max, n_points)) {
        const double tau = total / 8.0 - t_pulse;
        if (!(tau / 2.0 >= dt))
            throw ConfigError("dd: T_min_us is too short for the pulse length (needs tau/2 >= dt_ns)");
        taus.push_back(tau);
    }
    const auto curve = ddsim::decay_curve(t_pulse, taus, *impl, noise, n_trials, dt, seed, threads);
    std::vector<std::pair<double, double>> pts;
    for (const auto& c : curve) pts.emplace_back(c.total_time, c.estimate.p0);
    const auto t2 = ddsim::extract_t2(pts);

    CommandResult out;
    out.summary = {{"command", "dd"},
                   {"T2_us", t2 ? json(units::s_to_us(*t2)) : json(nullptr)},
                   {"threshold", ddsim::t2_threshold()},
                   {"pulse_impl", impl->name()},
                   {"Tpulse_ns", units::s_to_ns(t_pulse)},
                   {"n_trials", n_trials}};
    if (!t2) out.numeric_failure = "dd: P0 never crosses the T2 threshold in the sampled range";
    out.artifacts.push_back({"dd.csv", serialize::dd_csv(curve)});
    out.artifacts.push_back({"summary.json", serialize::dump(out.summary)});
    return out;
}

CommandResult spectrum(const json& config) {
    Reader r(config, "spectrum");
    const auto field = r.field("field");
    check_horizon(r, field);
    const double threshold = units::mhz_to_angular(r.positive("threshold_MHz", 5.0));
    const double f_max = r.positive("f_max_MHz", 200.0) * 1e6;
    const auto n = static_cast<std::size_t>(r.integer("n_samples", 4096, 1));
    basis::SpectrumOptions opt;
    const std::string window = r.string("window", "hann");
    if (window == "hann") opt.window = basis::Window::Hann;
    else if (window == "rect") opt.window = basis::Window::Rectangular;
    else r.fail("window", "expected 'hann' or 'rect'");
    opt.zero_pad = static_cast<std::size_t>(r.integer("zero_pad", 4, 1));
    r.finish();

    basis::Spectrum s;
    try {
        s = basis::spectrum(field, f_max, n, opt);
    } catch (const ArgumentError& e) {
        throw ConfigError(std::string("spectrum: ") + e.what());
    }
    json peaks = json::array();
    for (const auto& p : basis::find_peaks(s.envelope_freq_hz, s.envelope_mag, threshold))
        peaks.push_back({{"freq_MHz", p.freq_hz * 1e-6}, {"mag_MHz", units::angular_to_mhz(p.magnitude)}});

    CommandResult out;
    out.summary = {{"command", "spectrum"},
                   {"threshold_MHz", units::angular_to_mhz(threshold)},
                   {"components", basis::count_components(s, threshold)},
                   {"peaks", peaks}};
    out.artifacts.push_back({"spectrum.csv", serialize::quadrature_csv(s)});
    out.artifacts.push_back({"envelope_spectrum.csv", serialize::envelope_csv(s)});
    out.artifacts.push_back({"summary.json", serialize::dump(out.summary)});
    return out;
}

}  // namespace pmctl::commands
