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

#include "pmctl/serialize.hpp"

#include <charconv>
#include <cmath>

#include "pmctl/errors.hpp"
#include "pmctl/units.hpp"

namespace pmctl::serialize {

std::string number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

namespace {

bool scaled(basis::Family f, std::size_t i) {
    return basis::param_role(f, i % basis::block_size(f)) != basis::ParamRole::Phase;
}

bool agrees(double shown, double exact) {
    return std::abs(shown - exact) <= 1e-12 * std::max(1.0, std::abs(exact));
}

template <class T>
T require(const json& doc, const char* key) {
    if (!doc.contains(key)) throw ConfigError(std::string("field document: missing key '") + key + "'");
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("field document: key '") + key + "': " + e.what());
    }
}

std::string row(std::initializer_list<std::string> cells) {
    std::string s;
    bool first = true;
    for (const auto& c : cells) {
        if (!first) s += ',';
        s += c;
        first = false;
    }
    s += '\n';
    return s;
}

}  // namespace

json field_to_json(const basis::ControlField& field) {
    json params = json::array();
    json exact = json::array();
    const auto p = field.params();
    for (std::size_t i = 0; i < p.size(); ++i) {
        params.push_back(scaled(field.family(), i) ? units::angular_to_mhz(p[i]) : p[i]);
        exact.push_back(p[i]);
    }
    json doc;
    doc["family"] = std::string(basis::family_name(field.family()));
    doc["N"] = field.terms();
    doc["T_ns"] = units::s_to_ns(field.horizon());
    doc["omega0_MHz"] = units::angular_to_mhz(field.carrier());
    doc["params"] = std::move(params);
    doc["exact"] = {{"T_s", field.horizon()}, {"omega0_rad_s", field.carrier()}, {"params", std::move(exact)}};
    return doc;
}

basis::ControlField field_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("field document: expected a JSON object");
    const auto family = basis::parse_family(require<std::string>(doc, "family"));
    const int terms = require<int>(doc, "N");
    const double t_ns = require<double>(doc, "T_ns");
    const double carrier_mhz = doc.contains("omega0_MHz") ? require<double>(doc, "omega0_MHz") : 0.0;
    const auto shown = require<std::vector<double>>(doc, "params");

    double horizon = units::ns_to_s(t_ns);
    double carrier = units::mhz_to_angular(carrier_mhz);
    std::vector<double> params(shown.size());
    for (std::size_t i = 0; i < shown.size(); ++i)
        params[i] = scaled(family, i) ? units::mhz_to_angular(shown[i]) : shown[i];

    if (doc.contains("exact")) {
        const json& ex = doc.at("exact");
        const auto ex_params = require<std::vector<double>>(ex, "params");
        const double ex_t = require<double>(ex, "T_s");
        const double ex_w0 = ex.contains("omega0_rad_s") ? require<double>(ex, "omega0_rad_s") : 0.0;
        if (ex_params.size() != params.size())
            throw ConfigError("field document: 'exact.params' and 'params' differ in length");
        if (!agrees(horizon, ex_t)) throw ConfigError("field document: 'T_ns' disagrees with 'exact.T_s'");
        if (!agrees(carrier, ex_w0)) throw ConfigError("field document: 'omega0_MHz' disagrees with 'exact'");
        for (std::size_t i = 0; i < params.size(); ++i)
            if (!agrees(params[i], ex_params[i]))
                throw ConfigError("field document: params[" + std::to_string(i) + "] disagrees with 'exact.params'");
        horizon = ex_t;
        carrier = ex_w0;
        params = ex_params;
    }
    try {
        return basis::ControlField(family, terms, std::move(params), horizon, carrier);
    } catch (const ArgumentError& e) {
        throw ConfigError(std::string("field document: ") + e.what());
    }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json runset_to_json(const optimizer::RunSet& runs, const json& spec_echo) {
    json records = json::array();
    for (std::size_t r = 0; r < runs.runs.size(); ++r) {
        const auto& run = runs.runs[r];
        records.push_back({{"rank", r + 1},
                           {"start_index", run.start_index},
                           {"best_value", run.best_value},
                           {"evaluations", run.evaluations},
                           {"start", run.start},
                           {"best_params", run.best_params}});
    }
    return {{"spec", spec_echo},
            {"budget", runs.budget},
            {"free_params", runs.free_params},
            {"best_value", runs.best_value()},
            {"mean_evaluations", runs.mean_evaluations()},
            {"best_field", field_to_json(runs.best_field)},
            {"runs", std::move(records)}};
}

std::string runs_csv(const optimizer::RunSet& runs) {
    std::string s = "rank,start_index,best_value,n_f\n";
    for (std::size_t r = 0; r < runs.runs.size(); ++r) {
        const auto& run = runs.runs[r];
        s += row({std::to_string(r + 1), std::to_string(run.start_index), number(run.best_value),
                  std::to_string(run.evaluations)});
    }
    return s;
}

std::string trace_csv(const optimizer::RunSet& runs) {
    std::string s = "rank,start_index,evaluations,best_value\n";
    for (std::size_t r = 0; r < runs.runs.size(); ++r)
        for (const auto& t : runs.runs[r].trace)
            s += row({std::to_string(r + 1), std::to_string(runs.runs[r].start_index), std::to_string(t.evaluations),
                      number(t.best)});
    return s;
}

std::string map_csv(const robustness::FidelityMap& map) {
    std::string s = "delta_MHz,alpha,fidelity\n";
    for (std::size_t a = 0; a < map.alpha.size(); ++a)
        for (std::size_t d = 0; d < map.delta.size(); ++d)
            s += row({number(units::angular_to_mhz(map.delta[d])), number(map.alpha[a]), number(map.values[a][d])});
    return s;
}

std::string sweep_csv(const std::vector<robustness::SweepPoint>& points) {
    std::string s = "gamma_MHz,fidelity,stderr\n";
    for (const auto& p : points)
        s += row({number(units::rate_to_mhz(p.gamma)), number(p.fidelity), number(p.std_error)});
    return s;
}

std::string dd_csv(const std::vector<ddsim::CurvePoint>& curve) {
    std::string s = "T_us,tau_us,P0,stderr,n_trials\n";
    for (const auto& c : curve)
        s += row({number(units::s_to_us(c.total_time)), number(units::s_to_us(c.tau)), number(c.estimate.p0),
                  number(c.estimate.std_error), std::to_string(c.estimate.trials)});
    return s;
}

std::string quadrature_csv(const basis::Spectrum& sp) {
    std::string s = "freq_MHz,x_mag_MHz,y_mag_MHz\n";
    for (std::size_t k = 0; k < sp.freq_hz.size(); ++k)
        s += row({number(sp.freq_hz[k] * 1e-6), number(units::angular_to_mhz(sp.x_mag[k])),
                  number(units::angular_to_mhz(sp.y_mag[k]))});
    return s;
}

std::string envelope_csv(const basis::Spectrum& sp) {
    std::string s = "freq_MHz,mag_MHz\n";
    for (std::size_t k = 0; k < sp.envelope_freq_hz.size(); ++k)
        s += row({number(sp.envelope_freq_hz[k] * 1e-6), number(units::angular_to_mhz(sp.envelope_mag[k]))});
    return s;
}

}  // namespace pmctl::serialize
