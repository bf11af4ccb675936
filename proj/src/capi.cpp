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

#include "pmctl/pmctl.h"

#include <cstring>
#include <new>
#include <string>

#include "pmctl/commands.hpp"
#include "pmctl/dynamics.hpp"
#include "pmctl/errors.hpp"
#include "pmctl/serialize.hpp"

struct pmctl_field {
    pmctl::basis::ControlField field;
};

struct pmctl_result {
    std::string summary;
    pmctl::commands::CommandResult data;
};

namespace {

thread_local std::string last_error;

pmctl_status fail(pmctl_status code, const std::string& message) {
    last_error = message;
    return code;
}

// Maps every exception to a status code; nothing escapes the C boundary.
template <class Fn>
pmctl_status guarded(Fn&& fn) {
    last_error.clear();
    try {
        return fn();
    } catch (const pmctl::ConfigError& e) {
        return fail(PMCTL_ERR_CONFIG, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(PMCTL_ERR_CONFIG, e.what());
    } catch (const pmctl::NumericFailure& e) {
        return fail(PMCTL_ERR_NUMERIC, e.what());
    } catch (const pmctl::ArgumentError& e) {
        return fail(PMCTL_ERR_ARGUMENT, e.what());
    } catch (const pmctl::ContractViolation& e) {
        return fail(PMCTL_ERR_CONTRACT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(PMCTL_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(PMCTL_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(PMCTL_ERR_INTERNAL, "unknown error");
    }
}

pmctl_status null_arg(const char* what) { return fail(PMCTL_ERR_ARGUMENT, std::string(what) + " is NULL"); }

}  // namespace

extern "C" {

const char* pmctl_version(void) { return PMCTL_VERSION_STRING; }

const char* pmctl_last_error(void) { return last_error.c_str(); }

pmctl_status pmctl_field_from_json(const char* json, pmctl_field** out) {
    if (!json) return null_arg("json");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        auto doc = nlohmann::json::parse(json);
        *out = new pmctl_field{pmctl::serialize::field_from_json(doc)};
        return PMCTL_OK;
    });
}

pmctl_status pmctl_field_to_json(const pmctl_field* field, char** out) {
    if (!field) return null_arg("field");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        const std::string s = pmctl::serialize::dump(pmctl::serialize::field_to_json(field->field));
        char* buf = new char[s.size() + 1];
        std::memcpy(buf, s.c_str(), s.size() + 1);
        *out = buf;
        return PMCTL_OK;
    });
}

void pmctl_string_free(char* s) { delete[] s; }

void pmctl_field_free(pmctl_field* field) { delete field; }

pmctl_status pmctl_field_horizon(const pmctl_field* field, double* seconds) {
    if (!field) return null_arg("field");
    if (!seconds) return null_arg("seconds");
    *seconds = field->field.horizon();
    return PMCTL_OK;
}

pmctl_status pmctl_field_envelope(const pmctl_field* field, double t_seconds, double* re, double* im) {
    if (!field) return null_arg("field");
    if (!re || !im) return null_arg("re/im");
    return guarded([&] {
        const auto c = field->field.envelope(t_seconds);
        *re = c.real();
        *im = c.imag();
        return PMCTL_OK;
    });
}

pmctl_status pmctl_field_transfer_probability(const pmctl_field* field, double delta, double alpha,
                                              double dt_seconds, double* probability) {
    if (!field) return null_arg("field");
    if (!probability) return null_arg("probability");
    return guarded([&] {
        const auto& f = field->field;
        const auto psi = pmctl::dynamics::propagate_state(f, delta, alpha, f.horizon(), dt_seconds,
                                                          pmctl::qcore::PureState::down());
        *probability = std::norm(psi.up_amplitude());
        return PMCTL_OK;
    });
}

pmctl_status pmctl_run(const char* command, const char* config_json, pmctl_result** out) {
    if (!command) return null_arg("command");
    if (!config_json) return null_arg("config_json");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        const auto config = nlohmann::json::parse(config_json);
        auto result = pmctl::commands::run(command, config);
        auto* r = new pmctl_result{pmctl::serialize::dump(result.summary), std::move(result)};
        *out = r;
        if (!r->data.numeric_failure.empty()) return fail(PMCTL_ERR_NUMERIC, r->data.numeric_failure);
        return PMCTL_OK;
    });
}

pmctl_status pmctl_optimize(const char* config_json, pmctl_result** out) { return pmctl_run("optimize", config_json, out); }
pmctl_status pmctl_eval(const char* config_json, pmctl_result** out) { return pmctl_run("eval", config_json, out); }
pmctl_status pmctl_map(const char* config_json, pmctl_result** out) { return pmctl_run("map", config_json, out); }
pmctl_status pmctl_sweep(const char* config_json, pmctl_result** out) { return pmctl_run("sweep", config_json, out); }
pmctl_status pmctl_dd(const char* config_json, pmctl_result** out) { return pmctl_run("dd", config_json, out); }
pmctl_status pmctl_spectrum(const char* config_json, pmctl_result** out) { return pmctl_run("spectrum", config_json, out); }

const char* pmctl_result_summary(const pmctl_result* result) { return result ? result->summary.c_str() : nullptr; }

size_t pmctl_result_artifact_count(const pmctl_result* result) { return result ? result->data.artifacts.size() : 0; }

const char* pmctl_result_artifact_name(const pmctl_result* result, size_t index) {
    if (!result || index >= result->data.artifacts.size()) return nullptr;
    return result->data.artifacts[index].name.c_str();
}

const char* pmctl_result_artifact_data(const pmctl_result* result, size_t index, size_t* size) {
    if (!result || index >= result->data.artifacts.size()) {
        if (size) *size = 0;
        return nullptr;
    }
    const auto& a = result->data.artifacts[index];
    if (size) *size = a.content.size();
    return a.content.data();
}

void pmctl_result_free(pmctl_result* result) { delete result; }

}  // extern "C"
