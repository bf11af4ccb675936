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

#include <gtest/gtest.h>

#include "pmctl/commands.hpp"
#include "pmctl/errors.hpp"
#include "pmctl/serialize.hpp"
#include "pmctl/units.hpp"

using namespace pmctl;
using commands::json;

namespace {

json pi_pulse_doc() {
    return json::parse(R"({"family": "sfb_p", "N": 1, "T_ns": 50, "params": [10, 0, 0]})");
}

const commands::Artifact& artifact(const commands::CommandResult& r, const std::string& name) {
    for (const auto& a : r.artifacts)
        if (a.name == name) return a;
    throw std::runtime_error("missing artifact " + name);
}

}  // namespace

TEST(Commands, OptimizeSmallRun) {
    const json cfg = {{"family", "pm"}, {"N", 1}, {"starts", 3}, {"budget", 30}, {"M", 3}, {"dt_ns", 0.5}, {"seed", 5},
                      {"threads", 1}};
    const auto r = commands::optimize(cfg);
    EXPECT_EQ(r.summary["budget"], 30);
    EXPECT_EQ(r.summary["N_p"], 3);
    EXPECT_LE(r.summary["mean_n_f"].get<double>(), 30.0);
    const auto field = serialize::field_from_json(json::parse(artifact(r, "best_field.json").content));
    EXPECT_EQ(field.family(), basis::Family::PM);
    const std::string runs = artifact(r, "runs.csv").content;
    EXPECT_EQ(runs.substr(0, runs.find('\n')), "rank,start_index,best_value,n_f");
    EXPECT_EQ(std::count(runs.begin(), runs.end(), '\n'), 4);
    const auto again = commands::optimize(cfg);
    for (std::size_t i = 0; i < r.artifacts.size(); ++i) EXPECT_EQ(r.artifacts[i].content, again.artifacts[i].content);
}

TEST(Commands, EvalPiPulse) {
    const json cfg = {{"field", pi_pulse_doc()}, {"M", 1}, {"monte_carlo", false}};
    const auto r = commands::eval(cfg);
    EXPECT_NEAR(r.summary["F_obj"].get<double>(), 1.0, 1e-9);
    EXPECT_NEAR(r.summary["peak_MHz"].get<double>(), 10.0, 1e-9);
    EXPECT_FALSE(r.summary.contains("F_mc"));
}

TEST(Commands, MapComparesTwoFields) {
    json half = pi_pulse_doc();
    half["params"][0] = 5.0;
    const json cfg = {{"field", pi_pulse_doc()}, {"field2", half}, {"n_delta", 11}, {"n_alpha", 11}};
    const auto r = commands::map(cfg);
    EXPECT_GT(r.summary["area_MHz"].get<double>(), 0.0);
    ASSERT_TRUE(r.summary["area_ratio"].is_number() || r.summary["area_ratio"].is_null());
    const std::string csv = artifact(r, "map.csv").content;
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 122);
}

TEST(Commands, SweepAndSpectrum) {
    const auto s = commands::sweep({{"field", pi_pulse_doc()}, {"gammas_MHz", {0.0, 1.0}}, {"K", 500}});
    EXPECT_EQ(s.summary["points"].size(), 2u);
    EXPECT_GT(s.summary["points"][0]["fidelity"].get<double>(), s.summary["points"][1]["fidelity"].get<double>());

    json pm = json::parse(R"({"family": "pm", "N": 1, "T_ns": 1000, "params": [10, 20, 20]})");
    const auto sp = commands::spectrum({{"field", pm}, {"threshold_MHz", 1.0}});
    // a |J_l(1)| >= 1 MHz for l = -2..2.
    EXPECT_EQ(sp.summary["components"], 5);
}

TEST(Commands, DdReportsNumericFailureWithoutCrossing) {
    const json cfg = {{"pulse", "rect"}, {"n_trials", 4}, {"n_tau", 2}, {"T_min_us", 1.0}, {"T_max_us", 1.2},
                      {"static_fwhm_MHz", 0.0}, {"ou_std_kHz", 0.0}};
    const auto r = commands::dd(cfg);
    EXPECT_FALSE(r.numeric_failure.empty());
    EXPECT_TRUE(r.summary["T2_us"].is_null());
    EXPECT_EQ(r.summary["pulse_impl"], "rect");
}

TEST(Commands, ConfigErrorsNameTheKey) {
    auto expect_error = [](const std::string& cmd, const json& cfg, const std::string& needle) {
        try {
            commands::run(cmd, cfg);
            ADD_FAILURE() << "no error for " << cfg.dump();
        } catch (const ConfigError& e) {
            EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
        }
    };
    expect_error("optimize", {{"famly", "pm"}}, "famly");
    expect_error("optimize", {{"family", "nope"}}, "family");
    expect_error("optimize", {{"N", 1.5}}, "'N'");
    expect_error("optimize", {{"T_ns", -1}}, "T_ns");
    expect_error("eval", json::object(), "field");
    expect_error("eval", {{"field", pi_pulse_doc()}, {"T_ns", 80}}, "T_ns");
    expect_error("map", {{"field", pi_pulse_doc()}, {"threshold", 1.5}}, "threshold");
    expect_error("dd", {{"pulse", "gaussian"}}, "pulse");
    expect_error("spectrum", {{"field", pi_pulse_doc()}, {"n_samples", 100}}, "n_samples");
    expect_error("frobnicate", json::object(), "frobnicate");
}
