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

// Exercises the shared library through its C header only.

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <thread>

#include "pmctl/pmctl.h"
#include "support/oracles.hpp"

namespace {

const char* kPiPulse = R"({"family": "sfb_p", "N": 1, "T_ns": 50, "params": [10, 0, 0]})";

}  // namespace

TEST(CApi, Version) { EXPECT_STREQ(pmctl_version(), PMCTL_VERSION_STRING); }

TEST(CApi, FieldLifecycle) {
    pmctl_field* f = nullptr;
    ASSERT_EQ(pmctl_field_from_json(kPiPulse, &f), PMCTL_OK);
    ASSERT_NE(f, nullptr);
    double t = 0.0;
    ASSERT_EQ(pmctl_field_horizon(f, &t), PMCTL_OK);
    EXPECT_NEAR(t, 50e-9, 1e-22);
    double re = 0.0, im = 0.0;
    ASSERT_EQ(pmctl_field_envelope(f, 1e-8, &re, &im), PMCTL_OK);
    EXPECT_NEAR(re, 2.0 * std::numbers::pi * 1e7, 1e-3);
    EXPECT_NEAR(im, 0.0, 1e-9);

    const double omega = 2.0 * std::numbers::pi * 1e7, delta = 2.0 * std::numbers::pi * 4e6;
    double p = 0.0;
    ASSERT_EQ(pmctl_field_transfer_probability(f, delta, 1.0, 50e-12, &p), PMCTL_OK);
    EXPECT_NEAR(p, oracle::rabi_transfer(omega, delta, 50e-9), 1e-10);

    char* text = nullptr;
    ASSERT_EQ(pmctl_field_to_json(f, &text), PMCTL_OK);
    pmctl_field* g = nullptr;
    ASSERT_EQ(pmctl_field_from_json(text, &g), PMCTL_OK);
    char* text2 = nullptr;
    ASSERT_EQ(pmctl_field_to_json(g, &text2), PMCTL_OK);
    EXPECT_STREQ(text, text2);
    pmctl_string_free(text);
    pmctl_string_free(text2);
    pmctl_field_free(g);
    pmctl_field_free(f);
    pmctl_field_free(nullptr);
}

TEST(CApi, ErrorsAreReported) {
    pmctl_field* f = nullptr;
    EXPECT_EQ(pmctl_field_from_json("{not json", &f), PMCTL_ERR_CONFIG);
    EXPECT_EQ(f, nullptr);
    EXPECT_NE(std::string(pmctl_last_error()).find("line 1"), std::string::npos) << pmctl_last_error();
    EXPECT_EQ(pmctl_field_from_json(R"({"family": "pm"})", &f), PMCTL_ERR_CONFIG);
    EXPECT_NE(std::string(pmctl_last_error()).find("N"), std::string::npos);
    EXPECT_EQ(pmctl_field_from_json(nullptr, &f), PMCTL_ERR_ARGUMENT);
    EXPECT_EQ(pmctl_field_horizon(nullptr, nullptr), PMCTL_ERR_ARGUMENT);

    ASSERT_EQ(pmctl_field_from_json(kPiPulse, &f), PMCTL_OK);
    double p = 0.0;
    EXPECT_EQ(pmctl_field_transfer_probability(f, 0.0, 1.0, -1.0, &p), PMCTL_ERR_ARGUMENT);
    pmctl_field_free(f);

    pmctl_result* r = nullptr;
    EXPECT_EQ(pmctl_run("nope", "{}", &r), PMCTL_ERR_CONFIG);
    EXPECT_EQ(r, nullptr);
    EXPECT_EQ(pmctl_eval(R"({"M": 3})", &r), PMCTL_ERR_CONFIG);
    EXPECT_EQ(r, nullptr);
}

TEST(CApi, LastErrorIsPerThread) {
    pmctl_field* f = nullptr;
    EXPECT_EQ(pmctl_field_from_json("{", &f), PMCTL_ERR_CONFIG);
    std::string other;
    std::thread([&] { other = pmctl_last_error(); }).join();
    EXPECT_TRUE(other.empty());
    EXPECT_FALSE(std::string(pmctl_last_error()).empty());
}

TEST(CApi, RunCommandAndReadArtifacts) {
    const std::string cfg = std::string(R"({"M": 1, "monte_carlo": false, "field": )") + kPiPulse + "}";
    pmctl_result* r = nullptr;
    ASSERT_EQ(pmctl_eval(cfg.c_str(), &r), PMCTL_OK) << pmctl_last_error();
    ASSERT_NE(r, nullptr);
    EXPECT_NE(std::string(pmctl_result_summary(r)).find("\"F_obj\""), std::string::npos);
    ASSERT_EQ(pmctl_result_artifact_count(r), 1u);
    EXPECT_STREQ(pmctl_result_artifact_name(r, 0), "summary.json");
    std::size_t size = 0;
    const char* data = pmctl_result_artifact_data(r, 0, &size);
    EXPECT_EQ(std::strlen(pmctl_result_summary(r)), size);
    EXPECT_EQ(std::memcmp(data, pmctl_result_summary(r), size), 0);
    EXPECT_EQ(pmctl_result_artifact_name(r, 5), nullptr);
    EXPECT_EQ(pmctl_result_artifact_data(r, 5, &size), nullptr);
    EXPECT_EQ(size, 0u);
    pmctl_result_free(r);
}

TEST(CApi, NumericFailureStillReturnsData) {
    const char* cfg = R"({"pulse": "rect", "n_trials": 2, "n_tau": 2, "T_min_us": 1, "T_max_us": 1.2,
                          "static_fwhm_MHz": 0, "ou_std_kHz": 0})";
    pmctl_result* r = nullptr;
    EXPECT_EQ(pmctl_dd(cfg, &r), PMCTL_ERR_NUMERIC);
    ASSERT_NE(r, nullptr);
    EXPECT_NE(std::string(pmctl_last_error()).find("T2"), std::string::npos);
    EXPECT_EQ(pmctl_result_artifact_count(r), 2u);
    pmctl_result_free(r);
}
