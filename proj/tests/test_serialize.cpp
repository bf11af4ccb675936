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

#include <cstring>
#include <random>

#include "pmctl/errors.hpp"
#include "pmctl/serialize.hpp"
#include "pmctl/units.hpp"

using namespace pmctl;
using namespace pmctl::serialize;

TEST(Serialize, NumbersRoundTrip) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e9, 1e9);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
        EXPECT_EQ(std::stod(number(v)), v);
    }
    EXPECT_EQ(number(0.5), "0.5");
    EXPECT_EQ(number(2.0), "2");
}

TEST(Serialize, FieldRoundTripIsBitExact) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (basis::Family fam : {basis::Family::SFB, basis::Family::SFB_P, basis::Family::SFB_P2, basis::Family::PM}) {
        std::vector<double> p(2 * basis::block_size(fam));
        for (double& x : p) x = u(rng) * 3e8;
        const basis::ControlField f(fam, 2, p, 1e-7 * (1.0 + u(rng)), 2.0 * std::numbers::pi * 2.87e9);
        const auto doc = field_to_json(f);
        const auto back = field_from_json(json::parse(dump(doc)));
        EXPECT_EQ(back, f);
        EXPECT_EQ(dump(field_to_json(back)), dump(doc));
    }
}

TEST(Serialize, FieldDocumentUsesUserUnits) {
    const basis::ControlField f(basis::Family::PM, 1,
                                {units::mhz_to_angular(10.0), units::mhz_to_angular(30.0), units::mhz_to_angular(20.0)},
                                100e-9);
    const auto doc = field_to_json(f);
    EXPECT_EQ(doc["family"], "pm");
    EXPECT_EQ(doc["N"], 1);
    EXPECT_NEAR(doc["T_ns"].get<double>(), 100.0, 1e-12);
    EXPECT_NEAR(doc["params"][0].get<double>(), 10.0, 1e-12);
    EXPECT_NEAR(doc["params"][2].get<double>(), 20.0, 1e-12);

    const basis::ControlField g(basis::Family::SFB_P2, 1, {1e7, 2e7, 0.25, 1.5}, 100e-9);
    const auto gd = field_to_json(g);
    EXPECT_EQ(gd["params"][2].get<double>(), 0.25);  // phases stay in radians
    EXPECT_EQ(gd["params"][3].get<double>(), 1.5);
}

TEST(Serialize, HandWrittenDocumentWithoutExactBlock) {
    const auto doc = json::parse(R"({"family": "sfb_p", "N": 1, "T_ns": 50, "params": [10, 0, 0]})");
    const auto f = field_from_json(doc);
    EXPECT_EQ(f.family(), basis::Family::SFB_P);
    EXPECT_NEAR(f.horizon(), 50e-9, 1e-22);
    EXPECT_NEAR(f.params()[0], units::mhz_to_angular(10.0), 1e-6);
    EXPECT_EQ(f.carrier(), 0.0);
}

TEST(Serialize, MalformedDocumentsAreConfigErrors) {
    EXPECT_THROW(field_from_json(json::parse("[1, 2]")), ConfigError);
    EXPECT_THROW(field_from_json(json::parse(R"({"family": "pm", "N": 1, "params": [1, 2, 3]})")), ConfigError);
    EXPECT_THROW(field_from_json(json::parse(R"({"family": "xx", "N": 1, "T_ns": 1, "params": [1, 2, 3]})")),
                 ConfigError);
    EXPECT_THROW(field_from_json(json::parse(R"({"family": "pm", "N": 1, "T_ns": 1, "params": [1, 2]})")),
                 ConfigError);
    EXPECT_THROW(field_from_json(json::parse(R"({"family": "pm", "N": 1, "T_ns": "x", "params": [1, 2, 3]})")),
                 ConfigError);
    // Display and exact values disagree.
    auto doc = field_to_json(basis::ControlField(basis::Family::PM, 1, {1e7, 2e7, 3e7}, 1e-7));
    doc["params"][0] = 99.0;
    EXPECT_THROW(field_from_json(doc), ConfigError);
}

TEST(Serialize, CsvDialect) {
    robustness::FidelityMap m{{-units::mhz_to_angular(1.0), units::mhz_to_angular(1.0)}, {1.0}, {{0.25, 0.5}}, 0.0};
    const auto csv = map_csv(m);
    EXPECT_EQ(csv, "delta_MHz,alpha,fidelity\n-1,1,0.25\n1,1,0.5\n");
    EXPECT_EQ(csv.find('\r'), std::string::npos);

    std::vector<ddsim::CurvePoint> curve = {{4e-6, 0.4e-6, {0.9, 0.01, 200}}};
    EXPECT_EQ(dd_csv(curve), "T_us,tau_us,P0,stderr,n_trials\n4,0.4,0.9,0.01,200\n");
}
