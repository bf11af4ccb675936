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

#pragma once

#include <numbers>

// Internally every frequency is angular (rad/s) and every time is in seconds.
// User-facing values are ordinary frequencies in MHz and times in ns/us.
namespace pmctl::units {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double mhz_to_angular(double mhz) { return kTwoPi * mhz * 1e6; }
constexpr double angular_to_mhz(double w) { return w / (kTwoPi * 1e6); }

constexpr double ns_to_s(double ns) { return ns * 1e-9; }
constexpr double s_to_ns(double s) { return s / 1e-9; }
constexpr double us_to_s(double us) { return us * 1e-6; }
constexpr double s_to_us(double s) { return s / 1e-6; }

/// Plain rate in MHz (events per microsecond) to 1/s, no 2*pi.
constexpr double mhz_to_rate(double mhz) { return mhz * 1e6; }
constexpr double rate_to_mhz(double r) { return r / 1e6; }

}  // namespace pmctl::units
