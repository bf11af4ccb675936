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

// Command layer shared by the C API and the command-line tool.
//
// A command takes a JSON config (user units: MHz, ns, us) and returns a
// summary document plus named data files. Field inputs are embedded JSON
// objects under "field" / "field2"; reading files is the caller's job.
// Unknown keys and ill-typed values raise ConfigError.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace pmctl::commands {

using json = nlohmann::json;

struct Artifact {
    std::string name;     ///< file name, e.g. "runs.csv"
    std::string content;  ///< exact bytes to write
};

struct CommandResult {
    json summary;
    std::vector<Artifact> artifacts;
    /// Non-empty when the run completed but produced no usable answer (no T2
    /// crossing, ...). Artifacts are still valid.
    std::string numeric_failure;
};

/// The six command names, in a fixed order.
const std::vector<std::string>& names();

/// Dispatches on `command`; throws ConfigError for an unknown command.
CommandResult run(std::string_view command, const json& config);

CommandResult optimize(const json& config);
CommandResult eval(const json& config);
CommandResult map(const json& config);
CommandResult sweep(const json& config);
CommandResult dd(const json& config);
CommandResult spectrum(const json& config);

}  // namespace pmctl::commands
