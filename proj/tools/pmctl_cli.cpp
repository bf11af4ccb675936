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

// pmctl command-line tool. Builds a JSON config from an optional --config
// file plus flags (flags win), runs the command through the C API and writes
// the data files and a manifest into a run directory.
//
// Exit codes: 0 success, 1 I/O or internal error, 2 config error,
// 3 numeric failure (data files are still written).

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "pmctl/pmctl.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CliError {
    int code;
    std::string message;
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw CliError{kExitConfig, "cannot open " + p.string()};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& data) {
    std::ofstream out(p, std::ios::binary);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw CliError{kExitIo, "cannot write " + p.string()};
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, md, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw CliError{kExitIo, "sha256 failed"};
    }
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // The parser message carries the line and column.
        throw CliError{kExitConfig, origin + ": " + e.what()};
    }
}

enum class Kind { Int, Real, Text, Path, Flag, Reals };

// One command-line flag and the config key it sets.
struct Flag {
    std::string name;
    std::string key;
    Kind kind;
    std::string help;
};

// Per-subcommand storage for flag values as typed on the command line.
struct Subcommand {
    CLI::App* app = nullptr;
    std::string config_path;
    std::string out_dir;
    std::map<std::string, std::string> text;
    std::map<std::string, bool> flags;
    std::map<std::string, std::vector<double>> lists;
    std::map<std::string, CLI::Option*> options;
    std::vector<Flag> spec;
};

const std::vector<Flag> kCommon = {
    {"--seed", "seed", Kind::Int, "master seed"},
    {"--threads", "threads", Kind::Int, "worker threads (0 = all cores)"},
};

const std::vector<Flag> kObjective = {
    {"--W-MHz", "W_MHz", Kind::Real, "detuning FWHM (MHz)"},
    {"--Omega-max-MHz", "Omega_max_MHz", Kind::Real, "peak amplitude bound (MHz)"},
    {"--M", "M", Kind::Int, "detuning grid points"},
    {"--K", "K", Kind::Int, "Monte-Carlo draws"},
    {"--dt-ns", "dt_ns", Kind::Real, "propagation step (ns)"},
    {"--objective", "objective", Kind::Text, "state | gate"},
    {"--target", "target", Kind::Text, "identity | pauli_x | pauli_y | pauli_z | hadamard"},
    {"--alpha", "alpha", Kind::Real, "amplitude scale"},
    {"--gamma-MHz", "gamma_MHz", Kind::Real, "dephasing rate (MHz, no 2pi)"},
    {"--gamma-angular", "gamma_angular", Kind::Flag, "multiply the dephasing rate by 2pi"},
    {"--freq-min-MHz", "freq_min_MHz", Kind::Real, "lower frequency-parameter bound (MHz)"},
    {"--freq-max-MHz", "freq_max_MHz", Kind::Real, "upper frequency-parameter bound (MHz)"},
};

std::vector<Flag> join(std::initializer_list<std::vector<Flag>> parts) {
    std::vector<Flag> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::map<std::string, std::vector<Flag>> command_flags() {
    std::map<std::string, std::vector<Flag>> m;
    m["optimize"] = join({kCommon, kObjective,
                          {{"--family", "family", Kind::Text, "sfb | sfb_p | sfb_p2 | pm"},
                           {"--N", "N", Kind::Int, "number of basis terms"},
                           {"--T-ns", "T_ns", Kind::Real, "pulse duration (ns)"},
                           {"--starts", "starts", Kind::Int, "random starts"},
                           {"--budget", "budget", Kind::Int, "evaluations per start (0 = 200 x free parameters)"},
                           {"--randomize-freqs", "randomize_freqs", Kind::Flag, "freeze frequencies at random values"},
                           {"--omega0-MHz", "omega0_MHz", Kind::Real, "carrier frequency (MHz)"}}});
    m["eval"] = join({kCommon, kObjective,
                      {{"--field", "field", Kind::Path, "field JSON file"},
                       {"--T-ns", "T_ns", Kind::Real, "expected pulse duration (ns)"},
                       {"--no-monte-carlo", "monte_carlo", Kind::Flag, "skip the Monte-Carlo estimate"}}});
    m["map"] = join({kCommon, kObjective,
                     {{"--field", "field", Kind::Path, "field JSON file"},
                      {"--field2", "field2", Kind::Path, "second field for the area ratio"},
                      {"--T-ns", "T_ns", Kind::Real, "expected pulse duration (ns)"},
                      {"--threshold", "threshold", Kind::Real, "fidelity threshold for the area"},
                      {"--n-delta", "n_delta", Kind::Int, "detuning points"},
                      {"--n-alpha", "n_alpha", Kind::Int, "amplitude-scale points"},
                      {"--delta-max-MHz", "delta_max_MHz", Kind::Real, "detuning half-range (MHz)"},
                      {"--alpha-min", "alpha_min", Kind::Real, "smallest amplitude scale"},
                      {"--alpha-max", "alpha_max", Kind::Real, "largest amplitude scale"}}});
    m["sweep"] = join({kCommon,
                       {{"--field", "field", Kind::Path, "field JSON file"},
                        {"--T-ns", "T_ns", Kind::Real, "expected pulse duration (ns)"},
                        {"--gammas-MHz", "gammas_MHz", Kind::Reals, "comma-separated dephasing rates (MHz)"},
                        {"--gamma-max-MHz", "gamma_max_MHz", Kind::Real, "largest rate of an even sweep (MHz)"},
                        {"--n-gamma", "n_gamma", Kind::Int, "rates in an even sweep"},
                        {"--gamma-angular", "gamma_angular", Kind::Flag, "multiply rates by 2pi"},
                        {"--W-MHz", "W_MHz", Kind::Real, "detuning FWHM (MHz)"},
                        {"--M", "M", Kind::Int, "detuning grid points"},
                        {"--K", "K", Kind::Int, "Monte-Carlo draws"},
                        {"--dt-ns", "dt_ns", Kind::Real, "propagation step (ns)"},
                        {"--alpha", "alpha", Kind::Real, "amplitude scale"},
                        {"--Omega-max-MHz", "Omega_max_MHz", Kind::Real, "peak amplitude bound (MHz)"}}});
    m["dd"] = join({kCommon,
                    {{"--pulse", "pulse", Kind::Text, "rect | optimized | phase_shifted"},
                     {"--Omega-MHz", "Omega_MHz", Kind::Real, "rectangular pulse amplitude (MHz)"},
                     {"--Tpulse-ns", "Tpulse_ns", Kind::Real, "pulse length (ns)"},
                     {"--field", "field", Kind::Path, "X pulse field JSON"},
                     {"--field2", "field2", Kind::Path, "Y pulse field JSON"},
                     {"--n-trials", "n_trials", Kind::Int, "noise realizations per point"},
                     {"--n-tau", "n_tau", Kind::Int, "number of sequence lengths"},
                     {"--T-min-us", "T_min_us", Kind::Real, "shortest sequence (us)"},
                     {"--T-max-us", "T_max_us", Kind::Real, "longest sequence (us)"},
                     {"--dt-ns", "dt_ns", Kind::Real, "propagation step (ns)"},
                     {"--ou-tau-us", "ou_tau_us", Kind::Real, "OU correlation time (us)"},
                     {"--ou-std-kHz", "ou_std_kHz", Kind::Real, "OU standard deviation (kHz)"},
                     {"--static-fwhm-MHz", "static_fwhm_MHz", Kind::Real, "static detuning FWHM (MHz)"}}});
    m["spectrum"] = join({{{"--field", "field", Kind::Path, "field JSON file"},
                           {"--T-ns", "T_ns", Kind::Real, "expected pulse duration (ns)"},
                           {"--threshold-MHz", "threshold_MHz", Kind::Real, "component amplitude threshold (MHz)"},
                           {"--f-max-MHz", "f_max_MHz", Kind::Real, "largest reported frequency (MHz)"},
                           {"--n-samples", "n_samples", Kind::Int, "time samples (power of two >= 4096)"},
                           {"--window", "window", Kind::Text, "hann | rect"},
                           {"--zero-pad", "zero_pad", Kind::Int, "zero-padding factor"}}});
    return m;
}

json typed_value(const Flag& f, const std::string& raw) {
    try {
        std::size_t used = 0;
        switch (f.kind) {
            case Kind::Int: {
                const long long v = std::stoll(raw, &used);
                if (used != raw.size()) break;
                return v;
            }
            case Kind::Real: {
                const double v = std::stod(raw, &used);
                if (used != raw.size()) break;
                return v;
            }
            default:
                return raw;
        }
    } catch (const std::exception&) {
    }
    throw CliError{kExitConfig, f.name + ": cannot parse '" + raw + "'"};
}

// Replaces path strings under field/field2 by the parsed documents.
void load_fields(json& config, const fs::path& base, json& inputs) {
    for (const char* key : {"field", "field2"}) {
        if (!config.contains(key) || !config[key].is_string()) continue;
        fs::path p = config[key].get<std::string>();
        if (p.is_relative()) p = base / p;
        const std::string text = read_file(p);
        config[key] = parse_json(text, p.string());
        inputs[key] = {{"path", p.string()}, {"sha256", sha256_hex(text)}};
    }
}

fs::path make_run_dir(const std::string& requested, const std::string& command) {
    fs::path dir;
    if (!requested.empty()) {
        dir = requested;
    } else {
        const std::time_t now = std::time(nullptr);
        std::tm tm{};
        gmtime_r(&now, &tm);
        char stamp[32];
        std::strftime(stamp, sizeof stamp, "%Y%m%d-%H%M%S", &tm);
        dir = fs::path("runs") / (std::string(stamp) + "-" + command);
        for (int i = 1; fs::exists(dir); ++i) dir = fs::path("runs") / (std::string(stamp) + "-" + command + "-" + std::to_string(i));
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw CliError{kExitIo, "cannot create " + dir.string() + ": " + ec.message()};
    return dir;
}

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void print_headline(const std::string& command, const json& s) {
    auto num = [&](const char* key) { return s.contains(key) && !s[key].is_null() ? s[key].dump() : "n/a"; };
    if (command == "optimize")
        std::cout << "best F_obj " << num("best_F_obj") << "  Omega_ave " << num("omega_ave_MHz")
                  << " MHz  mean n_f " << num("mean_n_f") << "\n";
    else if (command == "eval")
        std::cout << "F_obj " << num("F_obj") << "  F_mc " << num("F_mc") << " +- " << num("F_mc_stderr") << "\n";
    else if (command == "map")
        std::cout << "area " << num("area_MHz") << "  area ratio " << num("area_ratio") << "\n";
    else if (command == "dd")
        std::cout << "T2 " << num("T2_us") << " us (" << s.value("pulse_impl", "") << ")\n";
    else if (command == "spectrum")
        std::cout << "components " << num("components") << "\n";
}

int run_command(const std::string& command, Subcommand& sub) {
    const auto started = std::chrono::steady_clock::now();
    const std::string started_utc = utc_now();

    json config = json::object();
    fs::path file_base = fs::current_path();
    if (!sub.config_path.empty()) {
        config = parse_json(read_file(sub.config_path), sub.config_path);
        if (!config.is_object()) throw CliError{kExitConfig, sub.config_path + ": expected a JSON object"};
        file_base = fs::absolute(sub.config_path).parent_path();
    }
    json inputs = json::object();
    load_fields(config, file_base, inputs);

    json flag_config = json::object();
    for (const auto& f : sub.spec) {
        if (f.kind == Kind::Flag) {
            if (sub.flags[f.key]) flag_config[f.key] = f.name != "--no-monte-carlo";
        } else if (f.kind == Kind::Reals) {
            if (sub.options[f.key]->count() > 0) flag_config[f.key] = sub.lists[f.key];
        } else if (sub.options[f.key]->count() > 0) {
            flag_config[f.key] = typed_value(f, sub.text[f.key]);
        }
    }
    load_fields(flag_config, fs::current_path(), inputs);
    config.update(flag_config);

    pmctl_result* result = nullptr;
    const pmctl_status status = pmctl_run(command.c_str(), config.dump().c_str(), &result);
    if (status != PMCTL_OK && status != PMCTL_ERR_NUMERIC) {
        const std::string msg = pmctl_last_error();
        pmctl_result_free(result);
        throw CliError{status == PMCTL_ERR_CONFIG || status == PMCTL_ERR_ARGUMENT ? kExitConfig : kExitIo, msg};
    }
    const std::string numeric_msg = status == PMCTL_ERR_NUMERIC ? pmctl_last_error() : "";

    const fs::path dir = make_run_dir(sub.out_dir, command);
    json outputs = json::array();
    for (std::size_t i = 0; i < pmctl_result_artifact_count(result); ++i) {
        std::size_t size = 0;
        const char* data = pmctl_result_artifact_data(result, i, &size);
        const std::string bytes(data, size);
        const std::string name = pmctl_result_artifact_name(result, i);
        write_file(dir / name, bytes);
        outputs.push_back({{"path", name}, {"bytes", size}, {"sha256", sha256_hex(bytes)}});
    }
    const json summary = json::parse(pmctl_result_summary(result));
    pmctl_result_free(result);

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    json manifest = {{"tool", "pmctl"},
                     {"version", pmctl_version()},
                     {"command", command},
                     {"seed", config.value("seed", 1)},
                     {"config", config},
                     {"inputs", inputs},
                     {"outputs", outputs},
                     {"summary", summary},
                     {"started_utc", started_utc},
                     {"wall_seconds", wall},
                     {"status", numeric_msg.empty() ? "ok" : "numeric_failure"}};
    if (summary.contains("mean_n_f")) manifest["n_f"] = {{"mean", summary["mean_n_f"]}, {"budget", summary["budget"]}};
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");

    print_headline(command, summary);
    std::cout << "run directory: " << dir.string() << "\n";
    if (!numeric_msg.empty()) {
        std::cerr << "pmctl: " << numeric_msg << "\n";
        return kExitNumeric;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-modulated and Fourier-basis pulse design for broadened two-level ensembles"};
    app.set_version_flag("--version", std::string(pmctl_version()));
    app.require_subcommand(1);

    const auto all = command_flags();
    std::map<std::string, Subcommand> subs;
    const std::map<std::string, std::string> about = {
        {"optimize", "multi-start pulse optimization"},
        {"eval", "ensemble fidelity of a saved field"},
        {"map", "fidelity over detuning and amplitude scale"},
        {"sweep", "ensemble fidelity versus dephasing rate"},
        {"dd", "XY-8 decoupling decay and T2"},
        {"spectrum", "frequency components of a saved field"}};
    for (const auto& [name, flags] : all) {
        Subcommand& s = subs[name];
        s.app = app.add_subcommand(name, about.at(name));
        s.spec = flags;
        s.app->add_option("--config", s.config_path, "JSON config file; flags override its keys");
        s.app->add_option("--out", s.out_dir, "run directory (default runs/<timestamp>-<command>)");
        for (const auto& f : flags) {
            if (f.kind == Kind::Flag)
                s.options[f.key] = s.app->add_flag(f.name, s.flags[f.key], f.help);
            else if (f.kind == Kind::Reals)
                s.options[f.key] = s.app->add_option(f.name, s.lists[f.key], f.help)->delimiter(',');
            else
                s.options[f.key] = s.app->add_option(f.name, s.text[f.key], f.help);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    for (auto& [name, s] : subs) {
        if (!s.app->parsed()) continue;
        try {
            return run_command(name, s);
        } catch (const CliError& e) {
            std::cerr << "pmctl " << name << ": " << e.message << "\n";
            return e.code;
        } catch (const std::exception& e) {
            std::cerr << "pmctl " << name << ": " << e.what() << "\n";
            return kExitIo;
        }
    }
    return kExitConfig;
}
