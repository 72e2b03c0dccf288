// Copyright 2026 The qlan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QLAN_CLI_CONFIG_HPP
#define QLAN_CLI_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qlan/channels.hpp"
#include "qlan/errors.hpp"
#include "qlan/measurements.hpp"

namespace qlan::cli {

inline constexpr const char *kVersion = "1.0.0";

class ConfigError : public Error {
   public:
    using Error::Error;
    const char *kind() const noexcept override {
        return "config";
    }
};

class IoError : public Error {
   public:
    using Error::Error;
    const char *kind() const noexcept override {
        return "io";
    }
};

enum class Command { convergence, discriminate, measure_compare, risk, plot };

const char *command_name(Command command);
Command parse_command(const std::string &name);

/// Keys accepted by a command, in echo order.
const std::vector<std::string> &command_keys(Command command);

enum class OutputFormat { csv, json, both };

struct ExperimentConfig {
    Command command = Command::convergence;
    std::vector<int> n;
    std::vector<double> mu;
    double epsilon = 0.1;
    ParamGrid grid;
    /// Fock dimension; 0 selects it from the parameters.
    int trunc = 0;
    QuadratureSpec quadrature;
    std::uint64_t seed = 1;
    std::uint64_t samples = 1000000;
    RiskSpec::Method method = RiskSpec::Method::quadrature;
    bool blockwise = true;
    bool concentration_only = false;
    std::string out;
    OutputFormat format = OutputFormat::csv;
    /// 0 uses every hardware thread.
    unsigned workers = 0;
    std::string in;
    std::string statistic;

    /// Effective key=value pairs, in a fixed order.
    std::vector<std::pair<std::string, std::string>> echo;
};

using RawConfig = std::map<std::string, std::string>;

/// Flat key=value lines; '#' starts a comment, blank lines are ignored.
RawConfig parse_config_text(const std::string &text, const std::string &origin);
RawConfig read_config_file(const std::string &path);

/// Defaults, then `file`, then `overrides`. Throws ConfigError on unknown keys or bad values.
ExperimentConfig resolve_config(Command command, const RawConfig &file, const RawConfig &overrides);

std::vector<int> parse_int_list(const std::string &key, const std::string &text);
std::vector<double> parse_double_list(const std::string &key, const std::string &text);
/// "min:max:steps" for both axes, or "min:max:steps,min:max:steps" for x then y.
ParamGrid parse_grid(const std::string &text);

}  // namespace qlan::cli

#endif
