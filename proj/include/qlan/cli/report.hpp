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

#ifndef QLAN_CLI_REPORT_HPP
#define QLAN_CLI_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlan/irreps.hpp"

namespace qlan::cli {

struct ReportRow {
    std::optional<int> n;
    std::optional<double> mu;
    std::optional<LocalParam> u;
    std::string statistic;
    double value = 0;
    /// 0 for values that are exact up to rounding.
    double error_bound = 0;
};

struct RiskReport {
    std::string id;
    std::string version;
    std::string command;
    std::optional<std::uint64_t> seed;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<ReportRow> rows;
    /// "ok", or "partial" when a run stopped early; `message` then says why.
    std::string status = "ok";
    std::string message;
};

/// %.17g, which round-trips every finite double.
std::string format_number(double v);

/// FNV-1a over the command and the config echo, as 16 hex digits.
std::string experiment_id(const std::string &command, const std::vector<std::pair<std::string, std::string>> &config);

std::string to_csv(const RiskReport &report);
std::string to_json(const RiskReport &report);
RiskReport parse_csv(const std::string &text);
RiskReport parse_json(const std::string &text);

std::string read_file(const std::string &path);
/// Writes through a temporary file and renames it into place. Throws IoError.
void write_file(const std::string &path, const std::string &content);

}  // namespace qlan::cli

#endif
