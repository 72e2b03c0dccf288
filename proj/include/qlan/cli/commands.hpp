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

#ifndef QLAN_CLI_COMMANDS_HPP
#define QLAN_CLI_COMMANDS_HPP

#include <iosfwd>
#include <string>

#include "qlan/cli/config.hpp"
#include "qlan/cli/report.hpp"

namespace qlan::cli {

/// A report with identity, seed and config echo filled in and no rows.
RiskReport new_report(const ExperimentConfig &cfg);

/// Appends rows to `report` as they are computed, so a failure leaves the finished rows in place.
void run_into(const ExperimentConfig &cfg, RiskReport &report);

RiskReport run_convergence(const ExperimentConfig &cfg);
RiskReport run_discriminate(const ExperimentConfig &cfg);
RiskReport run_measure_compare(const ExperimentConfig &cfg);
RiskReport run_risk(const ExperimentConfig &cfg);

/// 2 for configuration and domain errors, 3 for numerical failures, 4 for I/O.
int exit_code(const std::exception &e);
const char *error_kind(const std::exception &e);
/// error: code=<c> kind=<k> message="<m>"
std::string error_line(int code, const std::string &kind, const std::string &message);

/// Paths the report is written to for the configured format.
std::vector<std::string> output_paths(const ExperimentConfig &cfg);

/// Runs the configured command, writes its outputs and returns the process exit code. Errors go
/// to `err` as a single error_line.
int execute(const ExperimentConfig &cfg, std::ostream &err);

}  // namespace qlan::cli

#endif
