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

#ifndef QLAN_CLI_PLOT_HPP
#define QLAN_CLI_PLOT_HPP

#include <string>

#include "qlan/cli/report.hpp"
#include "qlan/errors.hpp"

namespace qlan::cli {

class SelectionError : public Error {
   public:
    using Error::Error;
    const char *kind() const noexcept override {
        return "selection";
    }
};

/// Line plot of `statistic` against n on a log axis, one polyline per (mu, u). An empty
/// `statistic` picks the first one with at least two rows that carry n. Throws SelectionError
/// when fewer than two rows are selected.
std::string emit_plot(const RiskReport &report, const std::string &statistic);

}  // namespace qlan::cli

#endif
