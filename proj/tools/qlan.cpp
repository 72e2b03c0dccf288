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

#include <algorithm>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qlan/cli/commands.hpp"

namespace {

const std::map<std::string, std::string> kHelp = {
    {"n", "comma-separated qubit counts"},
    {"mu", "comma-separated larger eigenvalues of the qubit state, each in (1/2, 1]"},
    {"epsilon", "concentration window exponent in (0, 1/2)"},
    {"grid", "local parameter grid min:max:steps, or x-spec,y-spec"},
    {"trunc", "Fock dimension (0 chooses one)"},
    {"blockwise", "also report per-block forward distances (true/false)"},
    {"concentration_only", "sum the forward image over the concentration set only (true/false)"},
    {"quad", "quadrature nodes radial:angular"},
    {"method", "monte_carlo or quadrature"},
    {"seed", "random seed"},
    {"samples", "Monte Carlo sample count"},
    {"out", "output path (extension added per format)"},
    {"format", "csv, json or both"},
    {"workers", "worker threads (0 uses all cores)"},
    {"in", "report to plot (.csv or .json)"},
    {"statistic", "statistic to plot (default: first with two or more rows)"},
};

std::string flag_name(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return "--" + key;
}

}  // namespace

int main(int argc, char **argv) {
    using namespace qlan::cli;
    CLI::App app{"Local asymptotic normality experiments for collective qubit states"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::map<std::string, std::map<std::string, std::string>> given;
    std::map<std::string, std::string> config_path;
    std::vector<std::pair<CLI::App *, Command>> subs;
    const std::map<Command, std::string> kAbout{
        {Command::convergence, "trace distances between the qubit states and the oscillator limit, both directions"},
        {Command::discriminate, "Helstrom risk for the states at u and -u against the coherent limit"},
        {Command::measure_compare, "total variation between covariant and heterodyne outcome densities"},
        {Command::risk, "quadratic risk of the heterodyne estimator"},
        {Command::plot, "SVG line plot of one statistic from a report"},
    };
    for (Command c : {Command::convergence, Command::discriminate, Command::measure_compare, Command::risk,
                      Command::plot}) {
        std::string name = command_name(c);
        CLI::App *sub = app.add_subcommand(name, kAbout.at(c));
        sub->add_option("--config", config_path[name], "flat key=value config file");
        for (const std::string &key : command_keys(c)) {
            sub->add_option(flag_name(key), given[name][key], kHelp.at(key));
        }
        subs.emplace_back(sub, c);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << error_line(2, "config", e.what()) << "\n";
        return 2;
    }

    for (auto &[sub, command] : subs) {
        if (!sub->parsed()) {
            continue;
        }
        std::string name = command_name(command);
        try {
            RawConfig file;
            if (!config_path[name].empty()) {
                file = read_config_file(config_path[name]);
            }
            RawConfig overrides;
            for (const std::string &key : command_keys(command)) {
                if (sub->get_option(flag_name(key))->count() > 0) {
                    overrides[key] = given[name][key];
                }
            }
            ExperimentConfig cfg = resolve_config(command, file, overrides);
            return execute(cfg, std::cerr);
        } catch (const std::exception &e) {
            int code = exit_code(e);
            std::cerr << error_line(code, error_kind(e), e.what()) << "\n";
            return code;
        }
    }
    return 2;
}
