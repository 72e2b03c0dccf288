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

#include "qlan/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>


namespace qlan::cli {

namespace {

std::string trim(const std::string &s) {
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return "";
    }
    auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) {
        parts.push_back(trim(cur));
    }
    if (!text.empty() && text.back() == sep) {
        parts.push_back("");
    }
    return parts;
}

// Shortest round-trip form, for the config echo.
std::string echo_number(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

[[noreturn]] void bad_value(const std::string &key, const std::string &value, const std::string &why) {
    throw ConfigError("invalid value '" + value + "' for key '" + key + "': " + why);
}

double parse_double(const std::string &key, const std::string &text) {
    std::string t = trim(text);
    double v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v)) {
        bad_value(key, text, "expected a finite number");
    }
    return v;
}

long long parse_integer(const std::string &key, const std::string &text) {
    std::string t = trim(text);
    long long v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        bad_value(key, text, "expected an integer");
    }
    return v;
}

bool parse_bool(const std::string &key, const std::string &text) {
    std::string t = trim(text);
    if (t == "true" || t == "1") {
        return true;
    }
    if (t == "false" || t == "0") {
        return false;
    }
    bad_value(key, text, "expected true or false");
}

const RawConfig &defaults(Command command) {
    static const RawConfig convergence{{"n", "16,64,256"},     {"mu", "0.75"},
                                       {"epsilon", "0.1"},     {"grid", "-1:1:3"},
                                       {"trunc", "0"},         {"blockwise", "true"},
                                       {"concentration_only", "false"},
                                       {"out", "convergence"}, {"format", "csv"},
                                       {"workers", "0"}};
    static const RawConfig discriminate{{"n", "16,64,256"},  {"mu", "1"},       {"epsilon", "0.1"},
                                        {"grid", "0:0.5:2,0:0:1"}, {"trunc", "0"}, {"out", "discriminate"},
                                        {"format", "csv"},   {"workers", "0"}};
    static const RawConfig measure_compare{{"n", "64,256,1024"}, {"mu", "0.75"},    {"epsilon", "0.1"},
                                           {"grid", "-1:1:3"},    {"quad", "100:128"},
                                           {"out", "measure-compare"}, {"format", "csv"}, {"workers", "0"}};
    static const RawConfig risk{{"mu", "0.75,0.9,1"}, {"grid", "0:0:1"},        {"quad", "96:128"},
                                {"trunc", "0"},        {"method", "quadrature"}, {"seed", "1"},
                                {"samples", "1000000"}, {"out", "risk"},         {"format", "csv"},
                                {"workers", "0"}};
    static const RawConfig plot{{"in", ""}, {"statistic", ""}, {"out", "plot.svg"}};
    switch (command) {
        case Command::convergence:
            return convergence;
        case Command::discriminate:
            return discriminate;
        case Command::measure_compare:
            return measure_compare;
        case Command::risk:
            return risk;
        case Command::plot:
            return plot;
    }
    return plot;
}

QuadratureSpec parse_quadrature(const std::string &text, QuadratureSpec base) {
    std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 2) {
        bad_value("quad", text, "expected radial:angular");
    }
    long long radial = parse_integer("quad", parts[0]);
    long long angular = parse_integer("quad", parts[1]);
    if (radial < 1 || angular < 1 || radial > 4096 || angular > 4096) {
        bad_value("quad", text, "node counts must lie in [1, 4096]");
    }
    base.radial = static_cast<std::size_t>(radial);
    base.angular = static_cast<std::size_t>(angular);
    return base;
}

}  // namespace

const char *command_name(Command command) {
    switch (command) {
        case Command::convergence:
            return "convergence";
        case Command::discriminate:
            return "discriminate";
        case Command::measure_compare:
            return "measure-compare";
        case Command::risk:
            return "risk";
        case Command::plot:
            return "plot";
    }
    return "";
}

Command parse_command(const std::string &name) {
    for (Command c : {Command::convergence, Command::discriminate, Command::measure_compare, Command::risk,
                      Command::plot}) {
        if (name == command_name(c)) {
            return c;
        }
    }
    throw ConfigError("unknown command '" + name + "'");
}

const std::vector<std::string> &command_keys(Command command) {
    static const std::vector<std::string> convergence{"n",         "mu",   "epsilon", "grid",   "trunc",
                                                      "blockwise", "concentration_only", "out", "format",
                                                      "workers"};
    static const std::vector<std::string> discriminate{"n", "mu", "epsilon", "grid", "trunc", "out", "format",
                                                       "workers"};
    static const std::vector<std::string> measure_compare{"n",   "mu",     "epsilon", "grid",
                                                          "quad", "out", "format",  "workers"};
    static const std::vector<std::string> risk{"mu",      "grid", "quad",   "trunc",  "method",
                                               "seed",    "samples", "out", "format", "workers"};
    static const std::vector<std::string> plot{"in", "statistic", "out"};
    switch (command) {
        case Command::convergence:
            return convergence;
        case Command::discriminate:
            return discriminate;
        case Command::measure_compare:
            return measure_compare;
        case Command::risk:
            return risk;
        case Command::plot:
            return plot;
    }
    return plot;
}

RawConfig parse_config_text(const std::string &text, const std::string &origin) {
    RawConfig out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '-', '_');
        if (key.empty()) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        }
        if (out.count(key)) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

RawConfig read_config_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::vector<int> parse_int_list(const std::string &key, const std::string &text) {
    std::vector<int> out;
    for (const std::string &part : split(text, ',')) {
        long long v = parse_integer(key, part);
        if (v < 1 || v > 1000000) {
            bad_value(key, text, "entries must lie in [1, 1000000]");
        }
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) {
        bad_value(key, text, "empty list");
    }
    return out;
}

std::vector<double> parse_double_list(const std::string &key, const std::string &text) {
    std::vector<double> out;
    for (const std::string &part : split(text, ',')) {
        out.push_back(parse_double(key, part));
    }
    if (out.empty()) {
        bad_value(key, text, "empty list");
    }
    return out;
}

ParamGrid parse_grid(const std::string &text) {
    auto axis = [&](const std::string &spec) {
        std::vector<std::string> parts = split(spec, ':');
        if (parts.size() != 3) {
            bad_value("grid", text, "expected min:max:steps");
        }
        GridAxis a{parse_double("grid", parts[0]), parse_double("grid", parts[1]),
                   static_cast<int>(std::clamp(parse_integer("grid", parts[2]), -1LL, 100000LL))};
        if (a.steps < 1 || a.max < a.min) {
            bad_value("grid", text, "need min <= max and steps >= 1");
        }
        if (a.steps == 1 && a.min != a.max) {
            bad_value("grid", text, "a single step needs min == max");
        }
        return a;
    };
    std::vector<std::string> axes = split(text, ',');
    if (axes.size() == 1) {
        GridAxis a = axis(axes[0]);
        return {a, a};
    }
    if (axes.size() == 2) {
        return {axis(axes[0]), axis(axes[1])};
    }
    bad_value("grid", text, "expected one or two axis specs");
}

ExperimentConfig resolve_config(Command command, const RawConfig &file, const RawConfig &overrides) {
    const std::vector<std::string> &keys = command_keys(command);
    RawConfig merged = defaults(command);
    for (const RawConfig *src : {&file, &overrides}) {
        for (const auto &[key, value] : *src) {
            if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
                throw ConfigError("unknown key '" + key + "' for command " + command_name(command));
            }
            merged[key] = value;
        }
    }

    ExperimentConfig cfg;
    cfg.command = command;
    auto has = [&](const char *key) { return merged.count(key) > 0; };
    if (has("n")) {
        cfg.n = parse_int_list("n", merged["n"]);
    }
    if (has("mu")) {
        cfg.mu = parse_double_list("mu", merged["mu"]);
        for (double mu : cfg.mu) {
            if (!(mu > 0.5 && mu <= 1.0)) {
                bad_value("mu", merged["mu"], "entries must lie in (1/2, 1]");
            }
        }
    }
    if (has("epsilon")) {
        cfg.epsilon = parse_double("epsilon", merged["epsilon"]);
        if (!(cfg.epsilon > 0 && cfg.epsilon < 0.5)) {
            bad_value("epsilon", merged["epsilon"], "must lie in (0, 1/2)");
        }
    }
    if (has("grid")) {
        cfg.grid = parse_grid(merged["grid"]);
    }
    if (has("trunc")) {
        long long t = parse_integer("trunc", merged["trunc"]);
        if (t < 0 || t > 100000) {
            bad_value("trunc", merged["trunc"], "must lie in [0, 100000]");
        }
        cfg.trunc = static_cast<int>(t);
    }
    if (has("quad")) {
        QuadratureSpec base = command == Command::risk ? RiskSpec{}.quadrature : TvOptions{}.quadrature;
        cfg.quadrature = parse_quadrature(merged["quad"], base);
    }
    if (has("seed")) {
        long long s = parse_integer("seed", merged["seed"]);
        if (s < 0) {
            bad_value("seed", merged["seed"], "must be nonnegative");
        }
        cfg.seed = static_cast<std::uint64_t>(s);
    }
    if (has("samples")) {
        long long s = parse_integer("samples", merged["samples"]);
        if (s < 2 || s > 1000000000000LL) {
            bad_value("samples", merged["samples"], "must lie in [2, 1e12]");
        }
        cfg.samples = static_cast<std::uint64_t>(s);
    }
    if (has("method")) {
        const std::string &m = merged["method"];
        if (m == "monte_carlo") {
            cfg.method = RiskSpec::Method::monte_carlo;
        } else if (m == "quadrature") {
            cfg.method = RiskSpec::Method::quadrature;
        } else {
            bad_value("method", m, "expected monte_carlo or quadrature");
        }
    }
    if (has("blockwise")) {
        cfg.blockwise = parse_bool("blockwise", merged["blockwise"]);
    }
    if (has("concentration_only")) {
        cfg.concentration_only = parse_bool("concentration_only", merged["concentration_only"]);
    }
    cfg.out = merged["out"];
    if (cfg.out.empty()) {
        bad_value("out", cfg.out, "empty output path");
    }
    if (has("format")) {
        const std::string &f = merged["format"];
        if (f == "csv") {
            cfg.format = OutputFormat::csv;
        } else if (f == "json") {
            cfg.format = OutputFormat::json;
        } else if (f == "both") {
            cfg.format = OutputFormat::both;
        } else {
            bad_value("format", f, "expected csv, json or both");
        }
    }
    if (has("workers")) {
        long long w = parse_integer("workers", merged["workers"]);
        if (w < 0 || w > 4096) {
            bad_value("workers", merged["workers"], "must lie in [0, 4096]");
        }
        cfg.workers = static_cast<unsigned>(w);
    }
    if (command == Command::plot) {
        cfg.in = merged["in"];
        cfg.statistic = merged["statistic"];
        if (cfg.in.empty()) {
            throw ConfigError("plot needs an input report (key 'in')");
        }
    }

    // Normalized echo so that equivalent spellings produce the same report.
    for (const std::string &key : keys) {
        std::string value;
        if (key == "n") {
            for (std::size_t i = 0; i < cfg.n.size(); i++) {
                value += (i ? "," : "") + std::to_string(cfg.n[i]);
            }
        } else if (key == "mu") {
            for (std::size_t i = 0; i < cfg.mu.size(); i++) {
                value += (i ? "," : "") + echo_number(cfg.mu[i]);
            }
        } else if (key == "epsilon") {
            value = echo_number(cfg.epsilon);
        } else if (key == "grid") {
            value = cfg.grid.str();
        } else if (key == "quad") {
            value = std::to_string(cfg.quadrature.radial) + ":" + std::to_string(cfg.quadrature.angular);
        } else if (key == "blockwise") {
            value = cfg.blockwise ? "true" : "false";
        } else if (key == "concentration_only") {
            value = cfg.concentration_only ? "true" : "false";
        } else {
            value = merged[key];
        }
        cfg.echo.emplace_back(key, value);
    }
    return cfg;
}

}  // namespace qlan::cli
