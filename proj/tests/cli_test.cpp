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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "qlan/cli/commands.hpp"
#include "qlan/cli/config.hpp"
#include "qlan/cli/plot.hpp"
#include "qlan/cli/report.hpp"

using namespace qlan;
using namespace qlan::cli;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / ("qlan_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

ExperimentConfig resolve(Command command, const RawConfig &overrides) {
    return resolve_config(command, {}, overrides);
}

std::vector<ReportRow> rows_named(const RiskReport &report, const std::string &statistic) {
    std::vector<ReportRow> out;
    for (const ReportRow &row : report.rows) {
        if (row.statistic == statistic) {
            out.push_back(row);
        }
    }
    return out;
}

void expect_same_rows(const RiskReport &a, const RiskReport &b) {
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); i++) {
        EXPECT_EQ(a.rows[i].n, b.rows[i].n);
        EXPECT_EQ(a.rows[i].mu, b.rows[i].mu);
        EXPECT_EQ(a.rows[i].u.has_value(), b.rows[i].u.has_value());
        if (a.rows[i].u && b.rows[i].u) {
            EXPECT_EQ(*a.rows[i].u, *b.rows[i].u);
        }
        EXPECT_EQ(a.rows[i].statistic, b.rows[i].statistic);
        EXPECT_EQ(a.rows[i].value, b.rows[i].value);
        EXPECT_EQ(a.rows[i].error_bound, b.rows[i].error_bound);
    }
}

int run_binary(const std::string &args, const fs::path &stderr_path) {
    std::string command = std::string(QLAN_CLI_PATH) + " " + args + " >/dev/null 2>" + stderr_path.string();
    int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, ParsesFlatKeyValueText) {
    RawConfig raw = parse_config_text("# comment\nn = 16,64\n\nmu=0.8  # trailing\nconcentration-only = true\n", "t");
    EXPECT_EQ(raw.at("n"), "16,64");
    EXPECT_EQ(raw.at("mu"), "0.8");
    EXPECT_EQ(raw.at("concentration_only"), "true");
    EXPECT_THROW(parse_config_text("n=1\nn=2\n", "t"), ConfigError);
    EXPECT_THROW(parse_config_text("just words\n", "t"), ConfigError);
}

TEST(Config, PrecedenceIsOverridesThenFileThenDefaults) {
    ExperimentConfig defaults = resolve_config(Command::convergence, {}, {});
    EXPECT_EQ(defaults.n, (std::vector<int>{16, 64, 256}));
    EXPECT_EQ(defaults.mu, (std::vector<double>{0.75}));

    ExperimentConfig from_file = resolve_config(Command::convergence, {{"n", "8"}, {"mu", "0.9"}}, {});
    EXPECT_EQ(from_file.n, (std::vector<int>{8}));
    EXPECT_EQ(from_file.mu, (std::vector<double>{0.9}));

    ExperimentConfig both = resolve_config(Command::convergence, {{"n", "8"}, {"mu", "0.9"}}, {{"mu", "0.6"}});
    EXPECT_EQ(both.n, (std::vector<int>{8}));
    EXPECT_EQ(both.mu, (std::vector<double>{0.6}));

    bool echoed = false;
    for (const auto &[key, value] : both.echo) {
        if (key == "mu") {
            EXPECT_EQ(value, "0.6");
            echoed = true;
        }
    }
    EXPECT_TRUE(echoed);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(resolve(Command::convergence, {{"colour", "red"}}), ConfigError);
    EXPECT_THROW(resolve(Command::discriminate, {{"samples", "10"}}), ConfigError);
    EXPECT_THROW(resolve(Command::convergence, {{"n", "16,x"}}), ConfigError);
    EXPECT_THROW(resolve(Command::risk, {{"method", "guess"}}), ConfigError);
    EXPECT_THROW(resolve(Command::convergence, {{"grid", "1:0"}}), ConfigError);
    EXPECT_THROW(parse_command("tomography"), ConfigError);
    EXPECT_EQ(parse_command("measure-compare"), Command::measure_compare);
}

TEST(Config, GridSpec) {
    ParamGrid one = parse_grid("-1:1:3");
    EXPECT_EQ(one.points().size(), 9u);
    ParamGrid two = parse_grid("0:0.5:2,0:0:1");
    std::vector<LocalParam> pts = two.points();
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[1].x, 0.5);
    EXPECT_EQ(pts[1].y, 0);
}

TEST(Report, CsvAndJsonCarryTheSameNumbers) {
    RiskReport report;
    report.id = "0123456789abcdef";
    report.version = kVersion;
    report.command = "risk";
    report.seed = 42;
    report.config = {{"mu", "0.75"}, {"grid", "0:0:1"}};
    report.rows.push_back({std::nullopt, 0.75, LocalParam{0.1, -1.0 / 3}, "heterodyne_risk", 2.0 / 3, 1e-17});
    report.rows.push_back({16, 0.75, std::nullopt, "concentration_deficit", 5.551115123125783e-17, 0});
    report.rows.push_back({64, std::nullopt, LocalParam{}, "x", M_PI, 0});

    std::string csv = to_csv(report);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    EXPECT_NE(csv.find("n,mu,u_x,u_y,statistic,value,error_bound\n"), std::string::npos);
    RiskReport from_csv = parse_csv(csv);
    RiskReport from_json = parse_json(to_json(report));
    expect_same_rows(report, from_csv);
    expect_same_rows(report, from_json);
    EXPECT_EQ(from_csv.seed, report.seed);
    EXPECT_EQ(from_json.seed, report.seed);
    EXPECT_EQ(from_csv.config, report.config);
    EXPECT_EQ(from_json.config, report.config);
    EXPECT_EQ(from_csv.id, report.id);
    EXPECT_EQ(from_json.version, report.version);
    EXPECT_EQ(to_csv(from_json), csv);
}

TEST(Report, NumbersRoundTrip) {
    for (double v : {0.1, 1.0 / 3, 1e-300, 123456789.123456789, -2.5e-8}) {
        EXPECT_EQ(std::stod(format_number(v)), v);
    }
}

TEST(Report, ExperimentIdDependsOnConfig) {
    std::string a = experiment_id("risk", {{"mu", "0.75"}});
    EXPECT_EQ(a.size(), 16u);
    EXPECT_EQ(a, experiment_id("risk", {{"mu", "0.75"}}));
    EXPECT_NE(a, experiment_id("risk", {{"mu", "0.9"}}));
    EXPECT_NE(a, experiment_id("convergence", {{"mu", "0.75"}}));
}

TEST(Commands, MinimalConvergenceConfig) {
    ExperimentConfig cfg = resolve(Command::convergence, {{"n", "16"}, {"mu", "0.75"}, {"grid", "0:0:1"}});
    RiskReport report = run_convergence(cfg);
    for (const char *statistic : {"forward", "reverse", "forward_blockwise_max", "concentration_deficit"}) {
        EXPECT_EQ(rows_named(report, statistic).size(), 1u) << statistic;
    }
    EXPECT_TRUE(rows_named(report, "forward_sup").empty());
    for (const ReportRow &row : report.rows) {
        EXPECT_EQ(row.n, 16);
        EXPECT_GE(row.error_bound, 0);
    }
    EXPECT_THROW(run_risk(cfg), ConfigError);
}

TEST(Commands, ConvergenceSupDecreasesAlongN) {
    ExperimentConfig cfg = resolve(Command::convergence, {{"grid", "-1:1:2"}, {"workers", "2"}});
    std::vector<ReportRow> sups = rows_named(run_convergence(cfg), "forward_sup");
    ASSERT_EQ(sups.size(), 3u);
    EXPECT_GT(sups[0].value, sups[1].value);
    EXPECT_GT(sups[1].value, sups[2].value);
}

TEST(Commands, DiscriminateValues) {
    ExperimentConfig cfg = resolve(Command::discriminate, {{"n", "16,64"}});
    RiskReport report = run_discriminate(cfg);
    for (const ReportRow &row : rows_named(report, "helstrom_risk")) {
        if (row.u->norm() == 0) {
            EXPECT_NEAR(row.value, 0.5, 1e-15);
        }
    }
    bool checked = false;
    for (const ReportRow &row : rows_named(report, "coherent_limit")) {
        if (row.u->norm() == 0.5) {
            EXPECT_NEAR(row.value, 0.10246995118967495, 1e-15);
            checked = true;
        }
    }
    for (const ReportRow &row : rows_named(report, "erf_baseline")) {
        if (row.u->norm() == 0.5) {
            EXPECT_NEAR(row.value, 0.23975006109347674, 1e-15);
        }
    }
    for (const ReportRow &row : rows_named(report, "limit_risk")) {
        EXPECT_NEAR(row.value, 0.5 * (1 - std::sqrt(1 - std::exp(-4 * row.u->norm() * row.u->norm()))), 1e-6);
    }
    EXPECT_TRUE(checked);
}

TEST(Commands, RiskValuesAndSeedEcho) {
    ExperimentConfig cfg = resolve(Command::risk, {{"seed", "5"}});
    RiskReport report = run_risk(cfg);
    EXPECT_EQ(report.seed, 5u);
    std::vector<ReportRow> risks = rows_named(report, "heterodyne_risk");
    std::vector<ReportRow> refs = rows_named(report, "reference_risk_derived");
    ASSERT_EQ(risks.size(), 3u);
    ASSERT_EQ(refs.size(), 3u);
    for (std::size_t i = 0; i < risks.size(); i++) {
        EXPECT_NEAR(risks[i].value, refs[i].value, 0.01 * refs[i].value);
    }
    EXPECT_NEAR(refs[0].value, 3.0, 1e-15);
    EXPECT_NEAR(risks[2].value, 1.0, 1e-3);
}

TEST(Commands, MonteCarloSeedsAgreeWithinErrors) {
    ExperimentConfig a = resolve(Command::risk, {{"method", "monte_carlo"}, {"mu", "0.75"}, {"samples", "200000"}});
    ExperimentConfig b = resolve(Command::risk,
                                 {{"method", "monte_carlo"}, {"mu", "0.75"}, {"samples", "200000"}, {"seed", "99"}});
    ReportRow ra = rows_named(run_risk(a), "heterodyne_risk").front();
    ReportRow rb = rows_named(run_risk(b), "heterodyne_risk").front();
    EXPECT_NE(ra.value, rb.value);
    EXPECT_LE(std::abs(ra.value - rb.value), ra.error_bound + rb.error_bound);
    EXPECT_EQ(ra.value, rows_named(run_risk(a), "heterodyne_risk").front().value);
}

TEST(Commands, ExecuteWritesBothFormats) {
    fs::path dir = scratch_dir();
    ExperimentConfig cfg = resolve(Command::discriminate, {{"n", "4"},
                                                           {"grid", "0:0.5:2,0:0:1"},
                                                           {"format", "both"},
                                                           {"out", (dir / "disc").string()}});
    std::ostringstream err;
    ASSERT_EQ(execute(cfg, err), 0) << err.str();
    RiskReport csv = parse_csv(read_file((dir / "disc.csv").string()));
    RiskReport json = parse_json(read_file((dir / "disc.json").string()));
    expect_same_rows(csv, json);
    EXPECT_EQ(csv.status, "ok");
    EXPECT_FALSE(csv.rows.empty());
    fs::remove_all(dir);
}

TEST(Commands, ErrorLinesAndExitCodes) {
    EXPECT_EQ(error_line(2, "config", "bad \"mu\"\nvalue"), "error: code=2 kind=config message=\"bad \\\"mu\\\" value\"");
    EXPECT_EQ(exit_code(ConfigError("x")), 2);
    EXPECT_EQ(exit_code(DomainError("x")), 2);
    EXPECT_EQ(exit_code(SelectionError("x")), 2);
    EXPECT_EQ(exit_code(AccuracyError("x")), 3);
    EXPECT_EQ(exit_code(TruncationError("x")), 3);
    EXPECT_EQ(exit_code(IoError("x")), 4);
    EXPECT_STREQ(error_kind(std::runtime_error("x")), "internal");

    ExperimentConfig cfg = resolve(Command::risk, {{"out", "/nonexistent-dir/sub/report"}, {"mu", "1"}});
    std::ostringstream err;
    EXPECT_EQ(execute(cfg, err), 4);
    EXPECT_EQ(err.str().rfind("error: code=4 kind=io message=\"", 0), 0u) << err.str();
}

TEST(Commands, AccuracyFailureFlagsPartialReport) {
    fs::path dir = scratch_dir();
    ExperimentConfig cfg = resolve(Command::measure_compare, {{"n", "64,4"},
                                                              {"grid", "0:0:1"},
                                                              {"quad", "20:16"},
                                                              {"out", (dir / "mc").string()}});
    std::ostringstream err;
    EXPECT_EQ(execute(cfg, err), 3);
    EXPECT_EQ(err.str().rfind("error: code=3 kind=accuracy", 0), 0u) << err.str();
    RiskReport partial = parse_csv(read_file((dir / "mc.csv").string()));
    EXPECT_EQ(partial.status, "partial");
    EXPECT_FALSE(partial.message.empty());
    EXPECT_EQ(rows_named(partial, "tv_distance").size(), 1u);
    fs::remove_all(dir);
}

TEST(Plot, DeterministicAndSelective) {
    ExperimentConfig cfg = resolve(Command::discriminate, {{"n", "4,8,16"}, {"grid", "0:0.5:2,0:0:1"}});
    RiskReport report = run_discriminate(cfg);
    std::string a = emit_plot(report, "helstrom_risk");
    std::string b = emit_plot(parse_csv(to_csv(report)), "helstrom_risk");
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.rfind("<svg", 0), 0u);
    std::size_t lines = 0;
    for (std::size_t at = a.find("<polyline"); at != std::string::npos; at = a.find("<polyline", at + 1)) {
        lines++;
    }
    EXPECT_EQ(lines, 2u);
    EXPECT_THROW(emit_plot(report, "no_such_statistic"), SelectionError);
    EXPECT_THROW(emit_plot(RiskReport{}, ""), SelectionError);
}

TEST(Binary, ExitCodes) {
    fs::path dir = scratch_dir();
    fs::path err = dir / "stderr.txt";
    EXPECT_EQ(run_binary("--version", err), 0);
    EXPECT_EQ(run_binary("risk --no-such-flag 1", err), 2);
    EXPECT_EQ(run_binary("risk --mu 0.3 --out " + (dir / "r").string(), err), 2);
    std::string line = read_file(err.string());
    EXPECT_EQ(line.rfind("error: code=2 kind=config message=\"", 0), 0u) << line;
    EXPECT_EQ(std::count(line.begin(), line.end(), '\n'), 1);
    EXPECT_EQ(run_binary("plot --in " + (dir / "missing.csv").string() + " --out " + (dir / "p.svg").string(), err),
              4);
    fs::remove_all(dir);
}
