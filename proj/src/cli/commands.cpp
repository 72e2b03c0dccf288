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

#include "qlan/cli/commands.hpp"

#include <ostream>

#include "qlan/cli/plot.hpp"

namespace qlan::cli {

namespace {

void add(RiskReport &report, std::optional<int> n, double mu, std::optional<LocalParam> u, const char *statistic,
         double value, double error_bound) {
    report.rows.push_back({n, mu, u, statistic, value, error_bound});
}

void convergence_rows(const ExperimentConfig &cfg, RiskReport &report) {
    SweepOptions opts;
    opts.concentration_only = cfg.concentration_only;
    opts.blockwise = cfg.blockwise;
    opts.fock_dim = cfg.trunc;
    opts.workers = cfg.workers;
    bool many = cfg.grid.points().size() > 1;
    for (double mu : cfg.mu) {
        for (int n : cfg.n) {
            ConvergenceRecord rec = convergence_sweep(mu, cfg.epsilon, cfg.grid, {n}, opts).front();
            for (const PointDistances &p : rec.points) {
                add(report, n, mu, p.u, "forward", p.forward, p.truncation_tail + rec.excluded_weight);
                add(report, n, mu, p.u, "reverse", p.reverse, p.truncation_tail);
                if (cfg.blockwise) {
                    add(report, n, mu, p.u, "forward_blockwise_max", p.blockwise, p.truncation_tail);
                }
            }
            if (many) {
                add(report, n, mu, rec.forward_argmax, "forward_sup", rec.forward_sup,
                    rec.truncation_bound + rec.excluded_weight);
                add(report, n, mu, rec.reverse_argmax, "reverse_sup", rec.reverse_sup, rec.truncation_bound);
                if (cfg.blockwise) {
                    add(report, n, mu, rec.blockwise_argmax, "forward_blockwise_sup", rec.blockwise_sup,
                        rec.truncation_bound);
                }
            }
            add(report, n, mu, std::nullopt, "concentration_deficit", rec.concentration_deficit, 0);
        }
    }
}

void discriminate_rows(const ExperimentConfig &cfg, RiskReport &report) {
    std::vector<LocalParam> points = cfg.grid.points();
    for (double mu : cfg.mu) {
        for (const LocalParam &u : points) {
            int dim = cfg.trunc > 0 ? cfg.trunc : truncation_dimension(mu, u.norm());
            FockOperator plus = displaced_thermal(u, mu, {dim, 0});
            FockOperator minus = displaced_thermal(-u, mu, {dim, 0});
            // Renormalize the truncated states; the removed tails bound the change in risk.
            double tail = plus.trunc.tail_bound + minus.trunc.tail_bound;
            BinaryTestResult lim = helstrom_risk(HermitianMatrix(plus.matrix / plus.matrix.trace().real()),
                                                 HermitianMatrix(minus.matrix / minus.matrix.trace().real()));
            add(report, std::nullopt, mu, u, "limit_risk", lim.risk, tail);
            if (mu == 1.0) {
                add(report, std::nullopt, mu, u, "coherent_limit", discrimination_limit(u), 0);
                add(report, std::nullopt, mu, u, "erf_baseline", position_measurement_risk(u), 0);
            }
            for (int n : cfg.n) {
                ModelParams params{n, mu, cfg.epsilon};
                params.validate();
                BinaryTestResult r = finite_n_discrimination(params, u, cfg.workers);
                add(report, n, mu, u, "helstrom_risk", r.risk, 0);
            }
        }
    }
}

void measure_compare_rows(const ExperimentConfig &cfg, RiskReport &report) {
    TvOptions opts;
    opts.quadrature = cfg.quadrature;
    opts.workers = cfg.workers;
    for (double mu : cfg.mu) {
        for (int n : cfg.n) {
            ModelParams params{n, mu, cfg.epsilon};
            params.validate();
            for (const LocalParam &u : cfg.grid.points()) {
                TvResult r = measurement_tv_distance(params, u, opts);
                add(report, n, mu, u, "tv_distance", r.value, r.error_bound);
                add(report, n, mu, u, "covariant_mass", r.covariant_mass, 0);
                add(report, n, mu, u, "heterodyne_mass", r.heterodyne_mass, 0);
                add(report, n, mu, u, "out_of_grid_mass", r.out_of_grid, 0);
                add(report, n, mu, u, "concentration_deficit", r.concentration_deficit, 0);
            }
        }
    }
}

void risk_rows(const ExperimentConfig &cfg, RiskReport &report) {
    RiskSpec spec;
    spec.method = cfg.method;
    spec.quadrature = cfg.quadrature;
    spec.seed = cfg.seed;
    spec.samples = cfg.samples;
    spec.fock_dim = cfg.trunc;
    spec.workers = cfg.workers;
    for (double mu : cfg.mu) {
        for (const LocalParam &u : cfg.grid.points()) {
            RiskEstimate est = heterodyne_estimation_risk(mu, spec, u);
            add(report, std::nullopt, mu, u, "heterodyne_risk", est.value, est.error_bound);
            add(report, std::nullopt, mu, u, "reference_risk_derived", mu / ((2 * mu - 1) * (2 * mu - 1)), 0);
        }
    }
}

std::string with_extension(const std::string &out, const std::string &ext) {
    for (const char *known : {".csv", ".json"}) {
        std::string k = known;
        if (out.size() > k.size() && out.compare(out.size() - k.size(), k.size(), k) == 0) {
            return out.substr(0, out.size() - k.size()) + ext;
        }
    }
    return out + ext;
}

bool ends_with(const std::string &s, const std::string &suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

RiskReport new_report(const ExperimentConfig &cfg) {
    RiskReport report;
    report.command = command_name(cfg.command);
    report.version = kVersion;
    report.config = cfg.echo;
    report.id = experiment_id(report.command, cfg.echo);
    if (cfg.command == Command::risk) {
        report.seed = cfg.seed;
    }
    return report;
}

void run_into(const ExperimentConfig &cfg, RiskReport &report) {
    switch (cfg.command) {
        case Command::convergence:
            convergence_rows(cfg, report);
            break;
        case Command::discriminate:
            discriminate_rows(cfg, report);
            break;
        case Command::measure_compare:
            measure_compare_rows(cfg, report);
            break;
        case Command::risk:
            risk_rows(cfg, report);
            break;
        case Command::plot:
            throw ConfigError("plot does not produce a report");
    }
}

namespace {

RiskReport run_checked(const ExperimentConfig &cfg, Command expected) {
    if (cfg.command != expected) {
        throw ConfigError(std::string("config is for command ") + command_name(cfg.command) + ", not " +
                          command_name(expected));
    }
    RiskReport report = new_report(cfg);
    run_into(cfg, report);
    return report;
}

}  // namespace

RiskReport run_convergence(const ExperimentConfig &cfg) {
    return run_checked(cfg, Command::convergence);
}

RiskReport run_discriminate(const ExperimentConfig &cfg) {
    return run_checked(cfg, Command::discriminate);
}

RiskReport run_measure_compare(const ExperimentConfig &cfg) {
    return run_checked(cfg, Command::measure_compare);
}

RiskReport run_risk(const ExperimentConfig &cfg) {
    return run_checked(cfg, Command::risk);
}

int exit_code(const std::exception &e) {
    if (dynamic_cast<const ConfigError *>(&e) || dynamic_cast<const DomainError *>(&e) ||
        dynamic_cast<const SelectionError *>(&e)) {
        return 2;
    }
    if (dynamic_cast<const IoError *>(&e)) {
        return 4;
    }
    return 3;
}

const char *error_kind(const std::exception &e) {
    if (auto *q = dynamic_cast<const Error *>(&e)) {
        return q->kind();
    }
    return "internal";
}

std::string error_line(int code, const std::string &kind, const std::string &message) {
    std::string escaped;
    for (char c : message) {
        if (c == '"' || c == '\\') {
            escaped += '\\';
            escaped += c;
        } else if (c == '\n' || c == '\r') {
            escaped += ' ';
        } else {
            escaped += c;
        }
    }
    return "error: code=" + std::to_string(code) + " kind=" + kind + " message=\"" + escaped + "\"";
}

std::vector<std::string> output_paths(const ExperimentConfig &cfg) {
    if (cfg.command == Command::plot) {
        return {cfg.out};
    }
    switch (cfg.format) {
        case OutputFormat::csv:
            return {with_extension(cfg.out, ".csv")};
        case OutputFormat::json:
            return {with_extension(cfg.out, ".json")};
        case OutputFormat::both:
            return {with_extension(cfg.out, ".csv"), with_extension(cfg.out, ".json")};
    }
    return {};
}

int execute(const ExperimentConfig &cfg, std::ostream &err) {
    if (cfg.command == Command::plot) {
        try {
            std::string text = read_file(cfg.in);
            RiskReport report = ends_with(cfg.in, ".json") ? parse_json(text) : parse_csv(text);
            write_file(cfg.out, emit_plot(report, cfg.statistic));
            return 0;
        } catch (const std::exception &e) {
            int code = exit_code(e);
            err << error_line(code, error_kind(e), e.what()) << "\n";
            return code;
        }
    }

    RiskReport report = new_report(cfg);
    int code = 0;
    std::string failure;
    try {
        run_into(cfg, report);
    } catch (const std::exception &e) {
        code = exit_code(e);
        report.status = "partial";
        report.message = e.what();
        failure = error_line(code, error_kind(e), e.what());
    }
    try {
        for (const std::string &path : output_paths(cfg)) {
            write_file(path, ends_with(path, ".json") ? to_json(report) : to_csv(report));
        }
    } catch (const std::exception &e) {
        if (code == 0) {
            code = exit_code(e);
            failure = error_line(code, error_kind(e), e.what());
        }
    }
    if (code != 0) {
        err << failure << "\n";
    }
    return code;
}

}  // namespace qlan::cli
