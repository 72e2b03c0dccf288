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

#include "qlan/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qlan/cli/config.hpp"

namespace qlan::cli {

namespace {

constexpr const char *kHeader = "n,mu,u_x,u_y,statistic,value,error_bound";

std::string one_line(std::string s) {
    for (char &c : s) {
        if (c == '\n' || c == '\r') {
            c = ' ';
        }
    }
    return s;
}

double parse_field(const std::string &field, int lineno) {
    double v = 0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size()) {
        throw ValidationError("report line " + std::to_string(lineno) + ": bad number '" + field + "'");
    }
    return v;
}

}  // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string experiment_id(const std::string &command, const std::vector<std::pair<std::string, std::string>> &config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](const std::string &s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        h ^= 0xff;
        h *= 0x100000001b3ULL;
    };
    mix(command);
    for (const auto &[k, v] : config) {
        mix(k);
        mix(v);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string to_csv(const RiskReport &report) {
    std::ostringstream out;
    out << "# id=" << report.id << "\n";
    out << "# version=" << report.version << "\n";
    out << "# command=" << report.command << "\n";
    out << "# seed=" << (report.seed ? std::to_string(*report.seed) : "") << "\n";
    out << "# status=" << report.status << "\n";
    if (!report.message.empty()) {
        out << "# message=" << one_line(report.message) << "\n";
    }
    for (const auto &[k, v] : report.config) {
        out << "# config." << k << "=" << v << "\n";
    }
    out << kHeader << "\n";
    for (const ReportRow &r : report.rows) {
        out << (r.n ? std::to_string(*r.n) : "") << ',';
        out << (r.mu ? format_number(*r.mu) : "") << ',';
        if (r.u) {
            out << format_number(r.u->x) << ',' << format_number(r.u->y) << ',';
        } else {
            out << ",,";
        }
        out << r.statistic << ',' << format_number(r.value) << ',' << format_number(r.error_bound) << "\n";
    }
    return out.str();
}

std::string to_json(const RiskReport &report) {
    nlohmann::ordered_json j;
    j["id"] = report.id;
    j["version"] = report.version;
    j["command"] = report.command;
    j["seed"] = report.seed ? nlohmann::ordered_json(*report.seed) : nlohmann::ordered_json(nullptr);
    j["status"] = report.status;
    if (!report.message.empty()) {
        j["message"] = report.message;
    }
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto &[k, v] : report.config) {
        cfg[k] = v;
    }
    j["config"] = cfg;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ReportRow &r : report.rows) {
        nlohmann::ordered_json row;
        row["n"] = r.n ? nlohmann::ordered_json(*r.n) : nlohmann::ordered_json(nullptr);
        row["mu"] = r.mu ? nlohmann::ordered_json(*r.mu) : nlohmann::ordered_json(nullptr);
        row["u_x"] = r.u ? nlohmann::ordered_json(r.u->x) : nlohmann::ordered_json(nullptr);
        row["u_y"] = r.u ? nlohmann::ordered_json(r.u->y) : nlohmann::ordered_json(nullptr);
        row["statistic"] = r.statistic;
        row["value"] = r.value;
        row["error_bound"] = r.error_bound;
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

RiskReport parse_csv(const std::string &text) {
    RiskReport report;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            auto eq = line.find('=');
            if (eq == std::string::npos || line.size() < 2) {
                continue;
            }
            std::string key = line.substr(2, eq - 2);
            std::string value = line.substr(eq + 1);
            if (key == "id") {
                report.id = value;
            } else if (key == "version") {
                report.version = value;
            } else if (key == "command") {
                report.command = value;
            } else if (key == "seed") {
                if (!value.empty()) {
                    report.seed = std::stoull(value);
                }
            } else if (key == "status") {
                report.status = value;
            } else if (key == "message") {
                report.message = value;
            } else if (key.rfind("config.", 0) == 0) {
                report.config.emplace_back(key.substr(7), value);
            }
            continue;
        }
        if (!header) {
            if (line != kHeader) {
                throw ValidationError("report line " + std::to_string(lineno) + ": expected header '" + kHeader + "'");
            }
            header = true;
            continue;
        }
        std::vector<std::string> f;
        std::string cur;
        std::istringstream fields(line);
        while (std::getline(fields, cur, ',')) {
            f.push_back(cur);
        }
        if (line.back() == ',') {
            f.push_back("");
        }
        if (f.size() != 7) {
            throw ValidationError("report line " + std::to_string(lineno) + ": expected 7 fields");
        }
        ReportRow r;
        if (!f[0].empty()) {
            r.n = static_cast<int>(parse_field(f[0], lineno));
        }
        if (!f[1].empty()) {
            r.mu = parse_field(f[1], lineno);
        }
        if (!f[2].empty() || !f[3].empty()) {
            r.u = LocalParam{parse_field(f[2], lineno), parse_field(f[3], lineno)};
        }
        r.statistic = f[4];
        r.value = parse_field(f[5], lineno);
        r.error_bound = parse_field(f[6], lineno);
        report.rows.push_back(r);
    }
    if (!header) {
        throw ValidationError("report has no header line");
    }
    return report;
}

RiskReport parse_json(const std::string &text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("report is not valid JSON: ") + e.what());
    }
    RiskReport report;
    try {
        report.id = j.at("id").get<std::string>();
        report.version = j.at("version").get<std::string>();
        report.command = j.at("command").get<std::string>();
        if (!j.at("seed").is_null()) {
            report.seed = j.at("seed").get<std::uint64_t>();
        }
        report.status = j.at("status").get<std::string>();
        if (j.contains("message")) {
            report.message = j.at("message").get<std::string>();
        }
        for (const auto &row : j.at("rows")) {
            ReportRow r;
            if (!row.at("n").is_null()) {
                r.n = row.at("n").get<int>();
            }
            if (!row.at("mu").is_null()) {
                r.mu = row.at("mu").get<double>();
            }
            if (!row.at("u_x").is_null()) {
                r.u = LocalParam{row.at("u_x").get<double>(), row.at("u_y").get<double>()};
            }
            r.statistic = row.at("statistic").get<std::string>();
            r.value = row.at("value").get<double>();
            r.error_bound = row.at("error_bound").get<double>();
            report.rows.push_back(r);
        }
        for (const auto &[k, v] : j.at("config").items()) {
            report.config.emplace_back(k, v.get<std::string>());
        }
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("report JSON has an unexpected layout: ") + e.what());
    }
    return report;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write '" + path + "'");
        }
        out << content;
        out.flush();
        if (!out) {
            throw IoError("write to '" + path + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into '" + path + "'");
    }
}

}  // namespace qlan::cli
