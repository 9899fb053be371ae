#include "unitsecant/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace unitsecant {

namespace {

using ordered_json = nlohmann::ordered_json;

std::optional<double> finite_or_null(double v) {
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

ordered_json to_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

std::optional<double> optional_number(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

std::string format_vec(const Vec3& v) {
    return "(" + short_number(v.x) + ", " + short_number(v.y) + ", " + short_number(v.z) + ")";
}

MachineRecord to_machine_record(const TangentReport& report) {
    MachineRecord r;
    r.t0 = report.t0;
    r.x = finite_or_null(report.point.x);
    r.y = finite_or_null(report.point.y);
    r.z = finite_or_null(report.point.z);
    r.verdict = std::string(to_string(report.verdict));
    if (report.direction) {
        r.dirx = report.direction->x;
        r.diry = report.direction->y;
        r.dirz = report.direction->z;
    }
    r.residual = report.collinearity_residual;
    r.steps_plus = steps_used(report.side_limits.plus);
    r.steps_minus = steps_used(report.side_limits.minus);
    r.note = report.notes;
    return r;
}

std::string format_machine(const MachineRecord& record) {
    ordered_json j;
    j["t0"] = record.t0;
    j["x"] = to_json(record.x);
    j["y"] = to_json(record.y);
    j["z"] = to_json(record.z);
    j["verdict"] = record.verdict;
    j["dirx"] = to_json(record.dirx);
    j["diry"] = to_json(record.diry);
    j["dirz"] = to_json(record.dirz);
    j["residual"] = to_json(record.residual);
    j["steps_plus"] = record.steps_plus;
    j["steps_minus"] = record.steps_minus;
    j["note"] = record.note;
    return j.dump();
}

MachineRecord parse_machine(std::string_view line) {
    try {
        const auto j = nlohmann::json::parse(line);
        MachineRecord r;
        r.t0 = j.at("t0").get<double>();
        r.x = optional_number(j, "x");
        r.y = optional_number(j, "y");
        r.z = optional_number(j, "z");
        r.verdict = j.at("verdict").get<std::string>();
        if (!parse_verdict(r.verdict)) throw Error("unknown verdict '" + r.verdict + "'");
        r.dirx = optional_number(j, "dirx");
        r.diry = optional_number(j, "diry");
        r.dirz = optional_number(j, "dirz");
        r.residual = optional_number(j, "residual");
        r.steps_plus = j.at("steps_plus").get<int>();
        r.steps_minus = j.at("steps_minus").get<int>();
        r.note = j.at("note").get<std::string>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed machine record: ") + e.what());
    }
}

std::string format_human(const TangentReport& report) {
    std::ostringstream out;
    out << "t0:        " << short_number(report.t0) << '\n';
    out << "point:     " << format_vec(report.point) << '\n';
    out << "verdict:   " << to_string(report.verdict) << '\n';
    if (report.direction) out << "direction: " << format_vec(*report.direction) << '\n';
    if (report.collinearity_residual) {
        out << "residual:  " << short_number(*report.collinearity_residual) << '\n';
    }
    out << "minus:     " << describe(report.side_limits.minus) << '\n';
    out << "plus:      " << describe(report.side_limits.plus) << '\n';
    out << "note:      " << report.notes << '\n';
    return out.str();
}

std::string format_human_table(const std::vector<TangentReport>& reports) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-14s %-14s %-14s %-14s %-13s %s\n", "t0", "x", "y", "z",
                  "verdict", "direction");
    out += line;
    for (const TangentReport& r : reports) {
        std::snprintf(line, sizeof line, "%-14.8g %-14.8g %-14.8g %-14.8g %-13s ", r.t0, r.point.x,
                      r.point.y, r.point.z, std::string(to_string(r.verdict)).c_str());
        out += line;
        out += r.direction ? format_vec(*r.direction) : std::string("-");
        out += '\n';
    }
    return out;
}

std::string format_oracle_machine(const CorpusCase& c, const OracleResult& result) {
    ordered_json j;
    j["case"] = c.name;
    j["pass"] = result.pass;
    j["expected"] = to_string(c.expected_verdict);
    j["verdict"] = to_string(result.report.verdict);
    j["direction_residual"] = to_json(result.direction_residual);
    j["side_residual"] = to_json(result.report.collinearity_residual);
    j["diagnostics"] = result.diagnostics;
    return j.dump();
}

}  // namespace unitsecant
