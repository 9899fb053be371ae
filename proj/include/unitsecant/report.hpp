#pragma once

/**
 * Report serialization.
 *
 * Machine format: one JSON object per line, keys in this order:
 *
 *   t0            number
 *   x, y, z       number | null      point A (null when A is not evaluable)
 *   verdict       "Tangent" | "Corner" | "Degenerate" | "Undetermined"
 *   dirx, diry, dirz  number | null  unit tangent direction, canonical orientation
 *   residual      number | null      |u x v| of the two side limits
 *   steps_plus    integer            probes used on the Plus side
 *   steps_minus   integer            probes used on the Minus side
 *   note          string
 *
 * Numbers are written in shortest round-trip form, so reading a line back is lossless.
 * "Undetermined" is a numerical verdict: no stable limit was observed, which is not a proof of
 * non-existence.
 */

#include <optional>
#include <string>
#include <string_view>

#include "unitsecant/oracle.hpp"
#include "unitsecant/tangent.hpp"

namespace unitsecant {

struct MachineRecord {
    double t0 = 0.0;
    std::optional<double> x, y, z;
    std::string verdict;
    std::optional<double> dirx, diry, dirz;
    std::optional<double> residual;
    int steps_plus = 0;
    int steps_minus = 0;
    std::string note;

    bool operator==(const MachineRecord&) const = default;
};

MachineRecord to_machine_record(const TangentReport& report);

/// Single line, no trailing newline.
std::string format_machine(const MachineRecord& record);

/// Throws Error on malformed input.
MachineRecord parse_machine(std::string_view line);

/// Multi-line human-readable block.
std::string format_human(const TangentReport& report);

/// Header and one row per report.
std::string format_human_table(const std::vector<TangentReport>& reports);

/// {"case", "pass", "expected", "verdict", "direction_residual", "side_residual", "diagnostics"}
std::string format_oracle_machine(const CorpusCase& c, const OracleResult& result);

std::string format_vec(const Vec3& v);

}  // namespace unitsecant
