#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unitsecant/tangent.hpp"

namespace unitsecant {

/// A curve and parameter whose tangent behaviour is known analytically.
struct CorpusCase {
    std::string name;
    std::string literal;  // curve literal, same syntax as the CLI
    Curve curve;
    double t0 = 0.0;
    Verdict expected_verdict = Verdict::Undetermined;
    std::optional<Vec3> expected_direction;  // unit, canonical orientation
    std::string provenance;
};

CorpusCase make_case(std::string name, std::string literal, double t0, Verdict expected,
                     std::optional<Vec3> expected_direction, std::string provenance);

std::vector<CorpusCase> builtin_corpus();

struct OracleResult {
    std::string name;
    bool pass = false;
    TangentReport report;
    std::optional<double> direction_residual;  // |expected x actual| when both exist
    std::string diagnostics;
};

/// Classifies the case and compares verdict and (for tangents) direction within 10 * collinear_tol.
OracleResult run_oracle(const CorpusCase& c, const LimitConfig& cfg = {},
                        double collinear_tol = kDefaultCollinearTol);

/// One JSON object per line:
///   {"name", "curve", "t0", "expected_verdict", "expected_direction": [x,y,z] | null, "provenance"}
std::string corpus_to_jsonl(const std::vector<CorpusCase>& corpus);
std::vector<CorpusCase> corpus_from_jsonl(std::string_view text);

}  // namespace unitsecant
