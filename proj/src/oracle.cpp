#include "unitsecant/oracle.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace unitsecant {

CorpusCase make_case(std::string name, std::string literal, double t0, Verdict expected,
                     std::optional<Vec3> expected_direction, std::string provenance) {
    Curve curve = Curve::parse(literal);
    if (expected_direction) expected_direction = canonical_orientation(normalized(*expected_direction));
    return {std::move(name), std::move(literal), std::move(curve), t0, expected,
            expected_direction, std::move(provenance)};
}

namespace {

std::string short_number(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

}  // namespace

std::vector<CorpusCase> builtin_corpus() {
    std::vector<CorpusCase> corpus;
    auto circle_tangent = [](double t0) { return Vec3{-std::sin(t0), std::cos(t0), 0.0}; };

    for (double t0 : {0.0, 1.0, 4.0}) {
        corpus.push_back(make_case("unit circle t0=" + short_number(t0), "x=cos(t); y=sin(t)", t0,
                                   Verdict::Tangent, circle_tangent(t0),
                                   "circle: tangent is perpendicular to the radius"));
    }
    for (double t0 : {0.5, 2.0, 5.0}) {
        corpus.push_back(make_case("circle R=2.5 t0=" + short_number(t0),
                                   "x=1 + 2.5*cos(t); y=-2 + 2.5*sin(t)", t0, Verdict::Tangent,
                                   circle_tangent(t0), "circle: tangent is perpendicular to the radius"));
    }
    corpus.push_back(make_case("cube root at 0", "f=cbrt(t)", 0.0, Verdict::Tangent, Vec3{0, 1, 0},
                               "graph of cbrt: not differentiable at 0, vertical tangent"));
    corpus.push_back(make_case("abs at 0", "f=abs(t)", 0.0, Verdict::Corner, std::nullopt,
                               "hand derivation: unit secants are (1,1)/sqrt2 and (-1,1)/sqrt2"));
    corpus.push_back(make_case("parabola at 0", "f=t^2", 0.0, Verdict::Tangent, Vec3{1, 0, 0},
                               "differentiable graph, slope 0"));
    corpus.push_back(make_case("parabola at 1", "f=t^2", 1.0, Verdict::Tangent, Vec3{1, 2, 0},
                               "differentiable graph, slope 2"));
    corpus.push_back(make_case("semicubical cusp", "x=t^2; y=t^3", 0.0, Verdict::Tangent,
                               Vec3{1, 0, 0},
                               "hand derivation: AM/|AM| = sign(t)(1, t)/sqrt(1+t^2)"));
    corpus.push_back(make_case("cubed diagonal", "x=t^3; y=t^3", 0.0, Verdict::Tangent, Vec3{1, 1, 0},
                               "hand derivation: unit secants are exactly +-(1,1)/sqrt2; "
                               "derivative vector vanishes"));
    corpus.push_back(make_case("helix at 1", "x=cos(t); y=sin(t); z=t", 1.0, Verdict::Tangent,
                               Vec3{-std::sin(1.0), std::cos(1.0), 1.0},
                               "smooth space curve, derivative (-sin t, cos t, 1)"));
    corpus.push_back(make_case("constant curve", "x=1; y=1", 0.0, Verdict::Degenerate, std::nullopt,
                               "every chord is zero"));
    // 1 - sign(t)^2 is 1 at t = 0 and 0 elsewhere, so the graph is t*sin(1/t) with value 0 at 0
    corpus.push_back(make_case("x sin(1/x) at 0", "f=t*sin(1/(t + (1 - sign(t)^2)))", 0.0,
                               Verdict::Undetermined, std::nullopt,
                               "secant slopes sin(1/h) keep oscillating in [-1, 1]"));
    corpus.push_back(make_case("sqrt endpoint", "f=sqrt(t)", 0.0, Verdict::Degenerate, std::nullopt,
                               "no curve points with t < 0"));
    return corpus;
}

OracleResult run_oracle(const CorpusCase& c, const LimitConfig& cfg, double collinear_tol) {
    OracleResult result;
    result.name = c.name;
    std::ostringstream diag;
    diag.precision(17);
    try {
        result.report = classify(c.curve, c.t0, cfg, collinear_tol);
    } catch (const Error& e) {
        result.diagnostics = std::string("classify failed: ") + e.what();
        return result;
    }
    const TangentReport& r = result.report;

    bool pass = r.verdict == c.expected_verdict;
    if (!pass) {
        diag << "verdict " << to_string(r.verdict) << ", expected " << to_string(c.expected_verdict)
             << "; ";
    }
    if (c.expected_direction && r.direction) {
        const Collinearity col = collinear(*c.expected_direction, *r.direction, 10.0 * collinear_tol);
        result.direction_residual = col.residual;
        if (!col.collinear) {
            pass = false;
            diag << "direction residual " << col.residual << " exceeds " << 10.0 * collinear_tol << "; ";
        }
    }
    if (r.collinearity_residual) diag << "side residual " << *r.collinearity_residual << "; ";
    diag << "minus: " << describe(r.side_limits.minus) << "; plus: " << describe(r.side_limits.plus);
    result.pass = pass;
    result.diagnostics = diag.str();
    return result;
}

std::string corpus_to_jsonl(const std::vector<CorpusCase>& corpus) {
    std::string out;
    for (const CorpusCase& c : corpus) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["curve"] = c.literal;
        j["t0"] = c.t0;
        j["expected_verdict"] = to_string(c.expected_verdict);
        if (c.expected_direction) {
            j["expected_direction"] = {c.expected_direction->x, c.expected_direction->y,
                                       c.expected_direction->z};
        } else {
            j["expected_direction"] = nullptr;
        }
        j["provenance"] = c.provenance;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<CorpusCase> corpus_from_jsonl(std::string_view text) {
    std::vector<CorpusCase> corpus;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            const auto verdict = parse_verdict(j.at("expected_verdict").get<std::string>());
            if (!verdict) throw Error("unknown verdict");
            std::optional<Vec3> dir;
            const auto& d = j.at("expected_direction");
            if (!d.is_null()) dir = Vec3{d.at(0).get<double>(), d.at(1).get<double>(), d.at(2).get<double>()};
            CorpusCase c{j.at("name").get<std::string>(),
                         j.at("curve").get<std::string>(),
                         Curve::parse(j.at("curve").get<std::string>()),
                         j.at("t0").get<double>(),
                         *verdict,
                         dir,
                         j.value("provenance", std::string())};
            corpus.push_back(std::move(c));
        } catch (const nlohmann::json::exception& e) {
            throw Error("corpus line " + std::to_string(line_no) + ": " + e.what());
        } catch (const Error& e) {
            throw Error("corpus line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return corpus;
}

}  // namespace unitsecant
