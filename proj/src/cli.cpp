#include "unitsecant/cli.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "unitsecant/oracle.hpp"
#include "unitsecant/report.hpp"
#include "unitsecant/svg.hpp"

namespace unitsecant::cli {

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

enum class Format { Human, Machine };

struct Settings {
    LimitConfig limits;
    double collinear_tol = kDefaultCollinearTol;
    Format format = Format::Human;
    SvgOptions svg;
};

/// Values given on the command line; unset fields fall back to the config file, then defaults.
struct Flags {
    std::optional<double> h0, rho, angle_tol, collinear_tol, margin;
    std::optional<int> window, max_steps, width, height, samples;
    std::optional<std::string> format, out, config;
};

double parse_double(std::string_view key, std::string_view text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [p, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || p != end) throw UsageError("invalid number for " + std::string(key) + ": '" + std::string(text) + "'");
    return v;
}

int parse_int(std::string_view key, std::string_view text) {
    int v = 0;
    const auto* end = text.data() + text.size();
    auto [p, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || p != end) throw UsageError("invalid integer for " + std::string(key) + ": '" + std::string(text) + "'");
    return v;
}

Format parse_format(std::string_view text) {
    if (text == "human") return Format::Human;
    if (text == "machine") return Format::Machine;
    throw UsageError("format must be 'human' or 'machine', got '" + std::string(text) + "'");
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// key=value lines; '#' starts a comment. Dashes and underscores in keys are interchangeable.
void apply_config_file(const std::string& path, Settings& s) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        std::replace(key.begin(), key.end(), '-', '_');

        if (key == "h0") s.limits.h0 = parse_double(key, value);
        else if (key == "rho") s.limits.rho = parse_double(key, value);
        else if (key == "angle_tol") s.limits.angle_tol = parse_double(key, value);
        else if (key == "window") s.limits.window = parse_int(key, value);
        else if (key == "max_steps") s.limits.max_steps = parse_int(key, value);
        else if (key == "collinear_tol") s.collinear_tol = parse_double(key, value);
        else if (key == "format") s.format = parse_format(value);
        else if (key == "width") s.svg.width = parse_int(key, value);
        else if (key == "height") s.svg.height = parse_int(key, value);
        else if (key == "samples") s.svg.samples = parse_int(key, value);
        else if (key == "margin") s.svg.margin = parse_double(key, value);
        else throw UsageError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
}

Settings resolve(const Flags& f) {
    Settings s;
    if (f.config) apply_config_file(*f.config, s);
    if (f.h0) s.limits.h0 = *f.h0;
    if (f.rho) s.limits.rho = *f.rho;
    if (f.angle_tol) s.limits.angle_tol = *f.angle_tol;
    if (f.window) s.limits.window = *f.window;
    if (f.max_steps) s.limits.max_steps = *f.max_steps;
    if (f.collinear_tol) s.collinear_tol = *f.collinear_tol;
    if (f.format) s.format = parse_format(*f.format);
    if (f.width) s.svg.width = *f.width;
    if (f.height) s.svg.height = *f.height;
    if (f.samples) s.svg.samples = *f.samples;
    if (f.margin) s.svg.margin = *f.margin;

    try {
        s.limits.validate();
        s.svg.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    if (!(s.collinear_tol > 0.0)) throw UsageError("collinear tolerance must be positive");
    return s;
}

std::pair<double, double> parse_range(std::string_view text) {
    const auto colon = text.find(':', 1);
    if (colon == std::string_view::npos) throw UsageError("range must look like a:b");
    const double a = parse_double("range", text.substr(0, colon));
    const double b = parse_double("range", text.substr(colon + 1));
    if (!(a < b)) throw UsageError("range start must be below range end");
    return {a, b};
}

Curve parse_curve(const std::string& literal) {
    try {
        return Curve::parse(literal);
    } catch (const ParseError& e) {
        throw UsageError("invalid curve literal: " + std::string(e.what()) + "\n  " + literal + "\n  " +
                         std::string(e.offset(), ' ') + "^");
    }
}

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--h0", f.h0, "Initial probe step");
    cmd->add_option("--rho", f.rho, "Step ratio in (0, 1)");
    cmd->add_option("--angle-tol", f.angle_tol, "Angular convergence tolerance (radians)");
    cmd->add_option("--window", f.window, "Consecutive agreeing probes required");
    cmd->add_option("--max-steps", f.max_steps, "Largest step index k in h0*rho^k");
    cmd->add_option("--collinear-tol", f.collinear_tol, "Tolerance on |u x v| for collinearity");
    cmd->add_option("--format", f.format, "Output format: human or machine");
    cmd->add_option("--out", f.out, "Write output to this file instead of standard output");
    cmd->add_option("--config", f.config, "key=value config file; flags override its values");
}

void add_svg(CLI::App* cmd, Flags& f) {
    cmd->add_option("--width", f.width, "SVG width in pixels");
    cmd->add_option("--height", f.height, "SVG height in pixels");
    cmd->add_option("--samples", f.samples, "Curve samples (>= 16)");
    cmd->add_option("--margin", f.margin, "SVG margin in pixels");
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::Tangent: return kExitTangent;
        case Verdict::Corner: return kExitCorner;
        default: return kExitNoTangent;
    }
}

std::string describe_derivative(const ExtendedDerivative& d) {
    if (d.kind == ExtendedDerivative::Kind::Finite) {
        std::ostringstream s;
        s.precision(10);
        s << "Finite " << d.value;
        return s.str();
    }
    return std::string(to_string(d.kind));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decide whether a curve has a tangent at a point from the one-sided limits of its "
                 "unit secant vectors."};
    app.name("unitsecant");
    app.require_subcommand(1, 1);

    Flags flags;
    std::string literal;
    double at = 0.0;
    std::string range;
    int n = 0;
    std::optional<std::string> corpus_path;

    auto* classify_cmd = app.add_subcommand("classify", "Classify the point at parameter --at");
    classify_cmd->add_option("curve", literal, "Curve literal, e.g. \"x=cos(t); y=sin(t)\" or \"f=abs(t)\"")->required();
    classify_cmd->add_option("--at", at, "Parameter t0")->required();
    add_common(classify_cmd, flags);

    auto* sweep_cmd = app.add_subcommand("sweep", "Classify n evenly spaced parameters");
    sweep_cmd->add_option("curve", literal, "Curve literal")->required();
    sweep_cmd->add_option("--range", range, "Parameter range a:b (use --range=-1:1 for negatives)")->required();
    sweep_cmd->add_option("--n", n, "Number of parameters (>= 2)")->required();
    add_common(sweep_cmd, flags);

    auto* plot_cmd = app.add_subcommand("plot", "Render the curve, A and its tangent as SVG");
    plot_cmd->add_option("curve", literal, "Curve literal")->required();
    plot_cmd->add_option("--at", at, "Parameter t0")->required();
    plot_cmd->add_option("--range", range, "Plotted parameter range a:b (default t0-1:t0+1)");
    add_common(plot_cmd, flags);
    add_svg(plot_cmd, flags);

    auto* oracle_cmd = app.add_subcommand("oracle", "Run the reference corpus");
    oracle_cmd->add_option("--corpus", corpus_path, "JSON-lines corpus file (default: built-in)");
    add_common(oracle_cmd, flags);

    auto* corpus_cmd = app.add_subcommand("corpus", "Write the built-in corpus as JSON lines");
    corpus_cmd->add_option("--out", flags.out, "Write to this file instead of standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "unitsecant: " << e.what() << '\n';
        if (app.get_subcommands().empty()) {
            err << app.help();
        }
        return kExitUsage;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    auto open_sink = [&] {
        if (!flags.out) return;
        file.open(*flags.out, std::ios::binary);
        if (!file) throw UsageError("cannot write '" + *flags.out + "'");
        sink = &file;
    };

    try {
        const Settings s = resolve(flags);
        const bool machine = s.format == Format::Machine;

        if (classify_cmd->parsed()) {
            const Curve curve = parse_curve(literal);
            TangentReport report;
            std::optional<ExtendedDerivative> derivative;
            try {
                report = classify(curve, at, s.limits, s.collinear_tol);
                if (curve.is_graph() && !machine) derivative = extended_derivative(curve, at, s.limits);
            } catch (const DomainError& e) {
                throw UsageError(std::string("point A is not on the curve: ") + e.what());
            }
            open_sink();
            if (machine) {
                *sink << format_machine(to_machine_record(report)) << '\n';
            } else {
                *sink << "curve:     " << literal << '\n' << format_human(report);
                if (derivative) *sink << "dy/dx:     " << describe_derivative(*derivative) << '\n';
            }
            return exit_code(report.verdict);
        }

        if (sweep_cmd->parsed()) {
            if (n < 2) throw UsageError("--n must be at least 2");
            const auto [a, b] = parse_range(range);
            const Curve curve = parse_curve(literal);
            const auto reports = sweep(curve, a, b, n, s.limits, s.collinear_tol);
            open_sink();
            if (machine) {
                for (const auto& r : reports) *sink << format_machine(to_machine_record(r)) << '\n';
            } else {
                *sink << format_human_table(reports);
            }
            const bool all = std::all_of(reports.begin(), reports.end(),
                                         [](const auto& r) { return r.verdict == Verdict::Tangent; });
            return all ? 0 : 1;
        }

        if (plot_cmd->parsed()) {
            const Curve curve = parse_curve(literal);
            const auto [a, b] = range.empty() ? std::pair{at - 1.0, at + 1.0} : parse_range(range);
            TangentReport report;
            try {
                report = classify(curve, at, s.limits, s.collinear_tol);
            } catch (const DomainError& e) {
                throw UsageError(std::string("point A is not on the curve: ") + e.what());
            }
            const std::string svg = render_svg(curve, report, a, b, s.svg);
            open_sink();
            *sink << svg;
            return 0;
        }

        if (oracle_cmd->parsed()) {
            std::vector<CorpusCase> corpus;
            if (corpus_path) {
                std::ifstream in(*corpus_path);
                if (!in) throw UsageError("cannot open corpus '" + *corpus_path + "'");
                std::stringstream buffer;
                buffer << in.rdbuf();
                corpus = corpus_from_jsonl(buffer.str());
            } else {
                corpus = builtin_corpus();
            }
            open_sink();
            int passed = 0;
            char line[256];
            if (!machine) {
                std::snprintf(line, sizeof line, "%-24s %-13s %-13s %-5s %s\n", "case", "expected", "verdict",
                              "ok", "direction residual");
                *sink << line;
            }
            for (const CorpusCase& c : corpus) {
                const OracleResult r = run_oracle(c, s.limits, s.collinear_tol);
                passed += r.pass ? 1 : 0;
                if (machine) {
                    *sink << format_oracle_machine(c, r) << '\n';
                    continue;
                }
                std::snprintf(line, sizeof line, "%-24s %-13s %-13s %-5s ", c.name.c_str(),
                              std::string(to_string(c.expected_verdict)).c_str(),
                              std::string(to_string(r.report.verdict)).c_str(), r.pass ? "pass" : "FAIL");
                *sink << line;
                if (r.direction_residual) {
                    std::snprintf(line, sizeof line, "%.3g", *r.direction_residual);
                    *sink << line;
                } else {
                    *sink << '-';
                }
                *sink << '\n';
                if (!r.pass) *sink << "    " << r.diagnostics << '\n';
            }
            if (!machine) *sink << passed << "/" << corpus.size() << " cases passed\n";
            return passed == static_cast<int>(corpus.size()) ? 0 : 1;
        }

        if (corpus_cmd->parsed()) {
            open_sink();
            *sink << corpus_to_jsonl(builtin_corpus());
            return 0;
        }
    } catch (const UsageError& e) {
        err << "unitsecant: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "unitsecant: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace unitsecant::cli
