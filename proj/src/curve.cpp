#include "unitsecant/curve.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace unitsecant {

namespace {

std::size_t skip_spaces(std::string_view text, std::size_t pos) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                 text[pos] == '\r')) {
        ++pos;
    }
    return pos;
}

struct Clause {
    char name = 0;
    std::optional<Expr> expr;
};

Clause parse_clause(std::string_view literal, std::size_t begin, std::size_t end) {
    std::size_t pos = skip_spaces(literal, begin);
    if (pos >= end) throw ParseError(pos, "clause of the form name=<expr>");
    const char name = literal[pos];
    if (name != 'x' && name != 'y' && name != 'z' && name != 'f') {
        throw ParseError(pos, "coordinate name x, y, z or f");
    }
    pos = skip_spaces(literal, pos + 1);
    if (pos >= end || literal[pos] != '=') throw ParseError(pos, "'='");
    ++pos;
    try {
        return {name, Expr::parse(literal.substr(pos, end - pos))};
    } catch (const ParseError& e) {
        throw ParseError(pos + e.offset(), e.expected());
    }
}

}  // namespace

Curve::Curve(Expr x, Expr y, Expr z, bool graph, std::string label)
    : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)), graph_(graph), label_(std::move(label)) {}

Curve Curve::parametric(Expr x, Expr y, Expr z, std::string label) {
    std::optional<std::string> var;
    for (const Expr* e : {&x, &y, &z}) {
        const auto& v = e->variable_name();
        if (!v) continue;
        if (var && *var != *v) {
            throw Error("curve coordinates use different variables '" + *var + "' and '" + *v + "'");
        }
        var = v;
    }
    return Curve(std::move(x), std::move(y), std::move(z), false, std::move(label));
}

Curve Curve::graph(Expr f, std::string label) {
    Expr x = Expr::variable(f.variable_name().value_or("t"));
    return Curve(std::move(x), std::move(f), Expr::constant(0.0), true, std::move(label));
}

Curve Curve::parse(std::string_view literal) {
    std::array<std::optional<Expr>, 4> slots;  // x, y, z, f
    std::array<std::size_t, 4> where{};
    std::size_t begin = 0;
    for (;;) {
        const std::size_t semi = literal.find(';', begin);
        const std::size_t end = semi == std::string_view::npos ? literal.size() : semi;
        Clause clause = parse_clause(literal, begin, end);
        const std::size_t slot = clause.name == 'f' ? 3 : static_cast<std::size_t>(clause.name - 'x');
        if (slots[slot]) throw ParseError(skip_spaces(literal, begin), "each coordinate at most once");
        slots[slot] = std::move(clause.expr);
        where[slot] = skip_spaces(literal, begin);
        if (semi == std::string_view::npos) break;
        begin = semi + 1;
    }

    if (slots[3]) {
        for (std::size_t i = 0; i < 3; ++i) {
            if (slots[i]) throw ParseError(where[i], "no x/y/z clause alongside f");
        }
        return graph(std::move(*slots[3]));
    }
    if (!slots[0]) throw ParseError(literal.size(), "x clause");
    if (!slots[1]) throw ParseError(literal.size(), "y clause");
    Expr z = slots[2] ? std::move(*slots[2]) : Expr::constant(0.0);
    try {
        return parametric(std::move(*slots[0]), std::move(*slots[1]), std::move(z));
    } catch (const ParseError&) {
        throw;
    } catch (const Error&) {
        throw ParseError(0, "one shared variable across coordinates");
    }
}

std::string Curve::literal() const {
    if (graph_) return "f=" + y_.print();
    return "x=" + x_.print() + "; y=" + y_.print() + "; z=" + z_.print();
}

double chord_tolerance(const Vec3& anchor) { return 1e-13 * norm(anchor); }

Vec3 point_at(const Curve& curve, double t) {
    return {curve.x().eval(t), curve.y().eval(t), curve.z().eval(t)};
}

namespace {

struct PointL {
    long double x, y, z;
};

PointL point_extended(const Curve& curve, double t) {
    return {curve.x().eval_extended(t), curve.y().eval_extended(t), curve.z().eval_extended(t)};
}

}  // namespace

SecantSample secant_direction(const Curve& curve, double t0, double t) {
    if (t == t0) throw ZeroChord(t0, t);
    const Vec3 anchor = point_at(curve, t0);
    const PointL a = point_extended(curve, t0);
    const PointL m = point_extended(curve, t);
    const long double dx = m.x - a.x;
    const long double dy = m.y - a.y;
    const long double dz = m.z - a.z;
    const long double length = std::hypot(dx, dy, dz);
    if (length <= chord_tolerance(anchor)) throw ZeroChord(t0, t);
    const Vec3 delta{static_cast<double>(dx), static_cast<double>(dy), static_cast<double>(dz)};
    const Vec3 unit{static_cast<double>(dx / length), static_cast<double>(dy / length),
                    static_cast<double>(dz / length)};
    return {t - t0, delta, unit};
}

Vec3 analytic_direction(const Curve& curve, double t0) {
    const Vec3 derivative{curve.x().eval_dual(t0).derivative, curve.y().eval_dual(t0).derivative,
                          curve.z().eval_dual(t0).derivative};
    const double length = norm(derivative);
    if (length < kDerivativeTolerance) throw ZeroDerivativeVector(t0);
    return derivative / length;
}

}  // namespace unitsecant
