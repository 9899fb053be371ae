#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "unitsecant/expr.hpp"
#include "unitsecant/vec3.hpp"

namespace unitsecant {

/// Which one-sided parameter neighbourhood of t0 is probed.
enum class Side { Minus, Plus };

/// A parametric space curve (x(t), y(t), z(t)). Graphs y = f(x) embed as (t, f(t), 0).
class Curve {
public:
    /// All coordinate expressions must mention the same variable (or none).
    static Curve parametric(Expr x, Expr y, Expr z, std::string label = {});
    static Curve graph(Expr f, std::string label = {});

    /**
     * Parses a curve literal:
     *
     *   "x=<expr>; y=<expr>[; z=<expr>]"   z defaults to 0
     *   "f=<expr>"                          graph of f, i.e. x=t, y=f(t)
     *
     * Throws ParseError with the byte offset into `literal`.
     */
    static Curve parse(std::string_view literal);

    const Expr& x() const noexcept { return x_; }
    const Expr& y() const noexcept { return y_; }
    const Expr& z() const noexcept { return z_; }
    const Expr& graph_function() const noexcept { return y_; }

    bool is_graph() const noexcept { return graph_; }
    const std::string& label() const noexcept { return label_; }

    /// Literal that Curve::parse maps back to an equivalent curve.
    std::string literal() const;

private:
    Curve(Expr x, Expr y, Expr z, bool graph, std::string label);

    Expr x_;
    Expr y_;
    Expr z_;
    bool graph_ = false;
    std::string label_;
};

/// Chord lengths at or below this are treated as zero.
double chord_tolerance(const Vec3& anchor);

/// Derivative vectors with norm below this are treated as zero.
inline constexpr double kDerivativeTolerance = 1e-12;

/// Point (x(t), y(t), z(t)); throws DomainError.
Vec3 point_at(const Curve& curve, double t);

struct SecantSample {
    double delta_t = 0.0;
    Vec3 delta;     // (dx, dy, dz)
    Vec3 unit_dir;  // unit vector from A = point_at(t0) toward M = point_at(t)
};

/// Unit secant vector AM/|AM|. Throws ZeroChord when M numerically equals A, or DomainError.
SecantSample secant_direction(const Curve& curve, double t0, double t);

/// Normalized (x'(t0), y'(t0), z'(t0)). Throws NotDifferentiable or ZeroDerivativeVector.
Vec3 analytic_direction(const Curve& curve, double t0);

}  // namespace unitsecant
