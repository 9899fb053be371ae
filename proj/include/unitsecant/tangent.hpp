#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unitsecant/limits.hpp"

namespace unitsecant {

enum class Verdict { Tangent, Corner, Degenerate, Undetermined };

std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view text);

inline constexpr double kDefaultCollinearTol = 1e-5;

struct SideLimits {
    LimitOutcome minus = Undetermined{"not computed", 0};
    LimitOutcome plus = Undetermined{"not computed", 0};
};

struct TangentReport {
    double t0 = 0.0;
    Vec3 point;  // A
    Verdict verdict = Verdict::Undetermined;
    std::optional<Vec3> direction;  // unit, canonical orientation; present iff Tangent
    SideLimits side_limits;
    std::optional<double> collinearity_residual;  // present when both side limits converged
    bool fast_path = false;  // decided by the two-sided difference-quotient limit
    std::string notes;
};

struct TangentLine {
    Vec3 point;
    Vec3 direction;
};

struct Collinearity {
    bool collinear = false;
    double residual = 0.0;  // |u x v|
};

/// Unit vectors are collinear when equal or opposite; the residual is the norm of u x v.
Collinearity collinear(const Vec3& u, const Vec3& v, double tol);

/// Flips `v` so its first component with magnitude above `zero_tol` is positive. classify() passes
/// its collinearity tolerance, since smaller components of a numerical limit are noise.
Vec3 canonical_orientation(const Vec3& v, double zero_tol = 1e-12);

enum class FastPath { Enabled, Disabled };

/**
 * Decides whether the curve has a tangent at A = point_at(t0).
 *
 * Both one-sided unit-secant limits converged and collinear -> Tangent, direction taken from the
 * Plus side; both converged but not collinear -> Corner; either side degenerate -> Degenerate;
 * anything else -> Undetermined. When enabled, a converged two-sided difference-quotient limit
 * short-circuits the one-sided computation.
 *
 * Throws DomainError when A is not evaluable.
 */
TangentReport classify(const Curve& curve, double t0, const LimitConfig& cfg = {},
                       double collinear_tol = kDefaultCollinearTol,
                       FastPath fast_path = FastPath::Enabled);

/// Finite or infinite limit of dy/dx for a graph y = f(x).
struct ExtendedDerivative {
    enum class Kind { Finite, PlusInfinity, MinusInfinity, UnsignedInfinity, DoesNotExist };

    Kind kind = Kind::DoesNotExist;
    double value = 0.0;  // meaningful only for Finite

    bool exists() const noexcept { return kind != Kind::DoesNotExist; }
    bool is_infinite() const noexcept {
        return kind == Kind::PlusInfinity || kind == Kind::MinusInfinity ||
               kind == Kind::UnsignedInfinity;
    }
};

std::string_view to_string(ExtendedDerivative::Kind kind);

struct SlopeConfig {
    double slope_tol = 1e-6;  // relative to max(1, |slope|)
    double slope_big = 1e8;   // divergence threshold
};

/// Requires a graph-mode curve (throws Error otherwise). Throws DomainError when f(x0) is not
/// evaluable.
ExtendedDerivative extended_derivative(const Curve& curve, double x0, const LimitConfig& cfg = {},
                                       const SlopeConfig& slope = {});

struct GraphTangentReport {
    TangentReport report;
    ExtendedDerivative derivative;
    std::optional<double> slope;  // finite slope when the tangent is not vertical
    bool vertical = false;
};

/// Tangent of a graph through its extended derivative, cross-checked against classify().
GraphTangentReport graph_tangent(const Curve& curve, double x0, const LimitConfig& cfg = {},
                                 double collinear_tol = kDefaultCollinearTol,
                                 const SlopeConfig& slope = {});

/// Throws NoTangent unless report.verdict is Tangent.
TangentLine tangent_line(const TangentReport& report);

/// Classifies n uniformly spaced parameters in [t_min, t_max] (endpoints included). Per-point
/// failures are recorded in the individual reports.
std::vector<TangentReport> sweep(const Curve& curve, double t_min, double t_max, int n,
                                 const LimitConfig& cfg = {},
                                 double collinear_tol = kDefaultCollinearTol);

}  // namespace unitsecant
