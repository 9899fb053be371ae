#pragma once

#include <optional>
#include <string>
#include <variant>

#include "unitsecant/curve.hpp"

namespace unitsecant {

/// Step schedule and stopping rule for numerical direction limits.
/// Probes are taken at t0 +/- h0 * rho^k for k = 0..max_steps.
struct LimitConfig {
    double h0 = 1e-2;
    double rho = 0.5;
    double angle_tol = 1e-7;  // radians
    int window = 3;
    int max_steps = 48;

    /// Throws Error when an invariant is violated.
    void validate() const;
};

struct Converged {
    Vec3 direction;          // unit
    double achieved_tol = 0; // largest pairwise angle inside the final window
    int steps_used = 0;
};

struct Degenerate {
    std::string reason;
    int steps_used = 0;
};

/// No stable direction was observed. This is a numerical statement, not a proof that the limit
/// does not exist.
struct Undetermined {
    std::string diagnostic;
    int steps_used = 0;
};

using LimitOutcome = std::variant<Converged, Degenerate, Undetermined>;

inline bool is_converged(const LimitOutcome& o) { return std::holds_alternative<Converged>(o); }
inline bool is_degenerate(const LimitOutcome& o) { return std::holds_alternative<Degenerate>(o); }
int steps_used(const LimitOutcome& o);
std::string describe(const LimitOutcome& o);

/// Limit of the unit secant vector AM/|AM| as M approaches A from one side.
/// Throws DomainError when A itself is not evaluable.
LimitOutcome one_sided_limit(const Curve& curve, double t0, Side side, const LimitConfig& cfg = {});

/// Two-sided limit of the normalized difference quotient (dx, dy, dz)/dt / |(dx, dy, dz)/dt|,
/// i.e. sign(dt) * AM/|AM|, with probes from both sides interleaved into one sequence.
LimitOutcome two_sided_limit(const Curve& curve, double t0, const LimitConfig& cfg = {});

/// two_sided_limit plus the last unit secant seen on each side.
struct TwoSidedTrace {
    LimitOutcome outcome;
    std::optional<Vec3> last_plus;
    std::optional<Vec3> last_minus;
    int plus_probes = 0;
    int minus_probes = 0;
};

TwoSidedTrace two_sided_trace(const Curve& curve, double t0, const LimitConfig& cfg = {});

/// Sign of the probe offset on `side` (+1 or -1).
inline double side_sign(Side side) { return side == Side::Plus ? 1.0 : -1.0; }

}  // namespace unitsecant
