#include "unitsecant/tangent.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <deque>
#include <limits>
#include <thread>

namespace unitsecant {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Tangent: return "Tangent";
        case Verdict::Corner: return "Corner";
        case Verdict::Degenerate: return "Degenerate";
        case Verdict::Undetermined: return "Undetermined";
    }
    return "?";
}

std::optional<Verdict> parse_verdict(std::string_view text) {
    for (Verdict v : {Verdict::Tangent, Verdict::Corner, Verdict::Degenerate, Verdict::Undetermined}) {
        if (to_string(v) == text) return v;
    }
    return std::nullopt;
}

std::string_view to_string(ExtendedDerivative::Kind kind) {
    using Kind = ExtendedDerivative::Kind;
    switch (kind) {
        case Kind::Finite: return "Finite";
        case Kind::PlusInfinity: return "PlusInfinity";
        case Kind::MinusInfinity: return "MinusInfinity";
        case Kind::UnsignedInfinity: return "UnsignedInfinity";
        case Kind::DoesNotExist: return "DoesNotExist";
    }
    return "?";
}

Collinearity collinear(const Vec3& u, const Vec3& v, double tol) {
    const double residual = norm(cross(u, v));
    return {residual <= tol, residual};
}

Vec3 canonical_orientation(const Vec3& v, double zero_tol) {
    for (double c : {v.x, v.y, v.z}) {
        if (std::fabs(c) > zero_tol) return c > 0.0 ? v : -v;
    }
    return v;
}

namespace {

constexpr std::string_view kUndeterminedNote =
    "numerical verdict: no stable limit observed, which does not prove the limit fails to exist";

TangentReport from_side_limits(double t0, const Vec3& point, LimitOutcome minus, LimitOutcome plus,
                               double collinear_tol) {
    TangentReport report;
    report.t0 = t0;
    report.point = point;
    report.side_limits = {std::move(minus), std::move(plus)};
    const auto* m = std::get_if<Converged>(&report.side_limits.minus);
    const auto* p = std::get_if<Converged>(&report.side_limits.plus);

    if (m && p) {
        const Collinearity c = collinear(p->direction, m->direction, collinear_tol);
        report.collinearity_residual = c.residual;
        if (c.collinear) {
            report.verdict = Verdict::Tangent;
            report.direction = canonical_orientation(p->direction, collinear_tol);
            report.notes = "both one-sided unit-secant limits exist and are collinear";
        } else {
            report.verdict = Verdict::Corner;
            report.notes = "both one-sided unit-secant limits exist but are not collinear";
        }
        return report;
    }

    const auto* dm = std::get_if<Degenerate>(&report.side_limits.minus);
    const auto* dp = std::get_if<Degenerate>(&report.side_limits.plus);
    if (dm || dp) {
        report.verdict = Verdict::Degenerate;
        const bool endpoint = (dm && dm->reason == "side not in domain" && !dp) ||
                              (dp && dp->reason == "side not in domain" && !dm);
        report.notes = endpoint ? "endpoint: one side of the curve near A is empty"
                                : "no points distinct from A on at least one side";
        if (dm) report.notes += "; minus side: " + dm->reason;
        if (dp) report.notes += "; plus side: " + dp->reason;
        return report;
    }

    report.verdict = Verdict::Undetermined;
    report.notes = std::string(kUndeterminedNote);
    if (!m) report.notes += "; minus side: " + std::get<Undetermined>(report.side_limits.minus).diagnostic;
    if (!p) report.notes += "; plus side: " + std::get<Undetermined>(report.side_limits.plus).diagnostic;
    return report;
}

}  // namespace

TangentReport classify(const Curve& curve, double t0, const LimitConfig& cfg, double collinear_tol,
                       FastPath fast_path) {
    cfg.validate();
    const Vec3 point = point_at(curve, t0);

    if (fast_path == FastPath::Enabled) {
        const TwoSidedTrace trace = two_sided_trace(curve, t0, cfg);
        const auto* c = std::get_if<Converged>(&trace.outcome);
        if (c && trace.last_plus && trace.last_minus) {
            const Collinearity col = collinear(*trace.last_plus, *trace.last_minus, collinear_tol);
            if (col.collinear) {
                TangentReport report;
                report.t0 = t0;
                report.point = point;
                report.verdict = Verdict::Tangent;
                report.direction = canonical_orientation(c->direction, collinear_tol);
                report.side_limits = {Converged{*trace.last_minus, c->achieved_tol, trace.minus_probes},
                                      Converged{*trace.last_plus, c->achieved_tol, trace.plus_probes}};
                report.collinearity_residual = col.residual;
                report.fast_path = true;
                report.notes = "two-sided difference-quotient direction limit exists";
                return report;
            }
        }
    }

    LimitOutcome minus = one_sided_limit(curve, t0, Side::Minus, cfg);
    LimitOutcome plus = one_sided_limit(curve, t0, Side::Plus, cfg);
    return from_side_limits(t0, point, std::move(minus), std::move(plus), collinear_tol);
}

namespace {

struct SideSlope {
    enum class Kind { Finite, PlusInfinity, MinusInfinity, None } kind = Kind::None;
    double value = 0.0;
};

SideSlope one_sided_slope(const Curve& curve, double x0, Side side,
                          const LimitConfig& cfg, const SlopeConfig& slope) {
    const double sign = side_sign(side);
    const auto window = static_cast<std::size_t>(cfg.window);
    const long double anchor_x = curve.x().eval_extended(x0);
    const long double anchor_y = curve.y().eval_extended(x0);
    std::deque<double> recent;
    double h = cfg.h0;
    for (int k = 0; k <= cfg.max_steps; ++k, h *= cfg.rho) {
        const double t = x0 + sign * h;
        if (t == x0) continue;
        double q = 0.0;
        try {
            const long double dx = curve.x().eval_extended(t) - anchor_x;
            if (dx == 0) continue;
            q = static_cast<double>((curve.y().eval_extended(t) - anchor_y) / dx);
        } catch (const DomainError&) {
            continue;
        }
        if (!std::isfinite(q)) continue;

        recent.push_back(q);
        if (recent.size() > window) recent.pop_front();
        if (recent.size() < window) continue;

        double spread = 0.0;
        for (std::size_t i = 0; i < recent.size(); ++i) {
            for (std::size_t j = i + 1; j < recent.size(); ++j) {
                spread = std::max(spread, std::fabs(recent[i] - recent[j]));
            }
        }
        if (spread <= slope.slope_tol * std::max(1.0, std::fabs(q))) {
            return {SideSlope::Kind::Finite, q};
        }

        bool growing = std::fabs(q) > slope.slope_big;
        for (std::size_t i = 1; growing && i < recent.size(); ++i) {
            growing = std::fabs(recent[i]) > std::fabs(recent[i - 1]) &&
                      std::signbit(recent[i]) == std::signbit(recent[i - 1]);
        }
        if (growing) return {q > 0.0 ? SideSlope::Kind::PlusInfinity : SideSlope::Kind::MinusInfinity, 0.0};
    }
    return {};
}

}  // namespace

ExtendedDerivative extended_derivative(const Curve& curve, double x0, const LimitConfig& cfg,
                                       const SlopeConfig& slope) {
    if (!curve.is_graph()) throw Error("extended derivative requires a graph-mode curve");
    cfg.validate();
    (void)point_at(curve, x0);
    const SideSlope minus = one_sided_slope(curve, x0, Side::Minus, cfg, slope);
    const SideSlope plus = one_sided_slope(curve, x0, Side::Plus, cfg, slope);

    using K = SideSlope::Kind;
    using E = ExtendedDerivative::Kind;
    if (minus.kind == K::None || plus.kind == K::None) return {E::DoesNotExist, 0.0};
    if (minus.kind == K::Finite && plus.kind == K::Finite) {
        const double mean = 0.5 * (minus.value + plus.value);
        if (std::fabs(plus.value - minus.value) <= slope.slope_tol * std::max(1.0, std::fabs(mean))) {
            return {E::Finite, mean};
        }
        return {E::DoesNotExist, 0.0};
    }
    if (minus.kind == K::Finite || plus.kind == K::Finite) return {E::DoesNotExist, 0.0};
    if (minus.kind == plus.kind) return {plus.kind == K::PlusInfinity ? E::PlusInfinity : E::MinusInfinity, 0.0};
    return {E::UnsignedInfinity, 0.0};
}

GraphTangentReport graph_tangent(const Curve& curve, double x0, const LimitConfig& cfg,
                                 double collinear_tol, const SlopeConfig& slope) {
    GraphTangentReport out;
    out.derivative = extended_derivative(curve, x0, cfg, slope);
    out.report = classify(curve, x0, cfg, collinear_tol);
    TangentReport& report = out.report;

    if (!out.derivative.exists()) {
        if (report.verdict == Verdict::Tangent) {
            report.verdict = Verdict::Undetermined;
            report.direction.reset();
            report.notes = "inconsistent: unit secants give a tangent but dy/dx has no finite or "
                           "infinite limit";
        }
        return out;
    }

    Vec3 direction{0.0, 1.0, 0.0};
    if (out.derivative.kind == ExtendedDerivative::Kind::Finite) {
        out.slope = out.derivative.value;
        direction = normalized(Vec3{1.0, out.derivative.value, 0.0});
    } else {
        out.vertical = true;
    }

    if (report.verdict != Verdict::Tangent) {
        report.notes = "inconsistent: dy/dx has an extended limit but unit secants gave " +
                       std::string(to_string(report.verdict)) + " (" + report.notes + ")";
        report.verdict = Verdict::Undetermined;
        report.direction.reset();
        out.slope.reset();
        out.vertical = false;
        return out;
    }
    const Collinearity agree = collinear(*report.direction, direction, 10.0 * collinear_tol);
    if (!agree.collinear) {
        report.notes = "inconsistent: slope direction and unit-secant direction differ (residual " +
                       std::to_string(agree.residual) + ")";
        report.verdict = Verdict::Undetermined;
        report.direction.reset();
        out.slope.reset();
        out.vertical = false;
        return out;
    }
    report.direction = canonical_orientation(direction);
    report.notes = out.vertical ? "vertical tangent: infinite extended derivative"
                                : "slope equals the extended derivative";
    return out;
}

TangentLine tangent_line(const TangentReport& report) {
    if (report.verdict != Verdict::Tangent || !report.direction) {
        throw NoTangent("no tangent line: verdict is " + std::string(to_string(report.verdict)));
    }
    return {report.point, *report.direction};
}

std::vector<TangentReport> sweep(const Curve& curve, double t_min, double t_max, int n,
                                 const LimitConfig& cfg, double collinear_tol) {
    if (!(t_min < t_max)) throw Error("sweep: t_min must be below t_max");
    if (n < 2) throw Error("sweep: n must be at least 2");
    cfg.validate();

    std::vector<TangentReport> reports(static_cast<std::size_t>(n));
    const double step = (t_max - t_min) / (n - 1);
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next++; i < n; i = next++) {
            const double t = i == n - 1 ? t_max : t_min + step * i;
            TangentReport& r = reports[static_cast<std::size_t>(i)];
            try {
                r = classify(curve, t, cfg, collinear_tol);
            } catch (const Error& e) {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                r.t0 = t;
                r.point = {nan, nan, nan};
                r.verdict = Verdict::Degenerate;
                r.side_limits = {Degenerate{"not evaluated", 0}, Degenerate{"not evaluated", 0}};
                r.notes = std::string("point not evaluable: ") + e.what();
            }
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(n)));
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    pool.clear();
    return reports;
}

}  // namespace unitsecant
