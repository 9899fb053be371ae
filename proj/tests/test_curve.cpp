#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "unitsecant/curve.hpp"

using namespace unitsecant;

namespace {

void check_vec(const Vec3& actual, const Vec3& expected, double tol) {
    INFO("actual (" << actual.x << ", " << actual.y << ", " << actual.z << ")");
    CHECK(norm(actual - expected) <= tol);
}

}  // namespace

TEST_SUITE("curve") {

TEST_CASE("curve literals") {
    const auto circle = Curve::parse("x=cos(t); y=sin(t)");
    CHECK_FALSE(circle.is_graph());
    CHECK(circle.z().is_constant());

    const auto graph = Curve::parse("f=cbrt(x)");
    CHECK(graph.is_graph());

    CHECK(Curve::parse(circle.literal()).literal() == circle.literal());
    CHECK(Curve::parse(graph.literal()).is_graph());

    CHECK_THROWS_AS(Curve::parse("x=t"), ParseError);
    CHECK_THROWS_AS(Curve::parse("x=t; x=t; y=t"), ParseError);
    CHECK_THROWS_AS(Curve::parse("f=t; x=t"), ParseError);
    CHECK_THROWS_AS(Curve::parse("x=t; y=s"), ParseError);
    CHECK_THROWS_AS(Curve::parse("w=t"), ParseError);
    try {
        Curve::parse("x=t; y=2 + * 3");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 11);
    }
}

TEST_CASE("point_at") {
    check_vec(point_at(Curve::parse("x=cos(t); y=sin(t)"), 0.0), {1, 0, 0}, 0.0);
    check_vec(point_at(Curve::parse("f=cbrt(t)"), 8.0), {8, 2, 0}, 1e-15);
    CHECK_THROWS_AS(point_at(Curve::parse("f=ln(t)"), -1.0), DomainError);
}

TEST_CASE("secant_direction") {
    const double r = 1.0 / std::sqrt(2.0);
    check_vec(secant_direction(Curve::parse("x=cos(t); y=sin(t)"), 0.0, std::numbers::pi / 2).unit_dir,
              {-r, r, 0}, 1e-15);
    check_vec(secant_direction(Curve::parse("x=t; y=t"), 0.0, -1.0).unit_dir, {-r, -r, 0}, 1e-15);
    CHECK_THROWS_AS(secant_direction(Curve::parse("x=1; y=1"), 0.0, 0.5), ZeroChord);
    CHECK_THROWS_AS(secant_direction(Curve::parse("x=t; y=t"), 0.3, 0.3), ZeroChord);
    CHECK_THROWS_AS(secant_direction(Curve::parse("f=sqrt(t)"), 0.0, -0.1), DomainError);

    const auto s = secant_direction(Curve::parse("x=t; y=2*t; z=-t"), 1.0, 0.5);
    CHECK(s.delta_t == -0.5);
    check_vec(s.delta, {-0.5, -1.0, 0.5}, 1e-15);
}

TEST_CASE("analytic_direction") {
    const auto circle = Curve::parse("x=cos(t); y=sin(t)");
    for (double t0 : {0.0, 0.3, 2.0, -4.0}) {
        check_vec(analytic_direction(circle, t0), {-std::sin(t0), std::cos(t0), 0.0}, 1e-15);
    }
    CHECK_THROWS_AS(analytic_direction(Curve::parse("x=t^3; y=t^3"), 0.0), ZeroDerivativeVector);
    CHECK_THROWS_AS(analytic_direction(Curve::parse("f=cbrt(t)"), 0.0), NotDifferentiable);
}

TEST_CASE("chords are antisymmetric") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> at(-1.5, 1.5);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const auto curve = testing::random_polynomial_curve(rng).curve();
        const double t0 = at(rng);
        const double t = at(rng);
        try {
            const auto forward = secant_direction(curve, t0, t);
            const auto backward = secant_direction(curve, t, t0);
            CHECK(norm(forward.unit_dir + backward.unit_dir) <= 1e-12);
            ++checked;
        } catch (const ZeroChord&) {
        }
    }
    CHECK(checked > 250);
}

TEST_CASE("unit secant equals the signed normalized difference quotient") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> at(-1.5, 1.5);
    std::uniform_real_distribution<double> log_step(-6.0, 0.0);
    std::bernoulli_distribution negative(0.5);
    for (int i = 0; i < 300; ++i) {
        const auto curve = testing::random_polynomial_curve(rng).curve();
        const double t0 = at(rng);
        const double dt = (negative(rng) ? -1.0 : 1.0) * std::pow(10.0, log_step(rng));
        try {
            const auto s = secant_direction(curve, t0, t0 + dt);
            const Vec3 quotient = (point_at(curve, t0 + dt) - point_at(curve, t0)) * (1.0 / s.delta_t);
            const Vec3 via_quotient = normalized(quotient) * (s.delta_t > 0 ? 1.0 : -1.0);
            // the quotient above is taken in double; allow for its cancellation error
            const double slack = 1e-12 + 4e-16 * norm(point_at(curve, t0)) / norm(s.delta);
            CHECK(norm(s.unit_dir - via_quotient) <= slack);
        } catch (const ZeroChord&) {
        }
    }
}

TEST_CASE("secant error shrinks with the step on smooth curves") {
    const std::pair<const char*, double> smooth[] = {
        {"x=cos(t); y=sin(t)", 1.0},
        {"x=1 + 2.5*cos(t); y=-2 + 2.5*sin(t)", 2.0},
        {"x=cos(t); y=sin(t); z=t", 1.0},
        {"f=t^2", 1.0},
        {"f=t^2", 0.0},
    };
    for (const auto& [literal, t0] : smooth) {
        const auto curve = Curve::parse(literal);
        const Vec3 exact = analytic_direction(curve, t0);
        double previous = std::numeric_limits<double>::infinity();
        for (double h = 1e-3; h >= 1e-6; h /= 2.0) {
            const double angle = angular_distance(secant_direction(curve, t0, t0 + h).unit_dir, exact);
            INFO(literal << " at " << t0 << ", h = " << h);
            CHECK(angle <= std::max(previous, 1e-10));
            previous = angle;
        }
        CHECK(previous < 1e-5);
    }
}

}
