#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "unitsecant/limits.hpp"
#include "unitsecant/oracle.hpp"

using namespace unitsecant;

namespace {

Vec3 converged(const LimitOutcome& o) {
    REQUIRE(is_converged(o));
    return std::get<Converged>(o).direction;
}

const char* const kOscillator = "f=t*sin(1/(t + (1 - sign(t)^2)))";

// Unit secants of t -> (t, t sin(1/t)) from the closed form, without going through Expr.
bool closed_form_oscillator_stabilizes(double sign, const LimitConfig& cfg) {
    std::vector<Vec3> dirs;
    for (int k = 0; k <= cfg.max_steps; ++k) {
        const double h = sign * cfg.h0 * std::pow(cfg.rho, k);
        dirs.push_back(normalized(Vec3{h, h * std::sin(1.0 / h), 0.0}));
        if (static_cast<int>(dirs.size()) < cfg.window) continue;
        bool stable = true;
        for (std::size_t i = dirs.size() - cfg.window; i < dirs.size(); ++i) {
            for (std::size_t j = i + 1; j < dirs.size(); ++j) {
                stable = stable && angular_distance(dirs[i], dirs[j]) <= cfg.angle_tol;
            }
        }
        if (stable) return true;
    }
    return false;
}

std::vector<std::pair<Curve, double>> smooth_corpus() {
    std::vector<std::pair<Curve, double>> out;
    for (const auto& c : builtin_corpus()) {
        try {
            const Vec3 d = analytic_direction(c.curve, c.t0);
            (void)d;
            out.emplace_back(c.curve, c.t0);
        } catch (const Error&) {
        }
    }
    return out;
}

}  // namespace

TEST_SUITE("limits") {

TEST_CASE("config validation") {
    CHECK_NOTHROW(LimitConfig{}.validate());
    CHECK_THROWS_AS((LimitConfig{0.0}.validate()), Error);
    CHECK_THROWS_AS((LimitConfig{1e-2, 1.0}.validate()), Error);
    CHECK_THROWS_AS((LimitConfig{1e-2, 0.5, 0.0}.validate()), Error);
    CHECK_THROWS_AS((LimitConfig{1e-2, 0.5, 1e-7, 1}.validate()), Error);
    CHECK_THROWS_AS((LimitConfig{1e-2, 0.5, 1e-7, 5, 4}.validate()), Error);
    CHECK_THROWS_AS(one_sided_limit(Curve::parse("f=t"), 0.0, Side::Plus, LimitConfig{-1.0}), Error);
}

TEST_CASE("one-sided limits") {
    const Vec3 line = converged(one_sided_limit(Curve::parse("x=t; y=2*t"), 0.0, Side::Plus));
    CHECK(norm(line - Vec3{1, 2, 0} * (1.0 / std::sqrt(5.0))) <= 1e-12);

    const Vec3 up = converged(one_sided_limit(Curve::parse("f=cbrt(t)"), 0.0, Side::Plus));
    CHECK(angular_distance(up, {0, 1, 0}) <= 1e-5);
    const Vec3 down = converged(one_sided_limit(Curve::parse("f=cbrt(t)"), 0.0, Side::Minus));
    CHECK(angular_distance(down, {0, -1, 0}) <= 1e-5);

    const double r = 1.0 / std::sqrt(2.0);
    const Vec3 left = converged(one_sided_limit(Curve::parse("f=abs(t)"), 0.0, Side::Minus));
    CHECK(norm(left - Vec3{-r, r, 0}) <= 1e-12);
}

TEST_CASE("oscillating secants are undetermined") {
    const LimitConfig cfg;
    for (Side side : {Side::Plus, Side::Minus}) {
        CHECK_FALSE(closed_form_oscillator_stabilizes(side_sign(side), cfg));
        const auto outcome = one_sided_limit(Curve::parse(kOscillator), 0.0, side, cfg);
        REQUIRE(std::holds_alternative<Undetermined>(outcome));
        CHECK(std::get<Undetermined>(outcome).diagnostic == "oscillating");
    }
}

TEST_CASE("degenerate sides") {
    const auto constant = one_sided_limit(Curve::parse("x=1; y=1"), 0.0, Side::Plus);
    REQUIRE(is_degenerate(constant));

    const auto outside = one_sided_limit(Curve::parse("f=sqrt(t)"), 0.0, Side::Minus);
    REQUIRE(is_degenerate(outside));
    CHECK(std::get<Degenerate>(outside).reason == "side not in domain");

    CHECK_THROWS_AS(one_sided_limit(Curve::parse("f=ln(t)"), 0.0, Side::Plus), DomainError);
}

TEST_CASE("two-sided difference-quotient limit") {
    const auto helix = Curve::parse("x=cos(t); y=sin(t); z=t");
    const Vec3 d = converged(two_sided_limit(helix, 1.0));
    CHECK(angular_distance(d, analytic_direction(helix, 1.0)) <= 1e-6);

    // the normalized quotient does not flip sign with the side, so a line converges
    const double r = 1.0 / std::sqrt(2.0);
    const Vec3 line = converged(two_sided_limit(Curve::parse("x=t; y=t"), 0.0));
    CHECK(norm(line - Vec3{r, r, 0}) <= 1e-12);

    CHECK_FALSE(is_converged(two_sided_limit(Curve::parse("f=abs(t)"), 0.0)));
    CHECK_FALSE(is_converged(two_sided_limit(Curve::parse(kOscillator), 0.0)));
}

TEST_CASE("two-sided result never contradicts the one-sided limits") {
    std::vector<std::pair<Curve, double>> cases;
    for (const auto& c : builtin_corpus()) cases.emplace_back(c.curve, c.t0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> at(-1.0, 1.0);
    for (int i = 0; i < 40; ++i) cases.emplace_back(testing::random_polynomial_curve(rng).curve(), at(rng));

    for (const auto& [curve, t0] : cases) {
        const auto both = two_sided_limit(curve, t0);
        if (!is_converged(both)) continue;
        const Vec3 v = std::get<Converged>(both).direction;
        const auto plus = one_sided_limit(curve, t0, Side::Plus);
        const auto minus = one_sided_limit(curve, t0, Side::Minus);
        INFO(curve.literal() << " at " << t0);
        REQUIRE(is_converged(plus));
        REQUIRE(is_converged(minus));
        CHECK(testing::residual(v, std::get<Converged>(plus).direction) <= 1e-5);
        CHECK(testing::residual(v, std::get<Converged>(minus).direction) <= 1e-5);
    }
}

TEST_CASE("determinism") {
    const auto curve = Curve::parse("x=cos(3*t); y=exp(t); z=t^2");
    for (Side side : {Side::Plus, Side::Minus}) {
        const auto a = one_sided_limit(curve, 0.4, side);
        const auto b = one_sided_limit(curve, 0.4, side);
        REQUIRE(is_converged(a));
        REQUIRE(is_converged(b));
        CHECK(std::get<Converged>(a).direction == std::get<Converged>(b).direction);
        CHECK(std::get<Converged>(a).steps_used == std::get<Converged>(b).steps_used);
        CHECK(std::get<Converged>(a).achieved_tol == std::get<Converged>(b).achieved_tol);
    }
}

TEST_CASE("refinement and step-size stability on the smooth corpus") {
    const auto corpus = smooth_corpus();
    REQUIRE(corpus.size() >= 8);
    for (const auto& [curve, t0] : corpus) {
        for (Side side : {Side::Plus, Side::Minus}) {
            INFO(curve.literal() << " at " << t0);
            LimitConfig tight;
            tight.angle_tol = 1e-6;
            LimitConfig loose;
            loose.angle_tol = 1e-5;
            const auto fine = one_sided_limit(curve, t0, side, tight);
            REQUIRE(is_converged(fine));
            const auto coarse = one_sided_limit(curve, t0, side, loose);
            REQUIRE(is_converged(coarse));
            CHECK(angular_distance(converged(fine), converged(coarse)) <= 2e-5);

            const LimitConfig base;
            LimitConfig shrunk;
            shrunk.h0 = base.h0 / 10.0;
            const Vec3 a = converged(one_sided_limit(curve, t0, side, base));
            const Vec3 b = converged(one_sided_limit(curve, t0, side, shrunk));
            CHECK(angular_distance(a, b) <= 10.0 * base.angle_tol);
            CHECK(std::abs(norm(a) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("converged directions are unit vectors") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> at(-1.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        const auto curve = testing::random_polynomial_curve(rng).curve();
        const double t0 = at(rng);
        for (Side side : {Side::Plus, Side::Minus}) {
            const auto o = one_sided_limit(curve, t0, side);
            if (is_converged(o)) CHECK(std::abs(norm(converged(o)) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("describe") {
    CHECK(describe(Degenerate{"side not in domain", 4}).find("side not in domain") != std::string::npos);
    CHECK(steps_used(Undetermined{"oscillating", 7}) == 7);
}

}
