#pragma once

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "unitsecant/curve.hpp"

namespace testing {

/// Coefficients c[0] + c[1] t + ... with an exact text form and a closed-form derivative.
struct Polynomial {
    std::vector<double> coeffs;

    double value(double t) const {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
        return acc;
    }
    double derivative(double t) const {
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * t + static_cast<double>(k) * coeffs[k];
        return acc;
    }
    std::string text() const {
        std::string out;
        char buf[40];
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", coeffs[k]);
            if (k) out += " + ";
            out += "(" + std::string(buf) + ")";
            if (k >= 1) out += "*t";
            if (k >= 2) out += "^" + std::to_string(k);
        }
        return out;
    }
};

inline Polynomial random_polynomial(std::mt19937_64& rng, int max_degree = 5, double bound = 2.0) {
    std::uniform_int_distribution<int> degree(0, max_degree);
    std::uniform_real_distribution<double> coeff(-bound, bound);
    Polynomial p;
    p.coeffs.resize(static_cast<std::size_t>(degree(rng)) + 1);
    for (double& c : p.coeffs) c = coeff(rng);
    return p;
}

struct PolynomialCurve {
    Polynomial x, y, z;

    unitsecant::Curve curve() const {
        return unitsecant::Curve::parse("x=" + x.text() + "; y=" + y.text() + "; z=" + z.text());
    }
    unitsecant::Vec3 derivative(double t) const { return {x.derivative(t), y.derivative(t), z.derivative(t)}; }
};

inline PolynomialCurve random_polynomial_curve(std::mt19937_64& rng) {
    return {random_polynomial(rng), random_polynomial(rng), random_polynomial(rng)};
}

inline double residual(const unitsecant::Vec3& u, const unitsecant::Vec3& v) {
    return unitsecant::norm(unitsecant::cross(u, v));
}

}  // namespace testing
