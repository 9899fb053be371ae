#pragma once

#include <algorithm>
#include <cmath>

namespace unitsecant {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }

    constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// hypot keeps tiny chords (h^3 at h ~ 1e-17) from underflowing
inline double norm(const Vec3& v) { return std::hypot(v.x, v.y, v.z); }

inline Vec3 normalized(const Vec3& v) { return v / norm(v); }

/// Angle between two unit vectors, with the dot product clamped to [-1, 1].
inline double angular_distance(const Vec3& u, const Vec3& v) {
    return std::acos(std::clamp(dot(u, v), -1.0, 1.0));
}

}  // namespace unitsecant
