#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace ldsym {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
    friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

inline constexpr double kPi = 3.14159265358979323846;

/// Reduces an angle into [0, period).
inline double wrap_angle(double a, double period) {
    double r = std::fmod(a, period);
    if (r < 0.0) r += period;
    if (r >= period) r -= period;  // fmod(-tiny) + period can round up to period
    return r;
}

/// Distance between two angles on a circle of the given period.
inline double circular_distance(double a, double b, double period) {
    double d = wrap_angle(a - b, period);
    return d > 0.5 * period ? period - d : d;
}

/// Convex hull by Andrew's monotone chain. Counter-clockwise, no collinear
/// points, first vertex is the lexicographically smallest input point.
std::vector<Vec2> convex_hull(std::span<const Vec2> points);

}  // namespace ldsym
