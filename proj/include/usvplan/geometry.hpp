#pragma once

#include <cmath>

namespace usvplan {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
};

inline double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point2& a) { return std::hypot(a.x, a.y); }

/// Euclidean distance between two points.
inline double distance(const Point2& a, const Point2& b) { return norm(b - a); }

/// Axis-aligned rectangle, min corner inclusive, max corner inclusive.
struct Rect {
    Point2 min;
    Point2 max;

    bool contains(const Point2& p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
    }
};

/// Wrap an angle to [-pi, pi).
inline double wrap_angle(double a) {
    const double two_pi = 2.0 * M_PI;
    double w = std::fmod(a + M_PI, two_pi);
    if (w < 0.0) w += two_pi;
    return w - M_PI;
}

/// Distance from point p to the closed segment [a, b].
inline double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    double t = dot(p - a, ab) / len2;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    return distance(p, a + ab * t);
}

}  // namespace usvplan
