#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace vemesh {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double squared_norm() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// A simple polygon given by its vertex cycle (counterclockwise).
using Polygon = std::vector<Vec2>;

struct InvalidPolygonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Signed area of the vertex cycle (shoelace). Positive for CCW cycles.
double signed_area(std::span<const Vec2> poly);

/// Area of a CCW simple polygon. Throws InvalidPolygonError on CW input
/// or fewer than 3 vertices.
double polygon_area(std::span<const Vec2> poly);

/// Polygon diameter h_P = max pairwise vertex distance.
double polygon_diameter(std::span<const Vec2> poly);

double polygon_perimeter(std::span<const Vec2> poly);

/// Arithmetic mean of the vertices (not the area centroid).
Vec2 vertex_mean(std::span<const Vec2> poly);

/// Area centroid of a CCW simple polygon.
Vec2 polygon_centroid(std::span<const Vec2> poly);

/// Even-odd point-in-polygon test; points on the boundary may land on
/// either side. Works for any simple polygon.
bool point_in_polygon(const Vec2& p, std::span<const Vec2> poly);

/// Distance from p to the closed segment [a, b].
double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

/// Distance from p to the polygon boundary.
double distance_to_boundary(const Vec2& p, std::span<const Vec2> poly);

/// True if the open segments (a,b) and (c,d) cross at interior points
/// (proper intersection only; shared endpoints do not count).
bool segments_properly_intersect(const Vec2& a, const Vec2& b,
                                 const Vec2& c, const Vec2& d);

/// True if the cycle has any pair of non-adjacent edges that intersect.
bool polygon_self_intersects(std::span<const Vec2> poly);

/// Clip a convex region by the half-plane n.dot(x) <= b
/// (Sutherland-Hodgman step). Returns the clipped convex polygon.
Polygon clip_convex(const Polygon& region, const Vec2& n, double b,
                    double tol = 1e-12);

/// Interior angle at vertex i of a CCW polygon, in (0, 2*pi).
/// Collinear (hanging) vertices give exactly pi.
double interior_angle(std::span<const Vec2> poly, std::size_t i);

/// Ear-clipping triangulation of a simple CCW polygon. Returns vertex
/// index triples into the input cycle.
std::vector<std::array<std::size_t, 3>> ear_clip(std::span<const Vec2> poly);

}  // namespace vemesh
