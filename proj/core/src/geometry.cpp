#include "vemesh/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace vemesh {

double signed_area(std::span<const Vec2> poly) {
    const std::size_t n = poly.size();
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        twice += a.cross(b);
    }
    return 0.5 * twice;
}

double polygon_area(std::span<const Vec2> poly) {
    if (poly.size() < 3) throw InvalidPolygonError("polygon has fewer than 3 vertices");
    const double a = signed_area(poly);
    if (a <= 0.0) throw InvalidPolygonError("polygon is not counterclockwise");
    return a;
}

double polygon_diameter(std::span<const Vec2> poly) {
    if (poly.size() < 3) throw InvalidPolygonError("polygon has fewer than 3 vertices");
    double best = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        for (std::size_t j = i + 1; j < poly.size(); ++j)
            best = std::max(best, (poly[i] - poly[j]).squared_norm());
    return std::sqrt(best);
}

double polygon_perimeter(std::span<const Vec2> poly) {
    double p = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        p += (poly[(i + 1) % poly.size()] - poly[i]).norm();
    return p;
}

Vec2 vertex_mean(std::span<const Vec2> poly) {
    Vec2 m;
    for (const Vec2& v : poly) m += v;
    return m / static_cast<double>(poly.size());
}

Vec2 polygon_centroid(std::span<const Vec2> poly) {
    const std::size_t n = poly.size();
    double a2 = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        const double w = p.cross(q);
        a2 += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    return {cx / (3.0 * a2), cy / (3.0 * a2)};
}

bool point_in_polygon(const Vec2& p, std::span<const Vec2> poly) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xint) inside = !inside;
        }
    }
    return inside;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 d = b - a;
    const double len2 = d.squared_norm();
    if (len2 == 0.0) return (p - a).norm();
    double t = (p - a).dot(d) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return (p - (a + t * d)).norm();
}

double distance_to_boundary(const Vec2& p, std::span<const Vec2> poly) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
        best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
    return best;
}

namespace {

int orient_sign(const Vec2& a, const Vec2& b, const Vec2& c) {
    // long double gives enough slack for the coordinate ranges used here
    const long double v = (static_cast<long double>(b.x) - a.x) * (static_cast<long double>(c.y) - a.y) -
                          (static_cast<long double>(b.y) - a.y) * (static_cast<long double>(c.x) - a.x);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

}  // namespace

bool segments_properly_intersect(const Vec2& a, const Vec2& b,
                                 const Vec2& c, const Vec2& d) {
    const int o1 = orient_sign(a, b, c);
    const int o2 = orient_sign(a, b, d);
    const int o3 = orient_sign(c, d, a);
    const int o4 = orient_sign(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

bool polygon_self_intersects(std::span<const Vec2> poly) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            const Vec2& c = poly[j];
            const Vec2& d = poly[(j + 1) % n];
            if (segments_properly_intersect(a, b, c, d)) return true;
        }
    }
    return false;
}

Polygon clip_convex(const Polygon& region, const Vec2& n, double b, double tol) {
    Polygon out;
    const std::size_t m = region.size();
    if (m == 0) return out;
    out.reserve(m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2& p = region[i];
        const Vec2& q = region[(i + 1) % m];
        const double dp = n.dot(p) - b;
        const double dq = n.dot(q) - b;
        const bool pin = dp <= tol;
        const bool qin = dq <= tol;
        if (pin) out.push_back(p);
        if (pin != qin) {
            const double t = dp / (dp - dq);
            out.push_back(p + t * (q - p));
        }
    }
    return out;
}

double interior_angle(std::span<const Vec2> poly, std::size_t i) {
    const std::size_t n = poly.size();
    const Vec2& prev = poly[(i + n - 1) % n];
    const Vec2& cur = poly[i];
    const Vec2& next = poly[(i + 1) % n];
    const Vec2 d1 = cur - prev;
    const Vec2 d2 = next - cur;
    // turn angle in (-pi, pi]; interior angle = pi - turn for CCW cycles
    const double turn = std::atan2(d1.cross(d2), d1.dot(d2));
    return M_PI - turn;
}

std::vector<std::array<std::size_t, 3>> ear_clip(std::span<const Vec2> poly) {
    const std::size_t n = poly.size();
    if (n < 3) throw InvalidPolygonError("cannot triangulate fewer than 3 vertices");
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;

    std::vector<std::array<std::size_t, 3>> tris;
    tris.reserve(n - 2);

    const double diam = polygon_diameter(poly);
    const double area_tol = 1e-15 * diam * diam;

    auto is_ear = [&](std::size_t a, std::size_t b, std::size_t c) {
        const Vec2& pa = poly[idx[a]];
        const Vec2& pb = poly[idx[b]];
        const Vec2& pc = poly[idx[c]];
        if ((pb - pa).cross(pc - pa) <= area_tol) return false;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (k == a || k == b || k == c) continue;
            const Vec2& p = poly[idx[k]];
            const double s1 = (pb - pa).cross(p - pa);
            const double s2 = (pc - pb).cross(p - pb);
            const double s3 = (pa - pc).cross(p - pc);
            if (s1 > 0 && s2 > 0 && s3 > 0) return false;
        }
        return true;
    };

    while (idx.size() > 3) {
        bool progressed = false;
        for (std::size_t b = 0; b < idx.size(); ++b) {
            const std::size_t a = (b + idx.size() - 1) % idx.size();
            const std::size_t c = (b + 1) % idx.size();
            if (is_ear(a, b, c)) {
                tris.push_back({idx[a], idx[b], idx[c]});
                idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(b));
                progressed = true;
                break;
            }
        }
        if (!progressed) {
            // drop a collinear (hanging) vertex; it does not change the geometry
            for (std::size_t b = 0; b < idx.size(); ++b) {
                const std::size_t a = (b + idx.size() - 1) % idx.size();
                const std::size_t c = (b + 1) % idx.size();
                const Vec2 d1 = poly[idx[b]] - poly[idx[a]];
                const Vec2 d2 = poly[idx[c]] - poly[idx[b]];
                if (std::abs(d1.cross(d2)) <= 1e-12 * d1.norm() * d2.norm() && d1.dot(d2) > 0) {
                    idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(b));
                    progressed = true;
                    break;
                }
            }
            if (!progressed) throw InvalidPolygonError("ear clipping failed: no ear found");
        }
    }
    const Vec2 d1 = poly[idx[1]] - poly[idx[0]];
    const Vec2 d2 = poly[idx[2]] - poly[idx[1]];
    if (d1.cross(d2) > area_tol) tris.push_back({idx[0], idx[1], idx[2]});
    return tris;
}

}  // namespace vemesh
