#include "vemesh/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace vemesh {

namespace {

Circle circle_from(const Vec2& a, const Vec2& b) {
    return {(a + b) / 2.0, 0.5 * (a - b).norm()};
}

std::optional<Circle> circle_from(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double d = 2.0 * ((b - a).cross(c - a));
    if (std::abs(d) < 1e-300) return std::nullopt;
    const double a2 = a.squared_norm(), b2 = b.squared_norm(), c2 = c.squared_norm();
    const Vec2 center{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                      (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
    return Circle{center, (center - a).norm()};
}

bool in_circle(const Circle& c, const Vec2& p, double tol) {
    return (p - c.center).norm() <= c.radius + tol;
}

Circle trivial_circle(std::span<const Vec2> r, double tol) {
    switch (r.size()) {
        case 0: return {{0, 0}, 0.0};
        case 1: return {r[0], 0.0};
        case 2: return circle_from(r[0], r[1]);
        default: {
            // prefer the smallest of the two-point circles if it covers
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = i + 1; j < 3; ++j) {
                    const Circle c = circle_from(r[i], r[j]);
                    if (in_circle(c, r[3 - i - j], tol)) return c;
                }
            const auto c = circle_from(r[0], r[1], r[2]);
            if (c) return *c;
            // collinear support: widest pair
            Circle best = circle_from(r[0], r[1]);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = i + 1; j < 3; ++j)
                    best = std::max(best, circle_from(r[i], r[j]),
                                    [](const Circle& x, const Circle& y) { return x.radius < y.radius; });
            return best;
        }
    }
}

Circle welzl(std::vector<Vec2>& pts, std::size_t n, std::vector<Vec2>& support, double tol) {
    if (n == 0 || support.size() == 3) return trivial_circle(support, tol);
    const Vec2 p = pts[n - 1];
    Circle c = welzl(pts, n - 1, support, tol);
    if (in_circle(c, p, tol)) return c;
    support.push_back(p);
    c = welzl(pts, n - 1, support, tol);
    support.pop_back();
    return c;
}

}  // namespace

Circle min_enclosing_circle(std::span<const Vec2> points) {
    if (points.empty()) return {{0, 0}, 0.0};
    std::vector<Vec2> pts(points.begin(), points.end());
    double scale = 0.0;
    for (const Vec2& p : pts) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    const double tol = 1e-13 * std::max(scale, 1e-300);
    std::mt19937 rng(0x9e3779b9u);
    std::shuffle(pts.begin(), pts.end(), rng);
    std::vector<Vec2> support;
    return welzl(pts, pts.size(), support, tol);
}

Circle max_inscribed_circle(std::span<const Vec2> poly) {
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;
    for (const Vec2& p : poly) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    const double hp = polygon_diameter(poly);

    auto depth = [&](const Vec2& p) -> double {
        if (!point_in_polygon(p, poly)) return -distance_to_boundary(p, poly);
        return distance_to_boundary(p, poly);
    };

    // coarse grid seeds
    const int g = 64;
    Vec2 best{0.5 * (x0 + x1), 0.5 * (y0 + y1)};
    double best_depth = depth(best);
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            const Vec2 p{x0 + (i + 0.5) * (x1 - x0) / g, y0 + (j + 0.5) * (y1 - y0) / g};
            const double d = depth(p);
            if (d > best_depth) {
                best_depth = d;
                best = p;
            }
        }
    }

    // compass pattern search
    double step = std::max(x1 - x0, y1 - y0) / g;
    const double step_tol = 1e-8 * hp;
    while (step > step_tol) {
        bool moved = false;
        const std::array<Vec2, 8> dirs = {Vec2{1, 0}, {-1, 0}, {0, 1},  {0, -1},
                                          {1, 1},     {1, -1}, {-1, 1}, {-1, -1}};
        for (const Vec2& d : dirs) {
            const Vec2 p = best + step * d;
            const double v = depth(p);
            if (v > best_depth) {
                best_depth = v;
                best = p;
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
    return {best, std::max(best_depth, 0.0)};
}

Polygon polygon_kernel(std::span<const Vec2> poly) {
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;
    for (const Vec2& p : poly) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    Polygon region = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    const std::size_t n = poly.size();
    const double scale = std::max(x1 - x0, y1 - y0);
    for (std::size_t i = 0; i < n && !region.empty(); ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        const Vec2 t = b - a;
        const double len = t.norm();
        if (len == 0.0) continue;
        // inner side of a CCW edge: cross(t, x - a) >= 0, i.e. n.dot(x) <= b
        const Vec2 nrm{t.y / len, -t.x / len};
        region = clip_convex(region, nrm, nrm.dot(a), 1e-12 * scale);
    }
    if (region.size() < 3 || std::abs(signed_area(region)) <= 1e-24) return {};
    return region;
}

Circle chebyshev_circle(std::span<const Vec2> convex) {
    if (convex.size() < 3) return {{0, 0}, 0.0};
    // bisection on r: the polygon shrunk by r along all edge normals is
    // nonempty iff r <= chebyshev radius (convexity makes this exact)
    const std::size_t n = convex.size();
    std::vector<Vec2> normals(n);
    std::vector<double> offsets(n);
    double scale = 0.0;
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;
    for (const Vec2& p : convex) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    scale = std::max(x1 - x0, y1 - y0);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 t = convex[(i + 1) % n] - convex[i];
        const double len = t.norm();
        normals[i] = {t.y / len, -t.x / len};
        offsets[i] = normals[i].dot(convex[i]);
    }
    auto shrunk = [&](double r) -> Polygon {
        Polygon region = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
        for (std::size_t i = 0; i < n && !region.empty(); ++i)
            region = clip_convex(region, normals[i], offsets[i] - r, 0.0);
        return region;
    };
    double lo = 0.0, hi = 0.5 * scale * 1.5;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!shrunk(mid).empty())
            lo = mid;
        else
            hi = mid;
    }
    const Polygon core = shrunk(lo);
    Vec2 center = core.empty() ? vertex_mean(convex) : vertex_mean(core);
    return {center, lo};
}

PolygonMetrics compute_polygon_metrics(std::span<const Vec2> poly) {
    if (poly.size() < 3) throw InvalidPolygonError("metrics need at least 3 vertices");
    PolygonMetrics m;
    const std::size_t n = poly.size();

    m.cc = min_enclosing_circle(poly).radius;
    m.ic = max_inscribed_circle(poly).radius;
    m.cr = m.ic / m.cc;
    m.ar = polygon_area(poly);

    const Polygon kernel = polygon_kernel(poly);
    m.ke = kernel.empty() ? 0.0 : std::abs(signed_area(kernel));
    m.kar = m.ke / m.ar;

    const double perimeter = polygon_perimeter(poly);
    m.apr = 2.0 * M_PI * m.ar / (perimeter * perimeter);

    double emin = std::numeric_limits<double>::infinity(), emax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double len = (poly[(i + 1) % n] - poly[i]).norm();
        emin = std::min(emin, len);
        emax = std::max(emax, len);
    }
    m.se = emin;
    m.er = emin / emax;

    double mpd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            mpd = std::min(mpd, (poly[i] - poly[j]).norm());
    m.mpd = mpd;

    double amin = std::numeric_limits<double>::infinity(), amax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = interior_angle(poly, i);
        amin = std::min(amin, a);
        amax = std::max(amax, a);
    }
    m.ma = amin;
    m.mxa = amax;
    m.ns = static_cast<double>(n);

    m.sr = kernel.empty() ? 0.0 : chebyshev_circle(kernel).radius / m.cc;
    return m;
}

std::vector<PolygonMetrics> compute_mesh_metrics(const Mesh& mesh) {
    std::vector<PolygonMetrics> out;
    out.reserve(mesh.num_elements());
    for (std::size_t e = 0; e < mesh.num_elements(); ++e)
        out.push_back(compute_polygon_metrics(mesh.element_polygon(e)));
    return out;
}

std::string metric_name(MetricId id) {
    switch (id) {
        case MetricId::CC: return "CC";
        case MetricId::IC: return "IC";
        case MetricId::CR: return "CR";
        case MetricId::AR: return "AR";
        case MetricId::KE: return "KE";
        case MetricId::KAR: return "KAR";
        case MetricId::APR: return "APR";
        case MetricId::SE: return "SE";
        case MetricId::ER: return "ER";
        case MetricId::MPD: return "MPD";
        case MetricId::MA: return "MA";
        case MetricId::MXA: return "MXA";
        case MetricId::NS: return "NS";
        case MetricId::SR: return "SR";
    }
    return "?";
}

double metric_value(const PolygonMetrics& m, MetricId id) {
    switch (id) {
        case MetricId::CC: return m.cc;
        case MetricId::IC: return m.ic;
        case MetricId::CR: return m.cr;
        case MetricId::AR: return m.ar;
        case MetricId::KE: return m.ke;
        case MetricId::KAR: return m.kar;
        case MetricId::APR: return m.apr;
        case MetricId::SE: return m.se;
        case MetricId::ER: return m.er;
        case MetricId::MPD: return m.mpd;
        case MetricId::MA: return m.ma;
        case MetricId::MXA: return m.mxa;
        case MetricId::NS: return m.ns;
        case MetricId::SR: return m.sr;
    }
    return 0.0;
}

std::string aggregation_name(Aggregation a) {
    switch (a) {
        case Aggregation::Average: return "average";
        case Aggregation::L2: return "l2";
        case Aggregation::Max: return "max";
        case Aggregation::Min: return "min";
        case Aggregation::Worst: return "worst";
    }
    return "?";
}

double aggregate(std::span<const double> values, Aggregation strategy, MetricId metric) {
    if (values.empty()) throw std::invalid_argument("aggregate: empty value vector");
    switch (strategy) {
        case Aggregation::Average: {
            double s = 0.0;
            for (double v : values) s += v;
            return s / static_cast<double>(values.size());
        }
        case Aggregation::L2: {
            double s = 0.0;
            for (double v : values) s += v * v;
            return std::sqrt(s);
        }
        case Aggregation::Max: return *std::max_element(values.begin(), values.end());
        case Aggregation::Min: return *std::min_element(values.begin(), values.end());
        case Aggregation::Worst: {
            const bool max_is_worst = metric == MetricId::CC || metric == MetricId::MXA ||
                                      metric == MetricId::NS;
            return aggregate(values, max_is_worst ? Aggregation::Max : Aggregation::Min, metric);
        }
    }
    return 0.0;
}

std::vector<MeshMetric> aggregate_all(const std::vector<PolygonMetrics>& per_element) {
    std::vector<MeshMetric> out;
    out.reserve(kAllMetrics.size() * kAllAggregations.size());
    std::vector<double> values(per_element.size());
    for (MetricId id : kAllMetrics) {
        for (std::size_t e = 0; e < per_element.size(); ++e)
            values[e] = metric_value(per_element[e], id);
        for (Aggregation a : kAllAggregations)
            out.push_back({id, a, aggregate(values, a, id)});
    }
    return out;
}

}  // namespace vemesh
