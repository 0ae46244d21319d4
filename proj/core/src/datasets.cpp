#include "vemesh/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <unordered_map>

#include "vemesh/metrics.hpp"

namespace vemesh {

namespace {

constexpr double kSnapTol = 1e-12;

/// Accumulates vertices with coordinate snapping and polygons by value.
class MeshBuilder {
public:
    std::size_t add_vertex(const Vec2& p) {
        const long long qx = std::llround(p.x / kSnapTol);
        const long long qy = std::llround(p.y / kSnapTol);
        for (long long dx = -1; dx <= 1; ++dx) {
            for (long long dy = -1; dy <= 1; ++dy) {
                const auto it = lookup_.find(key(qx + dx, qy + dy));
                if (it == lookup_.end()) continue;
                const Vec2& q = vertices_[it->second];
                if (std::abs(q.x - p.x) <= kSnapTol && std::abs(q.y - p.y) <= kSnapTol)
                    return it->second;
            }
        }
        vertices_.push_back(p);
        lookup_[key(qx, qy)] = vertices_.size() - 1;
        return vertices_.size() - 1;
    }

    void add_polygon(const Polygon& poly) {
        std::vector<std::size_t> cycle;
        cycle.reserve(poly.size());
        for (const Vec2& p : poly) {
            const std::size_t idx = add_vertex(p);
            if (!cycle.empty() && cycle.back() == idx) continue;  // collapsed by snapping
            cycle.push_back(idx);
        }
        while (cycle.size() > 1 && cycle.front() == cycle.back()) cycle.pop_back();
        if (cycle.size() < 3) throw GenerationError("builder: polygon collapsed under snapping");
        elements_.push_back(std::move(cycle));
    }

    Mesh take(int level) {
        Mesh mesh;
        mesh.vertices = std::move(vertices_);
        mesh.elements = std::move(elements_);
        mesh.level = level;
        normalize_orientation(mesh);
        rebuild_boundary_flags(mesh);
        return mesh;
    }

private:
    static std::uint64_t key(long long qx, long long qy) {
        return static_cast<std::uint64_t>(qx) * 0x9e3779b97f4a7c15ULL ^
               static_cast<std::uint64_t>(qy);
    }
    std::vector<Vec2> vertices_;
    std::vector<std::vector<std::size_t>> elements_;
    std::unordered_map<std::uint64_t, std::size_t> lookup_;
};

/// Insert any mesh vertex lying strictly inside an element edge into
/// that element's cycle (hanging-node conformity repair after mirroring).
void repair_conformity(Mesh& mesh) {
    const std::size_t nv = mesh.num_vertices();
    std::vector<std::size_t> by_x(nv);
    for (std::size_t i = 0; i < nv; ++i) by_x[i] = i;
    std::sort(by_x.begin(), by_x.end(), [&](std::size_t a, std::size_t b) {
        return mesh.vertices[a].x < mesh.vertices[b].x;
    });
    std::vector<double> xs(nv);
    for (std::size_t i = 0; i < nv; ++i) xs[i] = mesh.vertices[by_x[i]].x;

    const double tol = 10 * kSnapTol;
    for (auto& cycle : mesh.elements) {
        std::vector<std::size_t> repaired;
        const std::size_t n = cycle.size();
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t ia = cycle[i];
            const std::size_t ib = cycle[(i + 1) % n];
            const Vec2& a = mesh.vertices[ia];
            const Vec2& b = mesh.vertices[ib];
            repaired.push_back(ia);
            const Vec2 d = b - a;
            const double len2 = d.squared_norm();
            const double x_lo = std::min(a.x, b.x) - tol;
            const double x_hi = std::max(a.x, b.x) + tol;
            const double y_lo = std::min(a.y, b.y) - tol;
            const double y_hi = std::max(a.y, b.y) + tol;
            std::vector<std::pair<double, std::size_t>> inside;
            auto lo = std::lower_bound(xs.begin(), xs.end(), x_lo);
            auto hi = std::upper_bound(xs.begin(), xs.end(), x_hi);
            for (auto it = lo; it != hi; ++it) {
                const std::size_t v = by_x[static_cast<std::size_t>(it - xs.begin())];
                if (v == ia || v == ib) continue;
                const Vec2& p = mesh.vertices[v];
                if (p.y < y_lo || p.y > y_hi) continue;
                const double t = (p - a).dot(d) / len2;
                if (t <= 1e-9 || t >= 1.0 - 1e-9) continue;
                const Vec2 foot = a + t * d;
                if ((p - foot).norm() <= tol) inside.emplace_back(t, v);
            }
            std::sort(inside.begin(), inside.end());
            for (const auto& [t, v] : inside) repaired.push_back(v);
        }
        cycle = std::move(repaired);
    }
}

}  // namespace

ScalingIndicators scaling_indicators(const Mesh& mesh) {
    if (mesh.elements.empty()) throw EmptyMeshError("scaling_indicators: empty mesh");
    double amin = std::numeric_limits<double>::infinity(), amax = 0.0;
    double emin = amin, emax = 0.0;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const Polygon poly = mesh.element_polygon(e);
        const double area = polygon_area(poly);
        amin = std::min(amin, area);
        amax = std::max(amax, area);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const double len = (poly[(i + 1) % poly.size()] - poly[i]).norm();
            emin = std::min(emin, len);
            emax = std::max(emax, len);
        }
    }
    return {amax / amin, emax / emin};
}

Mesh mirror(const Mesh& mesh) {
    MeshBuilder builder;
    const std::array<Vec2, 4> offsets = {Vec2{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}, {0.5, 0.5}};
    for (const Vec2& offset : offsets) {
        for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
            Polygon poly = mesh.element_polygon(e);
            for (Vec2& p : poly) p = 0.5 * p + offset;
            builder.add_polygon(poly);
        }
    }
    Mesh out = builder.take(mesh.level);
    repair_conformity(out);
    rebuild_boundary_flags(out);
    return out;
}

// ---------------------------------------------------------------------------
// mirroring dataset base meshes

namespace {

Mesh jenga_base(int splits) {
    // three horizontal bands; the middle one split vertically in half,
    // then the left-most middle rectangle halved once per step
    std::vector<double> xs = {0.0};
    xs.push_back(std::pow(0.5, splits + 1));
    for (int j = splits; j >= 1; --j) xs.push_back(std::pow(0.5, j));
    xs.push_back(1.0);

    MeshBuilder builder;
    Polygon bottom = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.25}};
    for (std::size_t i = xs.size() - 1; i-- > 0;) bottom.push_back({xs[i], 0.25});
    builder.add_polygon(bottom);

    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        builder.add_polygon({{xs[i], 0.25}, {xs[i + 1], 0.25}, {xs[i + 1], 0.75}, {xs[i], 0.75}});

    Polygon top;
    for (double x : xs) top.push_back({x, 0.75});
    top.push_back({1.0, 1.0});
    top.push_back({0.0, 1.0});
    builder.add_polygon(top);
    return builder.take(0);
}

Mesh slices_base(int steps) {
    std::vector<double> ts;
    for (int i = 1; i <= steps + 2; ++i) {
        ts.push_back(std::pow(0.5, i));
        ts.push_back(1.0 - std::pow(0.5, i));
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    const auto diag = [](double t) { return Vec2{t, 1.0 - t}; };
    MeshBuilder builder;
    builder.add_polygon({{0.0, 0.0}, diag(ts.front()), {1.0, 1.0}, {0.0, 1.0}});
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        builder.add_polygon({{0.0, 0.0}, diag(ts[i + 1]), {1.0, 1.0}, diag(ts[i])});
    builder.add_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, diag(ts.back())});
    return builder.take(0);
}

Mesh ulike_base(int steps) {
    const int m = 1 << steps;  // number of U-shaped polylines
    const double c = 1.0 / (2.0 * m + 2.0);
    MeshBuilder builder;
    auto ring = [&](double dout, double din) -> Polygon {
        if (dout == 0.0) {
            return {{0.0, 0.0},       {1.0, 0.0}, {1.0, 1.0}, {1.0 - din, 1.0},
                    {1.0 - din, din}, {din, din}, {din, 1.0}, {0.0, 1.0}};
        }
        return {{dout, dout},     {1.0 - dout, dout}, {1.0 - dout, 1.0}, {1.0 - din, 1.0},
                {1.0 - din, din}, {din, din},         {din, 1.0},        {dout, 1.0}};
    };
    for (int j = 0; j < m; ++j) builder.add_polygon(ring(j * c, (j + 1) * c));
    const double dm = m * c;
    builder.add_polygon({{dm, dm}, {1.0 - dm, dm}, {1.0 - dm, 1.0}, {dm, 1.0}});
    return builder.take(0);
}

Mesh mirrored(Mesh base, int times, int level) {
    for (int i = 0; i < times; ++i) base = mirror(base);
    base.level = level;
    return base;
}

}  // namespace

Mesh gen_jenga(int n) {
    if (n < 0) throw ParameterError("gen_jenga: level must be >= 0");
    return mirrored(jenga_base(n), n, n);
}

Mesh gen_slices(int n) {
    if (n < 0) throw ParameterError("gen_slices: level must be >= 0");
    return mirrored(slices_base(n), n, n);
}

Mesh gen_ulike(int n) {
    if (n < 0) throw ParameterError("gen_ulike: level must be >= 0");
    return mirrored(ulike_base(n), n, n);
}

Mesh gen_multiple(const std::string& kind, int n) {
    if (n < 0) throw ParameterError("gen_multiple: level must be >= 0");
    if (kind == "jenga4") return mirrored(jenga_base(4 * n), n, n);
    if (kind == "slices4") return mirrored(slices_base(4 * n), n, n);
    if (kind == "ulike4") return mirrored(ulike_base(4 * n), n, n);
    throw ParameterError("gen_multiple: kind must be jenga4, slices4 or ulike4");
}

// ---------------------------------------------------------------------------
// reference dataset: Poisson-disk sampling + Delaunay triangulation

namespace {

std::vector<Vec2> poisson_disk_samples(double radius, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    std::vector<Vec2> points;
    // boundary first: corners plus 1D Poisson spacing in [r, 1.35r]
    auto sample_side = [&](const Vec2& from, const Vec2& to) {
        const double len = (to - from).norm();
        double s = 0.0;
        while (true) {
            s += radius * (1.0 + 0.35 * u01(rng));
            if (s >= len - 0.5 * radius) break;
            points.push_back(from + (s / len) * (to - from));
        }
    };
    points.push_back({0, 0});
    points.push_back({1, 0});
    points.push_back({1, 1});
    points.push_back({0, 1});
    sample_side({0, 0}, {1, 0});
    sample_side({1, 0}, {1, 1});
    sample_side({1, 1}, {0, 1});
    sample_side({0, 1}, {0, 0});

    // Bridson dart throwing for the interior
    const double cell = radius / std::sqrt(2.0);
    const int res = static_cast<int>(std::ceil(1.0 / cell));
    std::vector<int> grid(static_cast<std::size_t>(res) * res, -1);
    auto cell_of = [&](const Vec2& p) {
        const int i = std::clamp(static_cast<int>(p.x / cell), 0, res - 1);
        const int j = std::clamp(static_cast<int>(p.y / cell), 0, res - 1);
        return std::pair<int, int>{i, j};
    };
    auto far_enough = [&](const Vec2& p) {
        const auto [ci, cj] = cell_of(p);
        for (int i = std::max(0, ci - 2); i <= std::min(res - 1, ci + 2); ++i)
            for (int j = std::max(0, cj - 2); j <= std::min(res - 1, cj + 2); ++j) {
                const int idx = grid[static_cast<std::size_t>(j) * res + i];
                if (idx >= 0 && (points[static_cast<std::size_t>(idx)] - p).norm() < radius)
                    return false;
            }
        return true;
    };
    auto register_point = [&](std::size_t idx) {
        const auto [ci, cj] = cell_of(points[idx]);
        grid[static_cast<std::size_t>(cj) * res + ci] = static_cast<int>(idx);
    };
    for (std::size_t i = 0; i < points.size(); ++i) register_point(i);

    std::vector<std::size_t> active(points.size());
    for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
    while (!active.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, active.size() - 1);
        const std::size_t slot = pick(rng);
        const Vec2 base = points[active[slot]];
        bool placed = false;
        for (int attempt = 0; attempt < 30; ++attempt) {
            const double rho = radius * (1.0 + u01(rng));
            const double phi = 2.0 * M_PI * u01(rng);
            const Vec2 cand = base + Vec2{rho * std::cos(phi), rho * std::sin(phi)};
            if (cand.x <= 0.0 || cand.x >= 1.0 || cand.y <= 0.0 || cand.y >= 1.0) continue;
            if (!far_enough(cand)) continue;
            points.push_back(cand);
            register_point(points.size() - 1);
            active.push_back(points.size() - 1);
            placed = true;
            break;
        }
        if (!placed) {
            active[slot] = active.back();
            active.pop_back();
        }
    }
    return points;
}

struct DelaunayTriangle {
    std::size_t a, b, c;
};

bool in_circumcircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
    const long double ax = a.x - p.x, ay = a.y - p.y;
    const long double bx = b.x - p.x, by = b.y - p.y;
    const long double cx = c.x - p.x, cy = c.y - p.y;
    const long double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
                            (bx * bx + by * by) * (ax * cy - cx * ay) +
                            (cx * cx + cy * cy) * (ax * by - bx * ay);
    return det > 0;  // assumes (a,b,c) is CCW
}

std::vector<DelaunayTriangle> bowyer_watson(std::vector<Vec2>& points, std::uint64_t seed) {
    const std::size_t n = points.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ULL);
    std::shuffle(order.begin(), order.end(), rng);

    const std::size_t s0 = points.size();
    points.push_back({-100.0, -100.0});
    points.push_back({300.0, -100.0});
    points.push_back({-100.0, 300.0});
    std::vector<DelaunayTriangle> tris = {{s0, s0 + 1, s0 + 2}};

    for (const std::size_t pi : order) {
        const Vec2& p = points[pi];
        std::vector<DelaunayTriangle> keep;
        std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> border;
        keep.reserve(tris.size() + 3);
        for (const DelaunayTriangle& t : tris) {
            if (in_circumcircle(points[t.a], points[t.b], points[t.c], p)) {
                const std::array<std::pair<std::size_t, std::size_t>, 3> edges = {
                    std::pair{t.a, t.b}, {t.b, t.c}, {t.c, t.a}};
                for (const auto& [ea, eb] : edges) {
                    const auto key = std::minmax(ea, eb);
                    auto it = border.find({key.first, key.second});
                    if (it == border.end())
                        border[{key.first, key.second}] = {ea, eb};
                    else
                        border.erase(it);  // interior edge of the cavity
                }
            } else {
                keep.push_back(t);
            }
        }
        for (const auto& [key, directed] : border)
            keep.push_back({directed.first, directed.second, pi});
        tris = std::move(keep);
    }

    std::vector<DelaunayTriangle> out;
    for (const DelaunayTriangle& t : tris)
        if (t.a < s0 && t.b < s0 && t.c < s0) out.push_back(t);
    points.resize(s0);
    return out;
}

}  // namespace

Mesh gen_triangle(int n, std::uint64_t seed) {
    if (n < 0) throw ParameterError("gen_triangle: level must be >= 0");
    const double radius = 0.25 / std::pow(2.0, n);
    std::vector<Vec2> points = poisson_disk_samples(radius, seed + static_cast<std::uint64_t>(n));
    const std::vector<DelaunayTriangle> tris = bowyer_watson(points, seed);
    MeshBuilder builder;
    for (const DelaunayTriangle& t : tris) {
        Polygon poly = {points[t.a], points[t.b], points[t.c]};
        if (signed_area(poly) < 0.0) std::reverse(poly.begin(), poly.end());
        builder.add_polygon(poly);
    }
    return builder.take(n);
}

// ---------------------------------------------------------------------------
// complement filling for the hybrid and parametric meshes

namespace {

/// A complement region to fill with triangles: its boundary polylines
/// (all edges protected, never subdivided), an interior membership
/// predicate, and the spacing range of the graded interior sampling.
struct RegionSpec {
    std::vector<Polygon> loops;
    std::function<bool(const Vec2&)> inside;
    double r_lo = 0.01;
    double r_hi = 0.1;
    std::uint64_t seed = 1;
};

/// Fill the region with a Delaunay triangulation of its boundary
/// vertices plus graded Poisson-disk samples. Every protected edge has
/// interior points on one side only, so it always survives into the
/// triangulation; this is verified and a GenerationError is raised
/// otherwise.
void fill_region(const RegionSpec& spec, std::vector<Polygon>& out, std::size_t region_id) {
    std::vector<Vec2> points;
    std::vector<std::pair<Vec2, Vec2>> walls;
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;
    for (const Polygon& loop : spec.loops) {
        for (std::size_t i = 0; i < loop.size(); ++i) {
            points.push_back(loop[i]);
            walls.emplace_back(loop[i], loop[(i + 1) % loop.size()]);
            x0 = std::min(x0, loop[i].x);
            x1 = std::max(x1, loop[i].x);
            y0 = std::min(y0, loop[i].y);
            y1 = std::max(y1, loop[i].y);
        }
    }
    const std::size_t n_boundary = points.size();

    auto boundary_distance = [&](const Vec2& p) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& [a, b] : walls) d = std::min(d, point_segment_distance(p, a, b));
        return d;
    };

    // graded dart throwing: spacing grows with the distance to the walls
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
    int failures = 0;
    while (failures < 4000 && points.size() < n_boundary + 20000) {
        const Vec2 p{ux(rng), uy(rng)};
        if (!spec.inside(p)) {
            ++failures;
            continue;
        }
        const double d = boundary_distance(p);
        const double r = std::clamp(0.9 * d, spec.r_lo, spec.r_hi);
        if (d < 0.75 * r) {
            ++failures;
            continue;
        }
        bool ok = true;
        for (std::size_t q = n_boundary; q < points.size() && ok; ++q) {
            const double rq = std::clamp(0.9 * boundary_distance(points[q]), spec.r_lo, spec.r_hi);
            if ((points[q] - p).norm() < 0.85 * std::min(r, rq)) ok = false;
        }
        if (!ok) {
            ++failures;
            continue;
        }
        points.push_back(p);
        failures = 0;
    }

    const std::vector<DelaunayTriangle> tris = bowyer_watson(points, spec.seed);
    std::vector<Polygon> kept;
    for (const DelaunayTriangle& t : tris) {
        Polygon tri = {points[t.a], points[t.b], points[t.c]};
        if (signed_area(tri) < 0.0) std::reverse(tri.begin(), tri.end());
        const Vec2 centroid = (tri[0] + tri[1] + tri[2]) / 3.0;
        if (spec.inside(centroid)) kept.push_back(tri);
    }

    const double tol = 10 * kSnapTol;
    for (const auto& [a, b] : walls) {
        bool found = false;
        for (const Polygon& tri : kept) {
            for (std::size_t j = 0; j < 3 && !found; ++j) {
                const Vec2& p = tri[j];
                const Vec2& q = tri[(j + 1) % 3];
                if (((p - a).norm() <= tol && (q - b).norm() <= tol) ||
                    ((p - b).norm() <= tol && (q - a).norm() <= tol))
                    found = true;
            }
            if (found) break;
        }
        if (!found) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "fill_region: protected edge (%.12g,%.12g)-(%.12g,%.12g) lost in "
                          "triangulation (polygon %zu)",
                          a.x, a.y, b.x, b.y, region_id);
            throw GenerationError(buf);
        }
    }
    out.insert(out.end(), kept.begin(), kept.end());
}

Polygon map_into(const Polygon& local, const Vec2& origin, double scale) {
    Polygon out;
    out.reserve(local.size());
    for (const Vec2& p : local) out.push_back(origin + scale * p);
    return out;
}

Polygon rectangle(const Vec2& origin, double width, double height) {
    return {origin, origin + Vec2{width, 0}, origin + Vec2{width, height},
            origin + Vec2{0, height}};
}

}  // namespace

// ---------------------------------------------------------------------------
// hybrid datasets

namespace {

/// Ten-vertex axis-aligned spiral occupying [0,1]^2 in local
/// coordinates, wall thickness w, opening on the left side. The interior
/// courtyard makes it non-star-shaped.
Polygon maze_polygon(double w) {
    if (w <= 0.0 || w >= 0.25)
        throw ParameterError("maze polygon: wall thickness must be in (0, 0.25)");
    return {{0, 0},         {1, 0},     {1, 1},     {0, 1},         {0, 1 - w},
            {1 - w, 1 - w}, {1 - w, w}, {w, w},     {w, 1 - 2 * w}, {0, 1 - 2 * w}};
}

/// One hybrid cell: the initial polygon plus a graded triangle fill of
/// the cell complement, every triangle no larger than the polygon.
void fill_hybrid_cell(MeshBuilder& builder, const Polygon& cell, const Polygon& initial,
                      std::uint64_t seed, std::size_t cell_id) {
    builder.add_polygon(initial);
    const double target = polygon_area(initial);

    double longest = 0.0;
    for (std::size_t i = 0; i < cell.size(); ++i)
        longest = std::max(longest, (cell[(i + 1) % cell.size()] - cell[i]).norm());
    for (std::size_t i = 0; i < initial.size(); ++i)
        longest = std::max(longest, (initial[(i + 1) % initial.size()] - initial[i]).norm());

    RegionSpec spec;
    spec.loops = {cell, initial};
    spec.inside = [&cell, &initial](const Vec2& p) {
        return point_in_polygon(p, cell) && !point_in_polygon(p, initial);
    };
    spec.r_lo = 0.9 * 2.0 * target / longest;
    spec.r_hi = std::max(std::sqrt(1.5 * target), spec.r_lo);
    spec.seed = seed;

    std::vector<Polygon> fill;
    fill_region(spec, fill, cell_id);
    for (const Polygon& tri : fill) builder.add_polygon(tri);
}

}  // namespace

Mesh gen_maze(int n) {
    if (n < 0) throw ParameterError("gen_maze: level must be >= 0");
    const int g = n + 1;
    const double cell = 1.0 / g;
    const double q = 0.6;  // box fraction of the cell
    const double w = 0.24 / std::pow(2.0, n);
    const Polygon maze_local = maze_polygon(w);

    MeshBuilder builder;
    for (int gi = 0; gi < g; ++gi) {
        for (int gj = 0; gj < g; ++gj) {
            const Vec2 cell_origin{gi * cell, gj * cell};
            const Vec2 box_origin = cell_origin + Vec2{(1 - q) / 2 * cell, (1 - q) / 2 * cell};
            const Polygon maze = map_into(maze_local, box_origin, q * cell);
            fill_hybrid_cell(builder, rectangle(cell_origin, cell, cell), maze,
                             kDefaultSeed + static_cast<std::uint64_t>(gi * g + gj),
                             static_cast<std::size_t>(gi * g + gj));
        }
    }
    return builder.take(n);
}

Mesh gen_star(int n) {
    if (n < 0) throw ParameterError("gen_star: level must be >= 0");
    const int g = n + 1;
    const double cell = 1.0 / g;
    const int spikes = 4 + 2 * n;
    const double outer_radius = 0.42 * cell;
    const double inner_radius = outer_radius / (n + 2.0);

    MeshBuilder builder;
    for (int gi = 0; gi < g; ++gi) {
        for (int gj = 0; gj < g; ++gj) {
            const Vec2 center{(gi + 0.5) * cell, (gj + 0.5) * cell};
            Polygon star;
            for (int s = 0; s < spikes; ++s) {
                const double a_tip = 2.0 * M_PI * s / spikes + M_PI / (2.0 * spikes);
                const double a_in = a_tip + M_PI / spikes;
                star.push_back(center + outer_radius * Vec2{std::cos(a_tip), std::sin(a_tip)});
                star.push_back(center + inner_radius * Vec2{std::cos(a_in), std::sin(a_in)});
            }
            fill_hybrid_cell(builder, rectangle({gi * cell, gj * cell}, cell, cell), star,
                             kDefaultSeed + static_cast<std::uint64_t>(gi * g + gj),
                             static_cast<std::size_t>(gi * g + gj));
        }
    }
    return builder.take(n);
}

// ---------------------------------------------------------------------------
// parametric polygon family

ParametricClass parse_parametric_class(const std::string& name) {
    if (name == "maze") return ParametricClass::Maze;
    if (name == "star") return ParametricClass::Star;
    if (name == "comb") return ParametricClass::Comb;
    if (name == "zeta") return ParametricClass::Zeta;
    if (name == "u-like") return ParametricClass::ULike;
    if (name == "n-sides") return ParametricClass::NSides;
    if (name == "convexity") return ParametricClass::Convexity;
    if (name == "isotropy") return ParametricClass::Isotropy;
    throw ParameterError("unknown parametric class '" + name + "'");
}

std::string parametric_class_name(ParametricClass cls) {
    switch (cls) {
        case ParametricClass::Maze: return "maze";
        case ParametricClass::Star: return "star";
        case ParametricClass::Comb: return "comb";
        case ParametricClass::Zeta: return "zeta";
        case ParametricClass::ULike: return "u-like";
        case ParametricClass::NSides: return "n-sides";
        case ParametricClass::Convexity: return "convexity";
        case ParametricClass::Isotropy: return "isotropy";
    }
    throw ParameterError("unknown parametric class");
}

namespace {

Polygon parametric_polygon(ParametricClass cls, double t) {
    switch (cls) {
        case ParametricClass::Maze:
            return maze_polygon(0.24 - 0.23 * t);
        case ParametricClass::Star: {
            const int spikes = 8;
            const double R = 0.5;
            const double r = R * (0.95 - 0.87 * t);
            Polygon star;
            for (int s = 0; s < spikes; ++s) {
                const double a_tip = 2.0 * M_PI * s / spikes + M_PI / (2.0 * spikes);
                const double a_in = a_tip + M_PI / spikes;
                star.push_back(Vec2{0.5, 0.5} + R * Vec2{std::cos(a_tip), std::sin(a_tip)});
                star.push_back(Vec2{0.5, 0.5} + r * Vec2{std::cos(a_in), std::sin(a_in)});
            }
            return star;
        }
        case ParametricClass::Comb: {
            const int teeth = 6;
            const double pitch = 1.0 / (2 * teeth - 1);
            const double y_tip = 0.95;
            const double y_slot = y_tip - 0.05 - 0.55 * t;
            Polygon comb = {{0, 0}, {1, 0}, {1, y_tip}};
            for (int gap = teeth - 1; gap >= 1; --gap) {
                const double x_hi = (2 * gap) * pitch;
                const double x_lo = (2 * gap - 1) * pitch;
                comb.push_back({x_hi, y_tip});
                comb.push_back({x_hi, y_slot});
                comb.push_back({x_lo, y_slot});
                comb.push_back({x_lo, y_tip});
            }
            comb.push_back({0, y_tip});
            return comb;
        }
        case ParametricClass::Zeta: {
            const double a = 0.28 - 0.26 * t;
            const double da = 0.15 + 0.55 * t;
            return {{0, 0},      {1, 0}, {1, a},     {da, a},         {1, 1 - a},
                    {1, 1},      {0, 1}, {0, 1 - a}, {1 - da, 1 - a}, {0, a}};
        }
        case ParametricClass::ULike: {
            const double w = 0.25;
            const double d = 0.08 + 0.87 * t;
            return {{0, 0},         {1, 0},     {1, 1}, {1 - w, 1},
                    {1 - w, 1 - d}, {w, 1 - d}, {w, 1}, {0, 1}};
        }
        case ParametricClass::NSides: {
            const int m = 3 + static_cast<int>(std::lround(57.0 * t));
            Polygon poly;
            for (int i = 0; i < m; ++i) {
                const double a = 2.0 * M_PI * i / m + 0.3;
                poly.push_back(Vec2{0.5, 0.5} + 0.5 * Vec2{std::cos(a), std::sin(a)});
            }
            return poly;
        }
        case ParametricClass::Convexity: {
            Polygon hex;
            for (int i = 0; i < 6; ++i) {
                const double a = M_PI / 2.0 + 2.0 * M_PI * i / 6.0;
                hex.push_back(Vec2{0.5, 0.5} + 0.5 * Vec2{std::cos(a), std::sin(a)});
            }
            const double lambda = 1.0 - 1.8 * t;
            hex[3] = Vec2{0.5, 0.5} + lambda * (hex[3] - Vec2{0.5, 0.5});
            return hex;
        }
        case ParametricClass::Isotropy: {
            const double h = 1.0 - 0.94 * t;
            const double y0 = (1.0 - h) / 2.0;
            return {{0, y0}, {1, y0}, {1, y0 + h}, {0, y0 + h}};
        }
    }
    throw ParameterError("unknown parametric class");
}

}  // namespace

Mesh gen_parametric(ParametricClass cls, double t) {
    if (t < 0.0 || t > 1.0) throw ParameterError("gen_parametric: t must be in [0,1]");
    const Polygon local = parametric_polygon(cls, t);
    const Polygon poly = map_into(local, {0.25, 0.25}, 0.5);

    MeshBuilder builder;
    builder.add_polygon(poly);

    double shortest_feature = polygon_diameter(poly);
    for (std::size_t i = 0; i < poly.size(); ++i)
        shortest_feature =
            std::min(shortest_feature, (poly[(i + 1) % poly.size()] - poly[i]).norm());

    RegionSpec spec;
    spec.loops = {rectangle({0, 0}, 1, 1), poly};
    spec.inside = [&poly](const Vec2& p) {
        return p.x > 0 && p.x < 1 && p.y > 0 && p.y < 1 && !point_in_polygon(p, poly);
    };
    spec.r_lo = std::clamp(shortest_feature, 0.005, 0.05);
    spec.r_hi = 0.12;
    spec.seed = kDefaultSeed + static_cast<std::uint64_t>(cls) * 101 +
                static_cast<std::uint64_t>(std::lround(t * 20));

    std::vector<Polygon> fill;
    fill_region(spec, fill, 0);
    for (const Polygon& tri : fill) builder.add_polygon(tri);
    return builder.take(0);
}

// ---------------------------------------------------------------------------

Mesh generate(const std::string& id, int level, std::uint64_t seed) {
    if (id == "triangle") return gen_triangle(level, seed);
    if (id == "maze") return gen_maze(level);
    if (id == "star") return gen_star(level);
    if (id == "jenga") return gen_jenga(level);
    if (id == "slices") return gen_slices(level);
    if (id == "ulike") return gen_ulike(level);
    if (id == "jenga4" || id == "slices4" || id == "ulike4") return gen_multiple(id, level);
    if (id.rfind("parametric:", 0) == 0) {
        if (level < 0 || level > 20)
            throw ParameterError("parametric levels index the 21-point grid 0..20");
        Mesh mesh = gen_parametric(parse_parametric_class(id.substr(11)), level / 20.0);
        mesh.level = level;
        return mesh;
    }
    throw ParameterError("unknown dataset id '" + id + "'");
}

Dataset generate_dataset(const std::string& id, int min_level, int max_level,
                         std::uint64_t seed) {
    if (min_level < 0 || max_level < min_level)
        throw ParameterError("generate_dataset: bad level range");
    Dataset ds;
    ds.name = id;
    for (int n = min_level; n <= max_level; ++n) ds.meshes.push_back(generate(id, n, seed));
    return ds;
}

}  // namespace vemesh
