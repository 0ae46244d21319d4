#include "vemesh/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

namespace vemesh {

Polygon Mesh::element_polygon(std::size_t e) const {
    Polygon poly;
    poly.reserve(elements[e].size());
    for (std::size_t idx : elements[e]) poly.push_back(vertices[idx]);
    return poly;
}

double element_diameter(const Polygon& poly) {
    return polygon_diameter(poly);
}

double element_area(const Polygon& poly) {
    return polygon_area(poly);
}

double mesh_size(const Mesh& mesh) {
    if (mesh.elements.empty()) throw EmptyMeshError("mesh has no elements");
    double h = 0.0;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e)
        h = std::max(h, element_diameter(mesh.element_polygon(e)));
    return h;
}

double mean_element_diameter(const Mesh& mesh) {
    if (mesh.elements.empty()) throw EmptyMeshError("mesh has no elements");
    double sum = 0.0;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e)
        sum += element_diameter(mesh.element_polygon(e));
    return sum / static_cast<double>(mesh.num_elements());
}

void normalize_orientation(Mesh& mesh) {
    for (auto& cycle : mesh.elements) {
        Polygon poly;
        poly.reserve(cycle.size());
        for (std::size_t idx : cycle) poly.push_back(mesh.vertices[idx]);
        if (signed_area(poly) < 0.0) std::reverse(cycle.begin(), cycle.end());
    }
}

void rebuild_boundary_flags(Mesh& mesh) {
    std::map<std::pair<std::size_t, std::size_t>, int> edge_count;
    for (const auto& cycle : mesh.elements) {
        const std::size_t n = cycle.size();
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t a = cycle[i], b = cycle[(i + 1) % n];
            if (a > b) std::swap(a, b);
            ++edge_count[{a, b}];
        }
    }
    mesh.boundary_vertex_flags.assign(mesh.num_vertices(), false);
    for (const auto& [edge, count] : edge_count) {
        if (count == 1) {
            mesh.boundary_vertex_flags[edge.first] = true;
            mesh.boundary_vertex_flags[edge.second] = true;
        }
    }
}

namespace {

bool on_unit_square_boundary(const Vec2& a, const Vec2& b, double tol) {
    auto on_line = [tol](double va, double vb, double c) {
        return std::abs(va - c) <= tol && std::abs(vb - c) <= tol;
    };
    return on_line(a.x, b.x, 0.0) || on_line(a.x, b.x, 1.0) ||
           on_line(a.y, b.y, 0.0) || on_line(a.y, b.y, 1.0);
}

struct CellIndex {
    // uniform binning over [0,1]^2 used to prune pairwise segment tests
    int res;
    std::vector<std::vector<std::size_t>> cells;

    explicit CellIndex(int r) : res(r), cells(static_cast<std::size_t>(r) * r) {}

    void insert_bbox(double x0, double y0, double x1, double y1, std::size_t id) {
        const int i0 = clampi(static_cast<int>(x0 * res));
        const int i1 = clampi(static_cast<int>(x1 * res));
        const int j0 = clampi(static_cast<int>(y0 * res));
        const int j1 = clampi(static_cast<int>(y1 * res));
        for (int i = i0; i <= i1; ++i)
            for (int j = j0; j <= j1; ++j)
                cells[static_cast<std::size_t>(j) * res + i].push_back(id);
    }

    int clampi(int v) const { return std::clamp(v, 0, res - 1); }
};

}  // namespace

std::vector<Violation> validate(const Mesh& mesh) {
    std::vector<Violation> out;
    const double coord_tol = 1e-12;
    const double area_tol = 1e-9;

    if (mesh.elements.empty()) {
        out.push_back({ViolationKind::CoverageOrOverlap, static_cast<std::size_t>(-1), "mesh has no elements"});
        return out;
    }

    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
        const Vec2& p = mesh.vertices[v];
        if (p.x < -coord_tol || p.x > 1.0 + coord_tol || p.y < -coord_tol || p.y > 1.0 + coord_tol) {
            out.push_back({ViolationKind::CoordinateRange, v,
                           "vertex outside [0,1]^2"});
        }
    }

    double total_area = 0.0;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const Polygon poly = mesh.element_polygon(e);
        if (poly.size() < 3) {
            out.push_back({ViolationKind::TooFewVertices, e, "element has fewer than 3 vertices"});
            continue;
        }
        const double a = signed_area(poly);
        if (a <= 0.0) {
            out.push_back({ViolationKind::Orientation, e, "element is not CCW or has nonpositive area"});
            continue;
        }
        if (polygon_self_intersects(poly)) {
            out.push_back({ViolationKind::SelfIntersection, e, "element boundary self-intersects"});
            continue;
        }
        total_area += a;
    }
    if (std::abs(total_area - 1.0) > area_tol) {
        out.push_back({ViolationKind::CoverageOrOverlap, static_cast<std::size_t>(-1),
                       "element areas sum to " + std::to_string(total_area) + " instead of 1"});
    }

    // collect directed edges once; bin segments for crossing tests
    struct Seg {
        Vec2 a, b;
        std::size_t elem;
    };
    std::vector<Seg> segs;
    std::map<std::pair<std::size_t, std::size_t>, int> edge_count;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const auto& cycle = mesh.elements[e];
        const std::size_t n = cycle.size();
        if (n < 3) continue;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t ia = cycle[i], ib = cycle[(i + 1) % n];
            segs.push_back({mesh.vertices[ia], mesh.vertices[ib], e});
            if (ia > ib) std::swap(ia, ib);
            ++edge_count[{ia, ib}];
        }
    }

    for (const auto& [edge, count] : edge_count) {
        if (count > 2) {
            out.push_back({ViolationKind::CoverageOrOverlap, static_cast<std::size_t>(-1),
                           "edge shared by more than two elements"});
        } else if (count == 1) {
            const Vec2& a = mesh.vertices[edge.first];
            const Vec2& b = mesh.vertices[edge.second];
            if (!on_unit_square_boundary(a, b, 1e-9)) {
                out.push_back({ViolationKind::DanglingBoundary, static_cast<std::size_t>(-1),
                               "interior edge used by only one element (coverage gap or overlap)"});
            }
        }
    }

    const int res = std::max(4, static_cast<int>(std::sqrt(static_cast<double>(segs.size()) / 4.0)));
    CellIndex index(res);
    for (std::size_t s = 0; s < segs.size(); ++s) {
        const auto& sg = segs[s];
        index.insert_bbox(std::min(sg.a.x, sg.b.x), std::min(sg.a.y, sg.b.y),
                          std::max(sg.a.x, sg.b.x), std::max(sg.a.y, sg.b.y), s);
    }
    std::set<std::pair<std::size_t, std::size_t>> tested;
    bool crossing_reported = false;
    for (const auto& cell : index.cells) {
        for (std::size_t i = 0; i < cell.size() && !crossing_reported; ++i) {
            for (std::size_t j = i + 1; j < cell.size(); ++j) {
                std::size_t s = cell[i], t = cell[j];
                if (s > t) std::swap(s, t);
                if (segs[s].elem == segs[t].elem) continue;
                if (!tested.insert({s, t}).second) continue;
                if (segments_properly_intersect(segs[s].a, segs[s].b, segs[t].a, segs[t].b)) {
                    out.push_back({ViolationKind::EdgeCrossing, segs[s].elem,
                                   "edges of different elements cross"});
                    crossing_reported = true;
                    break;
                }
            }
        }
    }

    // conformity: no mesh vertex may sit strictly inside an element edge
    const double conform_tol = 1e-9;
    CellIndex vindex(res);
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
        const Vec2& p = mesh.vertices[v];
        vindex.insert_bbox(p.x, p.y, p.x, p.y, v);
    }
    bool conform_reported = false;
    for (const auto& sg : segs) {
        if (conform_reported) break;
        const int i0 = vindex.clampi(static_cast<int>(std::min(sg.a.x, sg.b.x) * res) - 1);
        const int i1 = vindex.clampi(static_cast<int>(std::max(sg.a.x, sg.b.x) * res) + 1);
        const int j0 = vindex.clampi(static_cast<int>(std::min(sg.a.y, sg.b.y) * res) - 1);
        const int j1 = vindex.clampi(static_cast<int>(std::max(sg.a.y, sg.b.y) * res) + 1);
        for (int i = i0; i <= i1 && !conform_reported; ++i) {
            for (int j = j0; j <= j1 && !conform_reported; ++j) {
                for (std::size_t v : vindex.cells[static_cast<std::size_t>(j) * res + i]) {
                    const Vec2& p = mesh.vertices[v];
                    if ((p - sg.a).norm() < conform_tol || (p - sg.b).norm() < conform_tol) continue;
                    const double len = (sg.b - sg.a).norm();
                    if (len <= conform_tol) continue;
                    const double t = (p - sg.a).dot(sg.b - sg.a) / (len * len);
                    if (t <= 0.0 || t >= 1.0) continue;
                    if (point_segment_distance(p, sg.a, sg.b) < conform_tol) {
                        out.push_back({ViolationKind::NonConformingEdge, sg.elem,
                                       "mesh vertex lies strictly inside an element edge"});
                        conform_reported = true;
                        break;
                    }
                }
            }
        }
    }

    return out;
}

}  // namespace vemesh
