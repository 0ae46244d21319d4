#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vemesh/geometry.hpp"

namespace vemesh {

/// Polygonal tessellation of the unit square. Elements are CCW vertex
/// index cycles; hanging nodes appear as collinear consecutive vertices
/// of the coarse neighbor. Immutable once built.
struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<std::vector<std::size_t>> elements;
    std::vector<bool> boundary_vertex_flags;
    int level = 0;

    std::size_t num_vertices() const { return vertices.size(); }
    std::size_t num_elements() const { return elements.size(); }

    /// Vertex cycle of element e as coordinates.
    Polygon element_polygon(std::size_t e) const;
};

struct EmptyMeshError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Max pairwise vertex distance of the element (the sup over the polygon
/// is attained at vertices).
double element_diameter(const Polygon& poly);

/// Shoelace area of a CCW simple polygon; throws on CW input.
double element_area(const Polygon& poly);

/// Mesh size h: maximum element diameter. Throws EmptyMeshError.
double mesh_size(const Mesh& mesh);

/// Mean element diameter (used by the h_av-normalized performance indexes).
double mean_element_diameter(const Mesh& mesh);

enum class ViolationKind {
    TooFewVertices,
    SelfIntersection,
    Orientation,
    CoordinateRange,
    CoverageOrOverlap,
    EdgeCrossing,
    NonConformingEdge,
    DanglingBoundary,
};

struct Violation {
    ViolationKind kind;
    std::size_t element = static_cast<std::size_t>(-1);
    std::string detail;
};

/// Diagnostics, not exceptions: empty vector iff the mesh is a valid
/// conforming tessellation of [0,1]^2 (hanging nodes allowed).
std::vector<Violation> validate(const Mesh& mesh);

/// Recompute boundary flags from edge incidence (edges used by exactly
/// one element are boundary edges).
void rebuild_boundary_flags(Mesh& mesh);

/// Flip any CW element cycles to CCW in place.
void normalize_orientation(Mesh& mesh);

struct MeshParseError : std::runtime_error {
    MeshParseError(const std::string& msg, std::size_t line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
    std::size_t line_number;
};

/// POLYMESH 1 text format. Coordinates are written with 17 significant
/// digits so that save followed by load is bit exact.
Mesh load_mesh(const std::string& path);
void save_mesh(const Mesh& mesh, const std::string& path);

/// Ordered sequence of refinements of one generator; mesh sizes must
/// strictly decrease with the level.
struct Dataset {
    std::string name;
    std::vector<Mesh> meshes;
};

}  // namespace vemesh
