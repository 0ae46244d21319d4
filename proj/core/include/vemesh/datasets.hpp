#pragma once

#include <cstdint>
#include <string>

#include "vemesh/mesh.hpp"

namespace vemesh {

struct GenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Nonuniformity of a mesh: max/min element area ratio and max/min edge
/// length ratio.
struct ScalingIndicators {
    double area_ratio = 1.0;  // A_n
    double edge_ratio = 1.0;  // e_n
};

ScalingIndicators scaling_indicators(const Mesh& mesh);

/// Four half-scale copies of the mesh tiled into the unit square.
/// Duplicated interface vertices are merged (snap 1e-12) and hanging
/// vertices are inserted into the coarse edges they split.
Mesh mirror(const Mesh& mesh);

inline constexpr std::uint64_t kDefaultSeed = 0x5eed5eedULL;

/// Delaunay triangulations of Poisson-disk samples, radius 0.25/2^n.
Mesh gen_triangle(int n, std::uint64_t seed = kDefaultSeed);

/// Mirroring datasets: level n applies the mirroring n times to the
/// n-th base mesh.
Mesh gen_jenga(int n);
Mesh gen_slices(int n);
Mesh gen_ulike(int n);

/// Hybrid datasets: initial polygons on a regular grid with the domain
/// complement filled by triangles smaller than the initial polygons.
Mesh gen_maze(int n);
Mesh gen_star(int n);

/// Multiple-mirroring variants: four insertions per step instead of one.
Mesh gen_multiple(const std::string& kind, int n);  // jenga4 | slices4 | ulike4

enum class ParametricClass { Maze, Star, Comb, Zeta, ULike, NSides, Convexity, Isotropy };

ParametricClass parse_parametric_class(const std::string& name);
std::string parametric_class_name(ParametricClass cls);

inline constexpr std::array<ParametricClass, 8> kAllParametricClasses = {
    ParametricClass::Maze,      ParametricClass::Star,    ParametricClass::Comb,
    ParametricClass::Zeta,      ParametricClass::ULike,   ParametricClass::NSides,
    ParametricClass::Convexity, ParametricClass::Isotropy};

/// One deformed polygon centered in the unit square, complement
/// triangulated. t in [0,1]; t = 0 is the baseline without critical
/// geometric features.
Mesh gen_parametric(ParametricClass cls, double t);

/// CLI-facing dispatch. Ids: triangle, maze, star, jenga, slices,
/// ulike, jenga4, slices4, ulike4, parametric:<class> (where the level
/// indexes the 21-point deformation grid t = level/20).
Mesh generate(const std::string& id, int level, std::uint64_t seed = kDefaultSeed);

Dataset generate_dataset(const std::string& id, int min_level, int max_level,
                         std::uint64_t seed = kDefaultSeed);

}  // namespace vemesh
