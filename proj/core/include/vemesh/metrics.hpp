#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vemesh/geometry.hpp"
#include "vemesh/mesh.hpp"

namespace vemesh {

struct Circle {
    Vec2 center;
    double radius = 0.0;
};

/// Smallest circle containing all vertices (Welzl).
Circle min_enclosing_circle(std::span<const Vec2> points);

/// Largest circle contained in the polygon, found by seeding a pattern
/// search on the distance-to-boundary field from a coarse interior grid.
/// Radius is accurate to about 1e-6 * h_P.
Circle max_inscribed_circle(std::span<const Vec2> poly);

/// Visibility kernel: intersection of the inner half-planes of all edges.
/// Empty result means the polygon is not star-shaped.
Polygon polygon_kernel(std::span<const Vec2> poly);

/// Chebyshev (deepest inscribed) circle of a convex polygon.
Circle chebyshev_circle(std::span<const Vec2> convex);

/// The per-element quality record. Lengths and areas are in domain
/// units, angles in radians.
struct PolygonMetrics {
    double cc = 0.0;   // min enclosing circle radius
    double ic = 0.0;   // max inscribed circle radius
    double cr = 0.0;   // ic / cc
    double ar = 0.0;   // area
    double ke = 0.0;   // kernel area
    double kar = 0.0;  // ke / ar
    double apr = 0.0;  // 2*pi*area / perimeter^2
    double se = 0.0;   // shortest edge
    double er = 0.0;   // shortest / longest edge
    double mpd = 0.0;  // min pairwise vertex distance
    double ma = 0.0;   // min interior angle
    double mxa = 0.0;  // max interior angle
    double ns = 0.0;   // number of edges
    double sr = 0.0;   // chebyshev radius of kernel / cc
};

enum class MetricId { CC, IC, CR, AR, KE, KAR, APR, SE, ER, MPD, MA, MXA, NS, SR };

inline constexpr std::array<MetricId, 14> kAllMetrics = {
    MetricId::CC, MetricId::IC,  MetricId::CR,  MetricId::AR, MetricId::KE,
    MetricId::KAR, MetricId::APR, MetricId::SE, MetricId::ER, MetricId::MPD,
    MetricId::MA, MetricId::MXA, MetricId::NS,  MetricId::SR};

std::string metric_name(MetricId id);
double metric_value(const PolygonMetrics& m, MetricId id);

PolygonMetrics compute_polygon_metrics(std::span<const Vec2> poly);
std::vector<PolygonMetrics> compute_mesh_metrics(const Mesh& mesh);

enum class Aggregation { Average, L2, Max, Min, Worst };

inline constexpr std::array<Aggregation, 5> kAllAggregations = {
    Aggregation::Average, Aggregation::L2, Aggregation::Max,
    Aggregation::Min, Aggregation::Worst};

std::string aggregation_name(Aggregation a);

/// Worst resolves to min for most metrics and to max for CC, MXA, NS
/// (for AR no direction is prescribed; min is used, small elements
/// being the hazard).
double aggregate(std::span<const double> values, Aggregation strategy,
                 MetricId metric = MetricId::AR);

struct MeshMetric {
    MetricId metric;
    Aggregation aggregation;
    double value;
};

/// All 14 x 5 aggregated mesh metrics.
std::vector<MeshMetric> aggregate_all(const std::vector<PolygonMetrics>& per_element);

}  // namespace vemesh
