#pragma once

#include <vector>

#include "vemesh/mesh.hpp"

namespace vemesh {

/// Per-element geometry-only quality indicators, each in [0,1].
struct ElementQuality {
    double rho1 = 0.0;  // kernel area / area (star-shapedness)
    double rho2 = 0.0;  // min(sqrt|P|, min edge) / max(sqrt|P|, h_P)
    double rho3 = 0.0;  // 3 / #edges
    double rho4 = 0.0;  // quasi-uniformity of the collinear edge groups
};

double rho1(std::span<const Vec2> poly);
double rho2(std::span<const Vec2> poly);
double rho3(std::span<const Vec2> poly);
double rho4(std::span<const Vec2> poly);

ElementQuality element_quality(std::span<const Vec2> poly);

struct QualityReport {
    std::vector<ElementQuality> per_element;
    double rho1_mean = 0.0;
    double rho2_mean = 0.0;
    double rho3_mean = 0.0;
    double rho4_mean = 0.0;
    double rho = 0.0;  // mesh indicator
};

/// Mesh indicator: sqrt of the mean of (r1 r2 + r1 r3 + r1 r4)/3; zero
/// iff every element is non-star-shaped.
double rho_mesh(const Mesh& mesh);

QualityReport quality_report(const Mesh& mesh);

}  // namespace vemesh
