#include "vemesh/indicator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vemesh/metrics.hpp"

namespace vemesh {

double rho1(std::span<const Vec2> poly) {
    const Polygon kernel = polygon_kernel(poly);
    if (kernel.empty()) return 0.0;
    return std::abs(signed_area(kernel)) / polygon_area(poly);
}

double rho2(std::span<const Vec2> poly) {
    const double area = polygon_area(poly);
    const double sqrt_area = std::sqrt(area);
    double emin = std::numeric_limits<double>::infinity();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
        emin = std::min(emin, (poly[(i + 1) % n] - poly[i]).norm());
    const double hp = polygon_diameter(poly);
    return std::min(sqrt_area, emin) / std::max(sqrt_area, hp);
}

double rho3(std::span<const Vec2> poly) {
    return 3.0 / static_cast<double>(poly.size());
}

double rho4(std::span<const Vec2> poly) {
    const std::size_t n = poly.size();
    // group consecutive edges whose vertices lie on the same line
    std::vector<double> lengths(n);
    std::vector<Vec2> dirs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 d = poly[(i + 1) % n] - poly[i];
        lengths[i] = d.norm();
        dirs[i] = d;
    }
    auto collinear = [&](std::size_t i, std::size_t j) {
        return std::abs(dirs[i].cross(dirs[j])) <= 1e-9 * lengths[i] * lengths[j] &&
               dirs[i].dot(dirs[j]) > 0.0;
    };
    // start the walk at a group break so that wraparound groups stay whole
    std::size_t start = 0;
    bool all_one_line = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (!collinear((i + n - 1) % n, i)) {
            start = i;
            all_one_line = false;
            break;
        }
    }
    if (all_one_line) {
        const auto [mn, mx] = std::minmax_element(lengths.begin(), lengths.end());
        return *mn / *mx;
    }
    double worst = 1.0;
    std::size_t i = 0;
    while (i < n) {
        const std::size_t first = (start + i) % n;
        double gmin = lengths[first], gmax = lengths[first];
        std::size_t j = i + 1;
        while (j < n && collinear((start + j + n - 1) % n, (start + j) % n)) {
            const double len = lengths[(start + j) % n];
            gmin = std::min(gmin, len);
            gmax = std::max(gmax, len);
            ++j;
        }
        worst = std::min(worst, gmin / gmax);
        i = j;
    }
    return worst;
}

ElementQuality element_quality(std::span<const Vec2> poly) {
    return {rho1(poly), rho2(poly), rho3(poly), rho4(poly)};
}

QualityReport quality_report(const Mesh& mesh) {
    QualityReport rep;
    rep.per_element.reserve(mesh.num_elements());
    double combined = 0.0;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const Polygon poly = mesh.element_polygon(e);
        const ElementQuality q = element_quality(poly);
        rep.per_element.push_back(q);
        rep.rho1_mean += q.rho1;
        rep.rho2_mean += q.rho2;
        rep.rho3_mean += q.rho3;
        rep.rho4_mean += q.rho4;
        combined += (q.rho1 * q.rho2 + q.rho1 * q.rho3 + q.rho1 * q.rho4) / 3.0;
    }
    const double count = static_cast<double>(mesh.num_elements());
    rep.rho1_mean /= count;
    rep.rho2_mean /= count;
    rep.rho3_mean /= count;
    rep.rho4_mean /= count;
    rep.rho = std::sqrt(combined / count);
    return rep;
}

double rho_mesh(const Mesh& mesh) {
    if (mesh.elements.empty()) throw EmptyMeshError("rho_mesh: mesh has no elements");
    return quality_report(mesh).rho;
}

}  // namespace vemesh
