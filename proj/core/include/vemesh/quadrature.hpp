#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "vemesh/geometry.hpp"

namespace vemesh {

struct Quadrature1D {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule, exact for degree <= 2n-1.
Quadrature1D gauss_legendre(std::size_t n);

/// (k+1)-point Gauss-Lobatto rule including the endpoints, exact for
/// degree <= 2k-1. The internal nodes carry the edge DOFs of order k.
Quadrature1D gauss_lobatto(std::size_t k);

struct Quadrature2D {
    std::vector<Vec2> points;
    std::vector<double> weights;
};

/// Quadrature on a triangle, exact for bivariate polynomials of total
/// degree <= degree (Duffy-collapsed tensor Gauss rule).
Quadrature2D triangle_quadrature(const Vec2& a, const Vec2& b, const Vec2& c,
                                 std::size_t degree);

/// Quadrature over a simple CCW polygon by ear-clipping into triangles.
Quadrature2D polygon_quadrature(std::span<const Vec2> poly, std::size_t degree);

/// Integral of f over the polygon with a rule exact to the given degree.
double integrate_over_polygon(std::span<const Vec2> poly, std::size_t degree,
                              const std::function<double(Vec2)>& f);

}  // namespace vemesh
