#include "vemesh/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace vemesh {

namespace {

/// Legendre polynomial P_n and its derivative at x.
std::pair<double, double> legendre(std::size_t n, double x) {
    double p0 = 1.0, p1 = x;
    if (n == 0) return {1.0, 0.0};
    for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

}  // namespace

Quadrature1D gauss_legendre(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
    Quadrature1D q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev initial guess, Newton refinement
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const auto [p, dp] = legendre(n, x);
        (void)p;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) q.nodes[n / 2] = 0.0;
    return q;
}

Quadrature1D gauss_lobatto(std::size_t k) {
    if (k == 0) throw std::invalid_argument("gauss_lobatto: k must be >= 1");
    const std::size_t n = k + 1;  // node count
    Quadrature1D q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const double wend = 2.0 / (static_cast<double>(n) * (n - 1.0));
    q.nodes.front() = -1.0;
    q.nodes.back() = 1.0;
    q.weights.front() = wend;
    q.weights.back() = wend;
    // interior nodes are the roots of P'_{n-1}
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double x = std::cos(M_PI * static_cast<double>(n - 1 - i) / (n - 1.0));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(n - 1, x);
            // Newton on P'_{n-1}; P''_{n-1} from the Legendre ODE
            const double ddp = (2.0 * x * dp - (n - 1.0) * n * p) / (1.0 - x * x);
            const double dx = dp / ddp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const auto [p, dp] = legendre(n - 1, x);
        (void)dp;
        q.nodes[i] = x;
        q.weights[i] = 2.0 / (static_cast<double>(n) * (n - 1.0) * p * p);
    }
    if (n % 2 == 1) q.nodes[n / 2] = 0.0;
    return q;
}

Quadrature2D triangle_quadrature(const Vec2& a, const Vec2& b, const Vec2& c,
                                 std::size_t degree) {
    // Map the square [0,1]^2 onto the triangle via (u,v) -> a + u*(b-a) + v*(1-u)*(c-a).
    // A total-degree-d polynomial needs n >= (d+2)/2 Gauss points per direction.
    const std::size_t n = (degree + 3) / 2 + 1;
    const Quadrature1D g = gauss_legendre(n);
    const double area2 = (b - a).cross(c - a);  // twice the signed area

    Quadrature2D q;
    q.points.reserve(n * n);
    q.weights.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = 0.5 * (g.nodes[i] + 1.0);
        const double wu = 0.5 * g.weights[i];
        for (std::size_t j = 0; j < n; ++j) {
            const double v = 0.5 * (g.nodes[j] + 1.0);
            const double wv = 0.5 * g.weights[j];
            const Vec2 p = a + u * (b - a) + (v * (1.0 - u)) * (c - a);
            q.points.push_back(p);
            q.weights.push_back(wu * wv * (1.0 - u) * area2);
        }
    }
    return q;
}

Quadrature2D polygon_quadrature(std::span<const Vec2> poly, std::size_t degree) {
    Quadrature2D q;
    for (const auto& tri : ear_clip(poly)) {
        const Quadrature2D t =
            triangle_quadrature(poly[tri[0]], poly[tri[1]], poly[tri[2]], degree);
        q.points.insert(q.points.end(), t.points.begin(), t.points.end());
        q.weights.insert(q.weights.end(), t.weights.begin(), t.weights.end());
    }
    return q;
}

double integrate_over_polygon(std::span<const Vec2> poly, std::size_t degree,
                              const std::function<double(Vec2)>& f) {
    const Quadrature2D q = polygon_quadrature(poly, degree);
    double sum = 0.0;
    for (std::size_t i = 0; i < q.points.size(); ++i) sum += q.weights[i] * f(q.points[i]);
    return sum;
}

}  // namespace vemesh
