#include "vemesh/vem.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>

namespace vemesh {

std::pair<int, int> ScaledMonomialBasis::exponents(int alpha) {
    int d = 0;
    while ((d + 1) * (d + 2) / 2 <= alpha) ++d;
    const int offset = alpha - d * (d + 1) / 2;
    return {d - offset, offset};
}

int ScaledMonomialBasis::index(int px, int py) {
    const int d = px + py;
    return d * (d + 1) / 2 + py;
}

double ScaledMonomialBasis::eval(int alpha, const Vec2& p) const {
    const auto [px, py] = exponents(alpha);
    const double xi = (p.x - center.x) / diameter;
    const double eta = (p.y - center.y) / diameter;
    return std::pow(xi, px) * std::pow(eta, py);
}

Vec2 ScaledMonomialBasis::eval_gradient(int alpha, const Vec2& p) const {
    const auto [px, py] = exponents(alpha);
    const double xi = (p.x - center.x) / diameter;
    const double eta = (p.y - center.y) / diameter;
    Vec2 g{0.0, 0.0};
    if (px > 0) g.x = px * std::pow(xi, px - 1) * std::pow(eta, py) / diameter;
    if (py > 0) g.y = py * std::pow(xi, px) * std::pow(eta, py - 1) / diameter;
    return g;
}

std::vector<std::pair<int, double>> ScaledMonomialBasis::laplacian(int alpha) const {
    const auto [px, py] = exponents(alpha);
    const double inv_h2 = 1.0 / (diameter * diameter);
    std::vector<std::pair<int, double>> out;
    if (px >= 2) out.emplace_back(index(px - 2, py), px * (px - 1.0) * inv_h2);
    if (py >= 2) out.emplace_back(index(px, py - 2), py * (py - 1.0) * inv_h2);
    return out;
}

std::vector<double> monomial_integrals(std::span<const Vec2> poly,
                                       const ScaledMonomialBasis& basis,
                                       int max_degree) {
    const int n_mono = ScaledMonomialBasis::dimension(max_degree);
    std::vector<double> moments(static_cast<std::size_t>(n_mono), 0.0);
    const Quadrature1D gl = gauss_legendre(static_cast<std::size_t>(max_degree) / 2 + 2);
    const std::size_t n = poly.size();
    for (std::size_t e = 0; e < n; ++e) {
        const Vec2& p = poly[e];
        const Vec2& q = poly[(e + 1) % n];
        const double ny_len = q.y - p.y;  // outward normal x-component times |e|
        if (ny_len == 0.0) continue;
        for (std::size_t g = 0; g < gl.nodes.size(); ++g) {
            const double t = 0.5 * (gl.nodes[g] + 1.0);
            const double w = 0.5 * gl.weights[g];
            const Vec2 x = p + t * (q - p);
            const double xi = (x.x - basis.center.x) / basis.diameter;
            const double eta = (x.y - basis.center.y) / basis.diameter;
            for (int alpha = 0; alpha < n_mono; ++alpha) {
                const auto [a, b] = ScaledMonomialBasis::exponents(alpha);
                // antiderivative flux: div (h/(a+1) xi^{a+1} eta^b, 0) = m_alpha
                const double flux = basis.diameter / (a + 1.0) *
                                    std::pow(xi, a + 1) * std::pow(eta, b);
                moments[static_cast<std::size_t>(alpha)] += w * ny_len * flux;
            }
        }
    }
    return moments;
}

StabilizationScheme parse_stabilization(const std::string& name) {
    if (name == "d-recipe") return StabilizationScheme::DRecipe;
    if (name == "dofi-dofi") return StabilizationScheme::DofiDofi;
    if (name == "trace") return StabilizationScheme::Trace;
    throw std::invalid_argument("unknown stabilization '" + name + "'");
}

std::string stabilization_name(StabilizationScheme s) {
    switch (s) {
        case StabilizationScheme::DRecipe: return "d-recipe";
        case StabilizationScheme::DofiDofi: return "dofi-dofi";
        case StabilizationScheme::Trace: return "trace";
    }
    return "?";
}

namespace {

/// Derivative of the Lagrange basis polynomial through `nodes` at node j,
/// evaluated at x.
double lagrange_derivative(const std::vector<double>& nodes, std::size_t j, double x) {
    const std::size_t n = nodes.size();
    double sum = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        if (m == j) continue;
        double prod = 1.0 / (nodes[j] - nodes[m]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j || i == m) continue;
            prod *= (x - nodes[i]) / (nodes[j] - nodes[i]);
        }
        sum += prod;
    }
    return sum;
}

/// Reference 1D stiffness of the degree-k Lagrange basis on the
/// Gauss-Lobatto nodes of [-1,1].
Eigen::MatrixXd reference_edge_stiffness(int k) {
    const Quadrature1D gl = gauss_lobatto(static_cast<std::size_t>(k));
    const std::size_t n = gl.nodes.size();
    const Quadrature1D quad = gauss_legendre(static_cast<std::size_t>(k) + 1);
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    for (std::size_t q = 0; q < quad.nodes.size(); ++q) {
        const double x = quad.nodes[q];
        const double w = quad.weights[q];
        std::vector<double> dl(n);
        for (std::size_t j = 0; j < n; ++j) dl[j] = lagrange_derivative(gl.nodes, j, x);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                R(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += w * dl[a] * dl[b];
    }
    return R;
}

struct LocalLayout {
    int k;
    std::size_t ns;
    int n_dofs;
    int n_moments;  // internal moment DOFs, dim P_{k-2}

    std::size_t vertex_dof(std::size_t i) const { return i; }
    std::size_t edge_dof(std::size_t edge, int j) const {
        return ns + edge * static_cast<std::size_t>(k - 1) + static_cast<std::size_t>(j);
    }
    std::size_t moment_dof(int gamma) const {
        return ns * static_cast<std::size_t>(k) + static_cast<std::size_t>(gamma);
    }
    /// DOF index of Gauss-Lobatto node q (0..k) along edge i, walking the
    /// cycle from vertex i to vertex i+1.
    std::size_t boundary_node_dof(std::size_t edge, int q) const {
        if (q == 0) return vertex_dof(edge);
        if (q == k) return vertex_dof((edge + 1) % ns);
        return edge_dof(edge, q - 1);
    }
};

}  // namespace

VemLocalData build_local(const Polygon& poly, int k, StabilizationScheme scheme) {
    if (k < 1 || k > 3) throw std::invalid_argument("build_local: k must be in {1,2,3}");
    VemLocalData data;
    data.k = k;
    data.n_vertices = poly.size();
    const std::size_t ns = poly.size();
    const LocalLayout layout{k, ns, static_cast<int>(ns) * k + k * (k - 1) / 2,
                             ScaledMonomialBasis::dimension(k - 2)};
    data.n_dofs = layout.n_dofs;
    data.n_monomials = ScaledMonomialBasis::dimension(k);
    data.basis = {polygon_centroid(poly), polygon_diameter(poly), k};
    data.area = polygon_area(poly);

    const int nk = data.n_monomials;
    const int nd = data.n_dofs;
    const ScaledMonomialBasis& basis = data.basis;

    // exact monomial moments up to degree 2k (needed by H and by D3 rows)
    const std::vector<double> mom = monomial_integrals(poly, basis, 2 * k);
    auto moment_of = [&](int px, int py) { return mom[static_cast<std::size_t>(
        ScaledMonomialBasis::index(px, py))]; };

    data.H.resize(nk, nk);
    for (int a = 0; a < nk; ++a) {
        const auto [ax, ay] = ScaledMonomialBasis::exponents(a);
        for (int b = 0; b < nk; ++b) {
            const auto [bx, by] = ScaledMonomialBasis::exponents(b);
            data.H(a, b) = moment_of(ax + bx, ay + by);
        }
    }

    const Quadrature1D gl = gauss_lobatto(static_cast<std::size_t>(k));

    // D: DOFs of the monomials
    data.D.resize(nd, nk);
    for (int alpha = 0; alpha < nk; ++alpha) {
        for (std::size_t i = 0; i < ns; ++i)
            data.D(static_cast<Eigen::Index>(layout.vertex_dof(i)), alpha) =
                basis.eval(alpha, poly[i]);
        if (k >= 2) {
            for (std::size_t e = 0; e < ns; ++e) {
                const Vec2& p = poly[e];
                const Vec2& q = poly[(e + 1) % ns];
                for (int j = 1; j < k; ++j) {
                    const double t = 0.5 * (gl.nodes[static_cast<std::size_t>(j)] + 1.0);
                    data.D(static_cast<Eigen::Index>(layout.edge_dof(e, j - 1)), alpha) =
                        basis.eval(alpha, p + t * (q - p));
                }
            }
            const auto [ax, ay] = ScaledMonomialBasis::exponents(alpha);
            for (int gamma = 0; gamma < layout.n_moments; ++gamma) {
                const auto [gx, gy] = ScaledMonomialBasis::exponents(gamma);
                data.D(static_cast<Eigen::Index>(layout.moment_dof(gamma)), alpha) =
                    moment_of(ax + gx, ay + gy) / data.area;
            }
        }
    }

    // B and the direct G
    data.B = Eigen::MatrixXd::Zero(nk, nd);
    data.G = Eigen::MatrixXd::Zero(nk, nk);

    // first row: the boundary-mean functional P0 fixing the projector kernel
    if (k == 1) {
        for (std::size_t i = 0; i < ns; ++i)
            data.B(0, static_cast<Eigen::Index>(layout.vertex_dof(i))) =
                1.0 / static_cast<double>(ns);
        for (int beta = 0; beta < nk; ++beta) {
            double avg = 0.0;
            for (std::size_t i = 0; i < ns; ++i) avg += basis.eval(beta, poly[i]);
            data.G(0, beta) = avg / static_cast<double>(ns);
        }
    } else {
        const double perimeter = polygon_perimeter(poly);
        for (std::size_t e = 0; e < ns; ++e) {
            const Vec2& p = poly[e];
            const Vec2& q = poly[(e + 1) % ns];
            const double len = (q - p).norm();
            for (int j = 0; j <= k; ++j) {
                const double w = 0.5 * len * gl.weights[static_cast<std::size_t>(j)];
                const std::size_t dof = layout.boundary_node_dof(e, j);
                data.B(0, static_cast<Eigen::Index>(dof)) += w / perimeter;
                const double t = 0.5 * (gl.nodes[static_cast<std::size_t>(j)] + 1.0);
                const Vec2 x = p + t * (q - p);
                for (int beta = 0; beta < nk; ++beta)
                    data.G(0, beta) += w / perimeter * basis.eval(beta, x);
            }
        }
    }

    // remaining rows: grad-grad products against the monomials
    for (int alpha = 1; alpha < nk; ++alpha) {
        // boundary term of the integration by parts
        for (std::size_t e = 0; e < ns; ++e) {
            const Vec2& p = poly[e];
            const Vec2& q = poly[(e + 1) % ns];
            const Vec2 tangent = q - p;
            const double len = tangent.norm();
            const Vec2 normal{tangent.y / len, -tangent.x / len};
            for (int j = 0; j <= k; ++j) {
                const double t = 0.5 * (gl.nodes[static_cast<std::size_t>(j)] + 1.0);
                const Vec2 x = p + t * (q - p);
                const double w = 0.5 * len * gl.weights[static_cast<std::size_t>(j)];
                const double dn = basis.eval_gradient(alpha, x).dot(normal);
                data.B(alpha, static_cast<Eigen::Index>(layout.boundary_node_dof(e, j))) +=
                    w * dn;
            }
        }
        // volume term, expressible through the D3 moments
        for (const auto& [gamma, coeff] : basis.laplacian(alpha)) {
            data.B(alpha, static_cast<Eigen::Index>(layout.moment_dof(gamma))) -=
                coeff * data.area;
        }

        const auto [ax, ay] = ScaledMonomialBasis::exponents(alpha);
        const double inv_h2 = 1.0 / (basis.diameter * basis.diameter);
        for (int beta = 1; beta < nk; ++beta) {
            const auto [bx, by] = ScaledMonomialBasis::exponents(beta);
            double g = 0.0;
            if (ax >= 1 && bx >= 1) g += ax * bx * moment_of(ax + bx - 2, ay + by);
            if (ay >= 1 && by >= 1) g += ay * by * moment_of(ax + bx, ay + by - 2);
            data.G(alpha, beta) = g * inv_h2;
        }
    }

    // elliptic projector
    Eigen::FullPivLU<Eigen::MatrixXd> lu(data.G);
    if (!lu.isInvertible()) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(data.G);
        const auto& sv = svd.singularValues();
        const double cond = sv(0) / sv(sv.size() - 1);
        throw ElementConditioningError("projector matrix G is numerically singular", cond);
    }
    data.pi_nabla = lu.solve(data.B);

    // L2 projector via the enhancement: low moments from D3, high from Pi_nabla
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(nk, nd);
    const Eigen::MatrixXd HP = data.H * data.pi_nabla;
    for (int alpha = 0; alpha < nk; ++alpha) {
        const auto [ax, ay] = ScaledMonomialBasis::exponents(alpha);
        if (ax + ay <= k - 2) {
            C(alpha, static_cast<Eigen::Index>(layout.moment_dof(alpha))) = data.area;
        } else {
            C.row(alpha) = HP.row(alpha);
        }
    }
    data.pi_zero = data.H.ldlt().solve(C);

    // consistency part of the stiffness
    Eigen::MatrixXd Gtilde = data.G;
    Gtilde.row(0).setZero();
    data.consistency = data.pi_nabla.transpose() * Gtilde * data.pi_nabla;

    data.stiffness = data.consistency + stabilization(poly, data, scheme);
    return data;
}

Eigen::MatrixXd stabilization_core(const Polygon& poly, const VemLocalData& data,
                                   StabilizationScheme scheme) {
    const int nd = data.n_dofs;
    switch (scheme) {
        case StabilizationScheme::DofiDofi:
            return Eigen::MatrixXd::Identity(nd, nd);
        case StabilizationScheme::DRecipe: {
            Eigen::MatrixXd S = Eigen::MatrixXd::Zero(nd, nd);
            const double floor_value = data.consistency.trace() / nd * 1e-10;
            for (int i = 0; i < nd; ++i)
                S(i, i) = std::max(data.consistency(i, i), floor_value);
            return S;
        }
        case StabilizationScheme::Trace: {
            const int k = data.k;
            const std::size_t ns = data.n_vertices;
            const LocalLayout layout{k, ns, data.n_dofs,
                                     ScaledMonomialBasis::dimension(k - 2)};
            const Eigen::MatrixXd R = reference_edge_stiffness(k);
            Eigen::MatrixXd S = Eigen::MatrixXd::Zero(nd, nd);
            for (std::size_t e = 0; e < ns; ++e) {
                const double len = (poly[(e + 1) % ns] - poly[e]).norm();
                const double scale = data.basis.diameter * 2.0 / len;
                for (int a = 0; a <= k; ++a)
                    for (int b = 0; b <= k; ++b)
                        S(static_cast<Eigen::Index>(layout.boundary_node_dof(e, a)),
                          static_cast<Eigen::Index>(layout.boundary_node_dof(e, b))) +=
                            scale * R(a, b);
            }
            return S;
        }
    }
    return Eigen::MatrixXd::Identity(nd, nd);
}

Eigen::MatrixXd stabilization(const Polygon& poly, const VemLocalData& data,
                              StabilizationScheme scheme) {
    const Eigen::MatrixXd S = stabilization_core(poly, data, scheme);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(data.n_dofs, data.n_dofs);
    const Eigen::MatrixXd residual = I - data.D * data.pi_nabla;
    return residual.transpose() * S * residual;
}

Eigen::VectorXd local_load(const Polygon& poly, const VemLocalData& data,
                           const ScalarField& f) {
    const int nk = data.n_monomials;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(nk);
    const Quadrature2D quad =
        polygon_quadrature(poly, static_cast<std::size_t>(2 * data.k + 2));
    for (std::size_t q = 0; q < quad.points.size(); ++q) {
        const double fw = quad.weights[q] * f(quad.points[q]);
        for (int alpha = 0; alpha < nk; ++alpha)
            b(alpha) += fw * data.basis.eval(alpha, quad.points[q]);
    }
    return data.pi_zero.transpose() * b;
}

DofMap build_dof_map(const Mesh& mesh, int k) {
    DofMap map;
    map.k = k;
    map.n_vertex_dofs = mesh.num_vertices();

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_ids;
    std::map<std::pair<std::size_t, std::size_t>, int> edge_use;
    map.element_edges.resize(mesh.num_elements());
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const auto& cycle = mesh.elements[e];
        const std::size_t n = cycle.size();
        map.element_edges[e].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t a = cycle[i], b = cycle[(i + 1) % n];
            if (a > b) std::swap(a, b);
            auto [it, inserted] = edge_ids.try_emplace({a, b}, map.edges.size());
            if (inserted) map.edges.push_back({a, b, 0, false});
            ++edge_use[{a, b}];
            map.element_edges[e][i] = it->second;
        }
    }
    for (auto& edge : map.edges) {
        edge.boundary = edge_use[{edge.a, edge.b}] == 1;
    }

    const std::size_t per_edge = static_cast<std::size_t>(k - 1);
    const std::size_t per_elem = static_cast<std::size_t>(k * (k - 1) / 2);
    map.n_edge_dofs = map.edges.size() * per_edge;
    map.n_moment_dofs = mesh.num_elements() * per_elem;
    for (std::size_t i = 0; i < map.edges.size(); ++i)
        map.edges[i].first_dof = map.n_vertex_dofs + i * per_edge;
    map.element_moment_start.resize(mesh.num_elements());
    for (std::size_t e = 0; e < mesh.num_elements(); ++e)
        map.element_moment_start[e] =
            map.n_vertex_dofs + map.n_edge_dofs + e * per_elem;

    map.boundary_dof.assign(map.total(), false);
    for (const auto& edge : map.edges) {
        if (!edge.boundary) continue;
        map.boundary_dof[edge.a] = true;
        map.boundary_dof[edge.b] = true;
        for (std::size_t j = 0; j < per_edge; ++j)
            map.boundary_dof[edge.first_dof + j] = true;
    }
    return map;
}

std::vector<std::size_t> DofMap::element_dofs(const Mesh& mesh, std::size_t e) const {
    const auto& cycle = mesh.elements[e];
    const std::size_t n = cycle.size();
    std::vector<std::size_t> out;
    const std::size_t per_edge = static_cast<std::size_t>(k - 1);
    out.reserve(n * static_cast<std::size_t>(k) + static_cast<std::size_t>(k * (k - 1) / 2));
    for (std::size_t i = 0; i < n; ++i) out.push_back(cycle[i]);
    for (std::size_t i = 0; i < n; ++i) {
        const Edge& edge = edges[element_edges[e][i]];
        const bool forward = edge.a == cycle[i];
        for (std::size_t j = 0; j < per_edge; ++j)
            out.push_back(edge.first_dof + (forward ? j : per_edge - 1 - j));
    }
    for (std::size_t j = 0; j < static_cast<std::size_t>(k * (k - 1) / 2); ++j)
        out.push_back(element_moment_start[e] + j);
    return out;
}

std::vector<Vec2> DofMap::dof_points(const Mesh& mesh) const {
    std::vector<Vec2> pts(n_vertex_dofs + n_edge_dofs);
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) pts[v] = mesh.vertices[v];
    if (k >= 2) {
        const Quadrature1D gl = gauss_lobatto(static_cast<std::size_t>(k));
        for (const Edge& edge : edges) {
            const Vec2& a = mesh.vertices[edge.a];
            const Vec2& b = mesh.vertices[edge.b];
            for (int j = 1; j < k; ++j) {
                const double t = 0.5 * (gl.nodes[static_cast<std::size_t>(j)] + 1.0);
                pts[edge.first_dof + static_cast<std::size_t>(j - 1)] = a + t * (b - a);
            }
        }
    }
    return pts;
}

Eigen::VectorXd interpolate(const ScalarField& u, const Mesh& mesh, const DofMap& dofs) {
    Eigen::VectorXd ui = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dofs.total()));
    const std::vector<Vec2> pts = dofs.dof_points(mesh);
    for (std::size_t i = 0; i < pts.size(); ++i) ui(static_cast<Eigen::Index>(i)) = u(pts[i]);
    const int k = dofs.k;
    if (k >= 2) {
        const std::size_t per_elem = static_cast<std::size_t>(k * (k - 1) / 2);
        for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
            const Polygon poly = mesh.element_polygon(e);
            const ScaledMonomialBasis basis{polygon_centroid(poly), polygon_diameter(poly), k};
            const double area = polygon_area(poly);
            const Quadrature2D quad =
                polygon_quadrature(poly, static_cast<std::size_t>(2 * k + 2));
            for (std::size_t g = 0; g < per_elem; ++g) {
                double m = 0.0;
                for (std::size_t q = 0; q < quad.points.size(); ++q)
                    m += quad.weights[q] * u(quad.points[q]) *
                         basis.eval(static_cast<int>(g), quad.points[q]);
                ui(static_cast<Eigen::Index>(dofs.element_moment_start[e] + g)) = m / area;
            }
        }
    }
    return ui;
}

}  // namespace vemesh
