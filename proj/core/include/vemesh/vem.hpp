#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <vector>

#include "vemesh/mesh.hpp"
#include "vemesh/quadrature.hpp"

namespace vemesh {

using ScalarField = std::function<double(Vec2)>;

/// Monomials m_a(x) = ((x - x_P)/h_P)^a for |a| <= degree, ordered by
/// total degree then descending x-power: 1, X, Y, X^2, XY, Y^2, ...
struct ScaledMonomialBasis {
    Vec2 center;      // x_P
    double diameter;  // h_P
    int degree;

    static int dimension(int degree) { return (degree + 1) * (degree + 2) / 2; }
    int size() const { return dimension(degree); }

    /// exponent pair of basis function alpha
    static std::pair<int, int> exponents(int alpha);
    static int index(int px, int py);

    double eval(int alpha, const Vec2& p) const;
    Vec2 eval_gradient(int alpha, const Vec2& p) const;

    /// Laplacian of m_alpha expressed in the same basis:
    /// list of (monomial index, coefficient).
    std::vector<std::pair<int, double>> laplacian(int alpha) const;
};

/// Exact integrals of all scaled monomials up to max_degree over the
/// polygon, via the divergence theorem (valid for nonconvex elements).
std::vector<double> monomial_integrals(std::span<const Vec2> poly,
                                       const ScaledMonomialBasis& basis,
                                       int max_degree);

struct ElementConditioningError : std::runtime_error {
    ElementConditioningError(const std::string& msg, double cond)
        : std::runtime_error(msg), cond_estimate(cond) {}
    double cond_estimate;
};

enum class StabilizationScheme { DRecipe, DofiDofi, Trace };

StabilizationScheme parse_stabilization(const std::string& name);
std::string stabilization_name(StabilizationScheme s);

/// All local order-k VEM data on one element.
struct VemLocalData {
    int k = 1;
    std::size_t n_vertices = 0;
    int n_dofs = 0;       // ns*k + k(k-1)/2
    int n_monomials = 0;  // (k+1)(k+2)/2
    ScaledMonomialBasis basis;
    double area = 0.0;

    Eigen::MatrixXd D;         // DOFs of monomials, n_dofs x n_k
    Eigen::MatrixXd B;         // projector right-hand side, n_k x n_dofs
    Eigen::MatrixXd G;         // elliptic projector Gram data, n_k x n_k
    Eigen::MatrixXd H;         // monomial mass matrix, n_k x n_k
    Eigen::MatrixXd pi_nabla;  // elliptic projector onto monomial coeffs, n_k x n_dofs
    Eigen::MatrixXd pi_zero;   // L2 projector onto monomial coeffs, n_k x n_dofs
    Eigen::MatrixXd consistency;  // Pi' * Gtilde * Pi, n_dofs x n_dofs
    Eigen::MatrixXd stiffness;    // consistency + stabilization
};

/// Assemble D, B, G, H and both projectors on one element (the
/// stabilized stiffness uses the scheme passed in).
VemLocalData build_local(const Polygon& poly, int k,
                         StabilizationScheme scheme = StabilizationScheme::DRecipe);

/// Stabilization matrix composed with (I - Pi) on both sides; adding it
/// to `consistency` gives the stabilized local stiffness.
Eigen::MatrixXd stabilization(const Polygon& poly, const VemLocalData& data,
                              StabilizationScheme scheme);

/// The inner form of the stabilization before composition with (I - Pi):
/// identity (dofi-dofi), diag(A_ii) (d-recipe), or the edgewise
/// 1D tangential stiffness scaled by h_P (trace).
Eigen::MatrixXd stabilization_core(const Polygon& poly, const VemLocalData& data,
                                   StabilizationScheme scheme);

/// Load vector (f, Pi0 phi_i)_P with f integrated by ear-clip
/// quadrature of degree 2k+2.
Eigen::VectorXd local_load(const Polygon& poly, const VemLocalData& data,
                           const ScalarField& f);

/// Global DOF numbering: vertex DOFs, then per-edge Gauss-Lobatto
/// internal DOFs, then per-element internal moments.
struct DofMap {
    int k = 1;
    std::size_t n_vertex_dofs = 0;
    std::size_t n_edge_dofs = 0;
    std::size_t n_moment_dofs = 0;
    std::size_t total() const { return n_vertex_dofs + n_edge_dofs + n_moment_dofs; }

    struct Edge {
        std::size_t a, b;      // vertex indices, a < b
        std::size_t first_dof; // k-1 DOFs ordered from a to b
        bool boundary;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> element_edges;  // per element, per cycle position
    std::vector<std::size_t> element_moment_start;
    std::vector<bool> boundary_dof;

    /// Global DOF indices of element e in local order (vertices, edge
    /// internals per edge in cycle direction, internal moments).
    std::vector<std::size_t> element_dofs(const Mesh& mesh, std::size_t e) const;

    /// Coordinates of all vertex and edge DOFs (moment DOFs have none).
    std::vector<Vec2> dof_points(const Mesh& mesh) const;
};

DofMap build_dof_map(const Mesh& mesh, int k);

/// Interpolation DOFs of a smooth function: point values plus scaled
/// internal moments (D3).
Eigen::VectorXd interpolate(const ScalarField& u, const Mesh& mesh, const DofMap& dofs);

}  // namespace vemesh
