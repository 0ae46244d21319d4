#pragma once

#include <Eigen/Sparse>
#include <string>
#include <vector>

#include "vemesh/vem.hpp"

namespace vemesh {

/// Dirichlet problem data: exact solution (for interpolation and error
/// evaluation), forcing f = -laplacian(u), boundary trace g = u on the
/// domain boundary.
struct PoissonProblem {
    ScalarField u;
    ScalarField f;
    ScalarField g;
};

enum class SolverKind { Auto, Direct, Cg };

struct SolverConfig {
    int k = 1;
    StabilizationScheme scheme = StabilizationScheme::DRecipe;
    SolverKind solver = SolverKind::Auto;
    double cg_tol = 1e-12;
};

SolverKind parse_solver_kind(const std::string& name);
std::string solver_kind_name(SolverKind kind);

/// key=value serialization of the configuration record
/// (k, stabilization, solver, cg_tol), one pair per line.
std::string solver_config_to_string(const SolverConfig& config);
SolverConfig parse_solver_config(const std::string& text);

struct SolverError : std::runtime_error {
    SolverError(const std::string& msg, std::vector<double> residuals = {})
        : std::runtime_error(msg), residual_history(std::move(residuals)) {}
    std::vector<double> residual_history;
};

/// Per-element data kept around for error evaluation after the solve.
struct ElementProjection {
    ScaledMonomialBasis basis;
    Eigen::MatrixXd H;
    Eigen::MatrixXd pi_zero;
};

struct SolveResult {
    DofMap dofs;
    Eigen::SparseMatrix<double> stiffness_full;  // no boundary elimination
    Eigen::SparseMatrix<double> system;          // SPD system actually solved
    std::vector<std::size_t> free_dofs;          // free index -> global DOF
    Eigen::VectorXd solution;                    // full DOF vector incl. BC values
    std::vector<ElementProjection> projections;
    bool used_cg = false;
    int cg_iterations = 0;
};

/// Assemble the order-k stabilized VEM system for the Poisson problem,
/// eliminate Dirichlet DOFs by lifting g, and solve (direct sparse
/// Cholesky up to 2e4 free DOFs, otherwise IC(0)-preconditioned CG).
SolveResult assemble_and_solve(const Mesh& mesh, const SolverConfig& config,
                               const PoissonProblem& problem);

}  // namespace vemesh
