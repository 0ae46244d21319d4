#pragma once

#include <string>

#include "vemesh/conditioning.hpp"
#include "vemesh/solver.hpp"

namespace vemesh {

/// The full per-run performance record (one CSV row).
struct SolveReport {
    std::string dataset;
    int level = 0;
    int k = 1;
    std::string scheme;
    std::size_t dof_count = 0;
    double h_max = 0.0;
    double h_av = 0.0;
    double rel_h1_energy = 0.0;           // P1
    double rel_linf_dofs = 0.0;           // P2
    double rel_l2 = 0.0;                  // P3
    double cond1_stiffness = 0.0;         // P4
    double cond1_preconditioned = 0.0;    // P5
    double err_const = 0.0;               // P6 = P1 / h_av^k
    double aubin_nitsche = 0.0;           // P7 = P2 / (h_av * P1)
    double precond_effectiveness = 0.0;   // P8 = P5 / P4
    double max_cond_G = 0.0;
    double max_cond_H = 0.0;
    double max_pi_nabla_discrepancy = 0.0;
    double max_pi0_discrepancy = 0.0;
};

struct UndefinedDenominatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// P1: discrete-energy norm of u_h - u_I relative to that of u_I.
double perf1_energy(const SolveResult& solve, const Eigen::VectorXd& u_interp);

/// P2: max DOF error relative to the max DOF of the exact solution.
double perf2_linf(const Eigen::VectorXd& u_h, const Eigen::VectorXd& u_interp);

/// P3: elementwise L2 distance between Pi0 u_h and the L2 projection of
/// the exact u, relative to the norm of the latter.
double perf3_l2(const Mesh& mesh, const SolveResult& solve, const ScalarField& u);

struct ElementDiagnostics {
    double max_cond_G = 0.0;
    double max_cond_H = 0.0;
    double max_pi_nabla_discrepancy = 0.0;  // max |Pi_nabla * D - I|
    double max_pi0_discrepancy = 0.0;       // max |Pi0 * D - I|
};

/// Elementwise maxima of the 2-norm condition numbers of G and H and of
/// the projector identity discrepancies.
ElementDiagnostics element_diagnostics(const Mesh& mesh, int k);

enum class TestCase { Test1, Test2 };

TestCase parse_test_case(const std::string& name);
std::string test_case_name(TestCase t);

/// Test 1: u = sin(pi x) sin(pi y) / (2 pi^2). Test 2: the Franke
/// function, with f from analytic differentiation.
PoissonProblem ground_truth(TestCase test);

/// Solve + all eight performance indexes + element diagnostics.
SolveReport analyze(const Mesh& mesh, const SolverConfig& config, TestCase test,
                    const std::string& dataset_name = "", int level = 0);

std::string solve_report_csv_header();
std::string solve_report_csv_row(const SolveReport& report);

}  // namespace vemesh
