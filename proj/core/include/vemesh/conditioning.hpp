#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <stdexcept>
#include <vector>

namespace vemesh {

using SparseMatrix = Eigen::SparseMatrix<double>;
using ApplyFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct ConditioningError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Hager-Higham estimate of the 1-norm of a linear operator given the
/// action of the operator and of its transpose. A lower bound by
/// construction.
double one_norm_estimate(Eigen::Index n, const ApplyFn& apply, const ApplyFn& apply_t);

/// Lower estimate of the 1-norm condition number of an SPD sparse
/// matrix: exact ||A||_1 times the Hager-Higham estimate of ||A^-1||_1
/// through a sparse Cholesky factorization.
double cond1_estimate(const SparseMatrix& A);

/// Zero-fill incomplete Cholesky factor on the sparsity pattern of the
/// lower triangle of A. Negative pivots trigger a diagonal shift
/// alpha*trace/n with alpha = 1e-3, doubling until the factorization
/// succeeds.
struct IncompleteCholesky {
    SparseMatrix L;       // lower triangular
    double shift = 0.0;   // total diagonal boost applied
    int shift_retries = 0;

    Eigen::VectorXd solve_lower(const Eigen::VectorXd& b) const;   // L y = b
    Eigen::VectorXd solve_upper(const Eigen::VectorXd& b) const;   // L^T x = y
    Eigen::VectorXd apply_preconditioner(const Eigen::VectorXd& r) const;  // (L L^T)^-1 r
};

IncompleteCholesky ic0_factor(const SparseMatrix& A);

/// Lower estimate of the 1-norm condition number of the IC(0)
/// preconditioned operator L^-1 A L^-T, applied in operator form.
double cond1_estimate_preconditioned(const SparseMatrix& A, const IncompleteCholesky& ic);

struct PcgResult {
    Eigen::VectorXd x;
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_history;
};

/// Preconditioned conjugate gradients with IC(0), relative residual
/// tolerance, max_iter cap.
PcgResult pcg_ic0(const SparseMatrix& A, const Eigen::VectorXd& b, double rel_tol,
                  int max_iter);

}  // namespace vemesh
