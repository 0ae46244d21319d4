#include "vemesh/conditioning.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>

namespace vemesh {

double one_norm_estimate(Eigen::Index n, const ApplyFn& apply, const ApplyFn& apply_t) {
    if (n == 0) throw ConditioningError("one_norm_estimate: empty operator");
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    double estimate = 0.0;
    for (int it = 0; it < 16; ++it) {
        const Eigen::VectorXd y = apply(x);
        estimate = y.lpNorm<1>();
        Eigen::VectorXd xi(n);
        for (Eigen::Index i = 0; i < n; ++i) xi(i) = y(i) >= 0.0 ? 1.0 : -1.0;
        const Eigen::VectorXd z = apply_t(xi);
        Eigen::Index j = 0;
        const double zmax = z.cwiseAbs().maxCoeff(&j);
        if (zmax <= z.dot(x)) break;
        x.setZero();
        x(j) = 1.0;
    }
    return estimate;
}

double cond1_estimate(const SparseMatrix& A) {
    const Eigen::Index n = A.rows();
    double norm_a = 0.0;
    for (Eigen::Index j = 0; j < A.outerSize(); ++j) {
        double col = 0.0;
        for (SparseMatrix::InnerIterator it(A, j); it; ++it) col += std::abs(it.value());
        norm_a = std::max(norm_a, col);
    }
    Eigen::SimplicialLDLT<SparseMatrix> llt(A);
    if (llt.info() != Eigen::Success)
        throw ConditioningError("cond1_estimate: factorization breakdown");
    const ApplyFn inv = [&](const Eigen::VectorXd& v) { return llt.solve(v); };
    const double norm_ainv = one_norm_estimate(n, inv, inv);
    return norm_a * norm_ainv;
}

namespace {

SparseMatrix lower_triangle(const SparseMatrix& A) {
    SparseMatrix L(A.rows(), A.cols());
    std::vector<Eigen::Triplet<double>> trip;
    for (Eigen::Index j = 0; j < A.outerSize(); ++j)
        for (SparseMatrix::InnerIterator it(A, j); it; ++it)
            if (it.row() >= it.col()) trip.emplace_back(it.row(), it.col(), it.value());
    L.setFromTriplets(trip.begin(), trip.end());
    L.makeCompressed();
    return L;
}

/// One attempt at the zero-fill factorization; false on a nonpositive pivot.
bool try_ic0(SparseMatrix& L) {
    const Eigen::Index n = L.rows();
    const auto* outer = L.outerIndexPtr();
    const auto* inner = L.innerIndexPtr();
    double* values = L.valuePtr();

    // column-major lower triangle: column j starts at its diagonal entry
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index start = outer[j];
        const Eigen::Index end = outer[j + 1];
        if (start == end || inner[start] != j) return false;  // missing diagonal

        double diag = values[start];
        if (diag <= 0.0) return false;
        const double pivot = std::sqrt(diag);
        values[start] = pivot;
        for (Eigen::Index p = start + 1; p < end; ++p) values[p] /= pivot;

        // right-looking update of the remaining columns in this column's pattern
        for (Eigen::Index p = start + 1; p < end; ++p) {
            const Eigen::Index i = inner[p];
            const double lij = values[p];
            // update column i entries that also appear in column j
            Eigen::Index pi = outer[i];
            Eigen::Index pj = p;
            const Eigen::Index endi = outer[i + 1];
            while (pi < endi && pj < end) {
                if (inner[pi] == inner[pj]) {
                    values[pi] -= lij * values[pj];
                    ++pi;
                    ++pj;
                } else if (inner[pi] < inner[pj]) {
                    ++pi;
                } else {
                    ++pj;
                }
            }
        }
    }
    return true;
}

}  // namespace

IncompleteCholesky ic0_factor(const SparseMatrix& A) {
    IncompleteCholesky ic;
    const double trace_over_n = [&] {
        double t = 0.0;
        for (Eigen::Index i = 0; i < A.rows(); ++i) t += A.coeff(i, i);
        return t / static_cast<double>(A.rows());
    }();

    double alpha = 0.0;
    for (int attempt = 0; attempt < 60; ++attempt) {
        SparseMatrix L = lower_triangle(A);
        if (alpha > 0.0) {
            for (Eigen::Index j = 0; j < L.outerSize(); ++j)
                for (SparseMatrix::InnerIterator it(L, j); it; ++it)
                    if (it.row() == it.col()) it.valueRef() += alpha;
        }
        if (try_ic0(L)) {
            ic.L = std::move(L);
            ic.shift = alpha;
            return ic;
        }
        ++ic.shift_retries;
        alpha = alpha == 0.0 ? 1e-3 * trace_over_n : 2.0 * alpha;
    }
    throw ConditioningError("ic0_factor: shift-and-retry failed to produce positive pivots");
}

Eigen::VectorXd IncompleteCholesky::solve_lower(const Eigen::VectorXd& b) const {
    return L.triangularView<Eigen::Lower>().solve(b);
}

Eigen::VectorXd IncompleteCholesky::solve_upper(const Eigen::VectorXd& b) const {
    return L.transpose().triangularView<Eigen::Upper>().solve(b);
}

Eigen::VectorXd IncompleteCholesky::apply_preconditioner(const Eigen::VectorXd& r) const {
    return solve_upper(solve_lower(r));
}

double cond1_estimate_preconditioned(const SparseMatrix& A, const IncompleteCholesky& ic) {
    const Eigen::Index n = A.rows();
    const ApplyFn m = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return ic.solve_lower(A * ic.solve_upper(v));
    };
    const double norm_m = one_norm_estimate(n, m, m);

    Eigen::SimplicialLDLT<SparseMatrix> llt(A);
    if (llt.info() != Eigen::Success)
        throw ConditioningError("cond1_estimate_preconditioned: factorization breakdown");
    const ApplyFn minv = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return ic.L.transpose() * llt.solve(ic.L * v);
    };
    const double norm_minv = one_norm_estimate(n, minv, minv);
    return norm_m * norm_minv;
}

PcgResult pcg_ic0(const SparseMatrix& A, const Eigen::VectorXd& b, double rel_tol,
                  int max_iter) {
    PcgResult res;
    const Eigen::Index n = A.rows();
    res.x = Eigen::VectorXd::Zero(n);
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        res.converged = true;
        return res;
    }
    const IncompleteCholesky ic = ic0_factor(A);
    Eigen::VectorXd r = b;
    Eigen::VectorXd z = ic.apply_preconditioner(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    for (int it = 0; it < max_iter; ++it) {
        const Eigen::VectorXd ap = A * p;
        const double alpha = rz / p.dot(ap);
        res.x += alpha * p;
        r -= alpha * ap;
        const double rel = r.norm() / bnorm;
        res.residual_history.push_back(rel);
        res.iterations = it + 1;
        if (rel <= rel_tol) {
            res.converged = true;
            return res;
        }
        z = ic.apply_preconditioner(r);
        const double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    return res;
}

}  // namespace vemesh
