#include "vemesh/performance.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace vemesh {

double perf1_energy(const SolveResult& solve, const Eigen::VectorXd& u_interp) {
    const Eigen::VectorXd diff = solve.solution - u_interp;
    const double num = diff.dot(solve.stiffness_full * diff);
    const double den = u_interp.dot(solve.stiffness_full * u_interp);
    if (den <= 0.0)
        throw UndefinedDenominatorError("perf1: interpolant has zero discrete energy");
    return std::sqrt(std::max(num, 0.0)) / std::sqrt(den);
}

double perf2_linf(const Eigen::VectorXd& u_h, const Eigen::VectorXd& u_interp) {
    const double den = u_interp.cwiseAbs().maxCoeff();
    if (den == 0.0) throw UndefinedDenominatorError("perf2: exact solution has zero DOFs");
    return (u_h - u_interp).cwiseAbs().maxCoeff() / den;
}

double perf3_l2(const Mesh& mesh, const SolveResult& solve, const ScalarField& u) {
    double num = 0.0, den = 0.0;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const ElementProjection& proj = solve.projections[e];
        const Polygon poly = mesh.element_polygon(e);
        const int nk = static_cast<int>(proj.H.rows());

        // coefficients of Pi0 u_h on this element
        const std::vector<std::size_t> gdofs = solve.dofs.element_dofs(mesh, e);
        Eigen::VectorXd local(static_cast<Eigen::Index>(gdofs.size()));
        for (std::size_t i = 0; i < gdofs.size(); ++i)
            local(static_cast<Eigen::Index>(i)) =
                solve.solution(static_cast<Eigen::Index>(gdofs[i]));
        const Eigen::VectorXd ch = proj.pi_zero * local;

        // L2 projection of the exact u
        Eigen::VectorXd b = Eigen::VectorXd::Zero(nk);
        const Quadrature2D quad =
            polygon_quadrature(poly, static_cast<std::size_t>(2 * solve.dofs.k + 2));
        for (std::size_t q = 0; q < quad.points.size(); ++q) {
            const double uw = quad.weights[q] * u(quad.points[q]);
            for (int alpha = 0; alpha < nk; ++alpha)
                b(alpha) += uw * proj.basis.eval(alpha, quad.points[q]);
        }
        const Eigen::VectorXd cu = proj.H.ldlt().solve(b);

        const Eigen::VectorXd d = ch - cu;
        num += d.dot(proj.H * d);
        den += cu.dot(proj.H * cu);
    }
    if (den <= 0.0) throw UndefinedDenominatorError("perf3: exact projection has zero norm");
    return std::sqrt(std::max(num, 0.0)) / std::sqrt(den);
}

namespace {

double cond2(const Eigen::MatrixXd& M) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

}  // namespace

ElementDiagnostics element_diagnostics(const Mesh& mesh, int k) {
    ElementDiagnostics diag;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const VemLocalData local = build_local(mesh.element_polygon(e), k);
        diag.max_cond_G = std::max(diag.max_cond_G, cond2(local.G));
        diag.max_cond_H = std::max(diag.max_cond_H, cond2(local.H));
        const Eigen::MatrixXd I =
            Eigen::MatrixXd::Identity(local.n_monomials, local.n_monomials);
        diag.max_pi_nabla_discrepancy =
            std::max(diag.max_pi_nabla_discrepancy,
                     (local.pi_nabla * local.D - I).cwiseAbs().maxCoeff());
        diag.max_pi0_discrepancy =
            std::max(diag.max_pi0_discrepancy,
                     (local.pi_zero * local.D - I).cwiseAbs().maxCoeff());
    }
    return diag;
}

TestCase parse_test_case(const std::string& name) {
    if (name == "test1") return TestCase::Test1;
    if (name == "test2") return TestCase::Test2;
    throw std::invalid_argument("unknown test case '" + name + "'");
}

std::string test_case_name(TestCase t) {
    return t == TestCase::Test1 ? "test1" : "test2";
}

PoissonProblem ground_truth(TestCase test) {
    if (test == TestCase::Test1) {
        const auto u = [](Vec2 p) {
            return std::sin(M_PI * p.x) * std::sin(M_PI * p.y) / (2.0 * M_PI * M_PI);
        };
        const auto f = [](Vec2 p) { return std::sin(M_PI * p.x) * std::sin(M_PI * p.y); };
        return {u, f, u};
    }

    // Franke function: four exponential bumps
    const auto u = [](Vec2 p) {
        const double x = p.x, y = p.y;
        return 0.75 * std::exp(-(std::pow(9 * x - 2, 2) + std::pow(9 * y - 2, 2)) / 4.0) +
               0.75 * std::exp(-std::pow(9 * x + 1, 2) / 49.0 - (9 * y + 1) / 10.0) +
               0.5 * std::exp(-(std::pow(9 * x - 7, 2) + std::pow(9 * y - 3, 2)) / 4.0) +
               0.2 * std::exp(-std::pow(9 * x - 4, 2) - std::pow(9 * y - 7, 2));
    };
    // f = -laplacian(u); each term is c*e^g with
    // laplacian(c e^g) = c e^g (gx^2 + gy^2 + gxx + gyy)
    const auto f = [](Vec2 p) {
        const double x = p.x, y = p.y;
        double lap = 0.0;
        {
            const double g = -(std::pow(9 * x - 2, 2) + std::pow(9 * y - 2, 2)) / 4.0;
            const double gx = -40.5 * (x - 2.0 / 9.0);  // -(81/2)(x - 2/9)
            const double gy = -40.5 * (y - 2.0 / 9.0);
            lap += 0.75 * std::exp(g) * (gx * gx + gy * gy - 81.0);
        }
        {
            const double g = -std::pow(9 * x + 1, 2) / 49.0 - (9 * y + 1) / 10.0;
            const double gx = -(162.0 / 49.0) * (x + 1.0 / 9.0);
            const double gy = -0.9;
            lap += 0.75 * std::exp(g) * (gx * gx + gy * gy - 162.0 / 49.0);
        }
        {
            const double g = -(std::pow(9 * x - 7, 2) + std::pow(9 * y - 3, 2)) / 4.0;
            const double gx = -40.5 * (x - 7.0 / 9.0);
            const double gy = -40.5 * (y - 3.0 / 9.0);
            lap += 0.5 * std::exp(g) * (gx * gx + gy * gy - 81.0);
        }
        {
            const double g = -std::pow(9 * x - 4, 2) - std::pow(9 * y - 7, 2);
            const double gx = -162.0 * (x - 4.0 / 9.0);
            const double gy = -162.0 * (y - 7.0 / 9.0);
            lap += 0.2 * std::exp(g) * (gx * gx + gy * gy - 324.0);
        }
        return -lap;
    };
    return {u, f, u};
}

SolveReport analyze(const Mesh& mesh, const SolverConfig& config, TestCase test,
                    const std::string& dataset_name, int level) {
    SolveReport rep;
    rep.dataset = dataset_name;
    rep.level = level;
    rep.k = config.k;
    rep.scheme = stabilization_name(config.scheme);

    const PoissonProblem problem = ground_truth(test);
    const SolveResult solve = assemble_and_solve(mesh, config, problem);
    rep.dof_count = solve.dofs.total();
    rep.h_max = mesh_size(mesh);
    rep.h_av = mean_element_diameter(mesh);

    const Eigen::VectorXd ui = interpolate(problem.u, mesh, solve.dofs);
    rep.rel_h1_energy = perf1_energy(solve, ui);
    rep.rel_linf_dofs = perf2_linf(solve.solution, ui);
    rep.rel_l2 = perf3_l2(mesh, solve, problem.u);

    rep.cond1_stiffness = cond1_estimate(solve.system);
    const IncompleteCholesky ic = ic0_factor(solve.system);
    rep.cond1_preconditioned = cond1_estimate_preconditioned(solve.system, ic);

    rep.err_const = rep.rel_h1_energy / std::pow(rep.h_av, config.k);
    rep.aubin_nitsche = rep.rel_linf_dofs / (rep.h_av * rep.rel_h1_energy);
    rep.precond_effectiveness = rep.cond1_preconditioned / rep.cond1_stiffness;

    const ElementDiagnostics diag = element_diagnostics(mesh, config.k);
    rep.max_cond_G = diag.max_cond_G;
    rep.max_cond_H = diag.max_cond_H;
    rep.max_pi_nabla_discrepancy = diag.max_pi_nabla_discrepancy;
    rep.max_pi0_discrepancy = diag.max_pi0_discrepancy;
    return rep;
}

std::string solve_report_csv_header() {
    return "dataset,level,k,scheme,dofs,h_max,h_av,P1,P2,P3,P4,P5,P6,P7,P8,"
           "log10_condG,log10_condH,log10_piN_disc,log10_pi0_disc";
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double log10_or_floor(double v) {
    return v > 0.0 ? std::log10(v) : -std::numeric_limits<double>::infinity();
}

}  // namespace

std::string solve_report_csv_row(const SolveReport& r) {
    std::ostringstream out;
    out << r.dataset << ',' << r.level << ',' << r.k << ',' << r.scheme << ','
        << r.dof_count << ',' << fmt(r.h_max) << ',' << fmt(r.h_av) << ','
        << fmt(r.rel_h1_energy) << ',' << fmt(r.rel_linf_dofs) << ',' << fmt(r.rel_l2)
        << ',' << fmt(r.cond1_stiffness) << ',' << fmt(r.cond1_preconditioned) << ','
        << fmt(r.err_const) << ',' << fmt(r.aubin_nitsche) << ','
        << fmt(r.precond_effectiveness) << ',' << fmt(log10_or_floor(r.max_cond_G)) << ','
        << fmt(log10_or_floor(r.max_cond_H)) << ','
        << fmt(log10_or_floor(r.max_pi_nabla_discrepancy)) << ','
        << fmt(log10_or_floor(r.max_pi0_discrepancy));
    return out.str();
}

}  // namespace vemesh
