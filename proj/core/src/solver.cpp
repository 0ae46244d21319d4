#include "vemesh/solver.hpp"

#include <Eigen/SparseCholesky>
#include <cstdio>
#include <sstream>

#include "vemesh/conditioning.hpp"

namespace vemesh {

SolverKind parse_solver_kind(const std::string& name) {
    if (name == "auto") return SolverKind::Auto;
    if (name == "direct") return SolverKind::Direct;
    if (name == "cg") return SolverKind::Cg;
    throw std::invalid_argument("unknown solver '" + name + "'");
}

std::string solver_kind_name(SolverKind kind) {
    switch (kind) {
        case SolverKind::Auto: return "auto";
        case SolverKind::Direct: return "direct";
        case SolverKind::Cg: return "cg";
    }
    return "?";
}

std::string solver_config_to_string(const SolverConfig& config) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", config.cg_tol);
    return "k=" + std::to_string(config.k) + "\nstabilization=" +
           stabilization_name(config.scheme) + "\nsolver=" + solver_kind_name(config.solver) +
           "\ncg_tol=" + buf + "\n";
}

SolverConfig parse_solver_config(const std::string& text) {
    SolverConfig config;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("solver config: expected key=value, got '" + line + "'");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "k")
            config.k = std::stoi(value);
        else if (key == "stabilization")
            config.scheme = parse_stabilization(value);
        else if (key == "solver")
            config.solver = parse_solver_kind(value);
        else if (key == "cg_tol")
            config.cg_tol = std::stod(value);
        else
            throw std::invalid_argument("solver config: unknown key '" + key + "'");
    }
    return config;
}

SolveResult assemble_and_solve(const Mesh& mesh, const SolverConfig& config,
                               const PoissonProblem& problem) {
    SolveResult res;
    res.dofs = build_dof_map(mesh, config.k);
    const std::size_t n = res.dofs.total();

    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    res.projections.reserve(mesh.num_elements());

    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const Polygon poly = mesh.element_polygon(e);
        const VemLocalData local = build_local(poly, config.k, config.scheme);
        const Eigen::VectorXd fe = local_load(poly, local, problem.f);
        const std::vector<std::size_t> gdofs = res.dofs.element_dofs(mesh, e);
        for (std::size_t a = 0; a < gdofs.size(); ++a) {
            rhs(static_cast<Eigen::Index>(gdofs[a])) += fe(static_cast<Eigen::Index>(a));
            for (std::size_t b = 0; b < gdofs.size(); ++b) {
                trip.emplace_back(static_cast<Eigen::Index>(gdofs[a]),
                                  static_cast<Eigen::Index>(gdofs[b]),
                                  local.stiffness(static_cast<Eigen::Index>(a),
                                                  static_cast<Eigen::Index>(b)));
            }
        }
        res.projections.push_back({local.basis, local.H, local.pi_zero});
    }

    res.stiffness_full.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    res.stiffness_full.setFromTriplets(trip.begin(), trip.end());
    res.stiffness_full.makeCompressed();

    // Dirichlet lifting: boundary DOFs take the exact DOF values of g
    res.solution = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    const std::vector<Vec2> pts = res.dofs.dof_points(mesh);
    std::vector<Eigen::Index> global_to_free(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (res.dofs.boundary_dof[i]) {
            res.solution(static_cast<Eigen::Index>(i)) = problem.g(pts[i]);
        } else {
            global_to_free[i] = static_cast<Eigen::Index>(res.free_dofs.size());
            res.free_dofs.push_back(i);
        }
    }
    const Eigen::Index nf = static_cast<Eigen::Index>(res.free_dofs.size());
    if (nf == 0) throw SolverError("no free DOFs: mesh has no interior unknowns");

    std::vector<Eigen::Triplet<double>> trip_ff;
    Eigen::VectorXd rhs_f(nf);
    for (Eigen::Index fi = 0; fi < nf; ++fi)
        rhs_f(fi) = rhs(static_cast<Eigen::Index>(res.free_dofs[static_cast<std::size_t>(fi)]));
    for (Eigen::Index col = 0; col < res.stiffness_full.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(res.stiffness_full, col); it; ++it) {
            const Eigen::Index fi = global_to_free[static_cast<std::size_t>(it.row())];
            if (fi < 0) continue;
            const Eigen::Index fj = global_to_free[static_cast<std::size_t>(it.col())];
            if (fj >= 0) {
                trip_ff.emplace_back(fi, fj, it.value());
            } else {
                rhs_f(fi) -= it.value() * res.solution(it.col());
            }
        }
    }
    res.system.resize(nf, nf);
    res.system.setFromTriplets(trip_ff.begin(), trip_ff.end());
    res.system.makeCompressed();

    const bool use_cg = config.solver == SolverKind::Cg ||
                        (config.solver == SolverKind::Auto && nf > 20000);
    Eigen::VectorXd uf;
    if (!use_cg) {
        Eigen::SimplicialLDLT<SparseMatrix> ldlt(res.system);
        if (ldlt.info() != Eigen::Success)
            throw SolverError("sparse Cholesky factorization failed");
        uf = ldlt.solve(rhs_f);
    } else {
        const int max_iter = 10 * static_cast<int>(nf);
        PcgResult pcg = pcg_ic0(res.system, rhs_f, config.cg_tol, max_iter);
        res.used_cg = true;
        res.cg_iterations = pcg.iterations;
        if (!pcg.converged)
            throw SolverError("CG failed to converge within " + std::to_string(max_iter) +
                                  " iterations",
                              pcg.residual_history);
        uf = pcg.x;
    }
    for (Eigen::Index fi = 0; fi < nf; ++fi)
        res.solution(static_cast<Eigen::Index>(res.free_dofs[static_cast<std::size_t>(fi)])) = uf(fi);
    return res;
}

}  // namespace vemesh
