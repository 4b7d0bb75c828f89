#include "conjpair/dtn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace conjpair {

namespace {

// Plain Jacobi-preconditioned CG for an SPD system (no kernel to dodge).
Eigen::VectorXd cg_spd(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& rhs,
                       double tol, int maxit, const Eigen::VectorXd* warm) {
    const int n = static_cast<int>(A.rows());
    Eigen::VectorXd inv_diag = A.diagonal();
    for (int i = 0; i < n; ++i) {
        if (!(inv_diag[i] > 0))
            throw InvalidParameterError("interior solve: nonpositive diagonal entry");
        inv_diag[i] = 1.0 / inv_diag[i];
    }
    const double bnorm = rhs.norm();
    if (bnorm == 0.0) return Eigen::VectorXd::Zero(n);

    Eigen::VectorXd x = warm != nullptr && warm->size() == n
                            ? *warm
                            : Eigen::VectorXd::Zero(n);
    Eigen::VectorXd r = rhs - A * x;
    Eigen::VectorXd z = inv_diag.cwiseProduct(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    double rel = r.norm() / bnorm;
    for (int it = 0; it < maxit && rel > tol; ++it) {
        const Eigen::VectorXd q = A * p;
        const double pq = p.dot(q);
        if (!(pq > 0)) throw ConvergenceError("interior solve: CG broke down", rel);
        const double alpha = rz / pq;
        x += alpha * p;
        r -= alpha * q;
        rel = r.norm() / bnorm;
        z = inv_diag.cwiseProduct(r);
        const double rz_new = r.dot(z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    if (rel > tol) throw ConvergenceError("interior solve: no convergence", rel);
    return x;
}

int worker_count(int columns) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("CONJPAIR_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return std::max(1, std::min<int>(static_cast<int>(n), columns));
}

}  // namespace

DtnMatrix assemble_dtn(const Mesh& mesh, const CoefficientField& gamma,
                       const SolverConfig& cfg) {
    if (mesh.boundary_faces.empty())
        throw InvalidParameterError("dtn: mesh has no boundary");
    const SparseForm K = assemble_stiffness(mesh, gamma);
    const int n = mesh.num_vertices();

    DtnMatrix dtn;
    dtn.boundary_nodes = mesh.boundary_vertex_indices();
    const auto interior = mesh.interior_vertex_indices();
    const int nb = static_cast<int>(dtn.boundary_nodes.size());
    const int ni = static_cast<int>(interior.size());

    std::vector<int> role(n, -1);  // boundary: index into b, interior: index into i
    std::vector<char> is_boundary(n, 0);
    for (int k = 0; k < nb; ++k) {
        role[dtn.boundary_nodes[k]] = k;
        is_boundary[dtn.boundary_nodes[k]] = 1;
    }
    for (int k = 0; k < ni; ++k) role[interior[k]] = k;

    std::vector<Eigen::Triplet<double>> tii, tib, tbb;
    for (int col = 0; col < K.mat.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(K.mat, col); it; ++it) {
            const int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
            if (!is_boundary[r] && !is_boundary[c])
                tii.emplace_back(role[r], role[c], it.value());
            else if (!is_boundary[r] && is_boundary[c])
                tib.emplace_back(role[r], role[c], it.value());
            else if (is_boundary[r] && is_boundary[c])
                tbb.emplace_back(role[r], role[c], it.value());
        }
    }
    Eigen::SparseMatrix<double> Aii(ni, ni), Aib(ni, nb), Abb(nb, nb);
    Aii.setFromTriplets(tii.begin(), tii.end());
    Aib.setFromTriplets(tib.begin(), tib.end());
    Abb.setFromTriplets(tbb.begin(), tbb.end());
    const Eigen::SparseMatrix<double> Abi = Aib.transpose();

    dtn.mat = Eigen::MatrixXd(Abb);
    if (ni == 0) return dtn;

    const int cg_maxit = cfg.cg_maxit > 0 ? cfg.cg_maxit : 10 * std::max(ni, 1);
    const int workers = worker_count(nb);
    std::vector<std::string> failures(workers);
    std::vector<std::thread> pool;
    const int chunk = (nb + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
        const int lo = t * chunk, hi = std::min(nb, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, t, lo, hi]() {
            try {
                Eigen::VectorXd warm = Eigen::VectorXd::Zero(ni);
                for (int j = lo; j < hi; ++j) {
                    const Eigen::VectorXd rhs = Aib.col(j);
                    const Eigen::VectorXd x = cg_spd(Aii, rhs, cfg.cg_tol, cg_maxit, &warm);
                    dtn.mat.col(j) -= Abi * x;
                    warm = x;
                }
            } catch (const std::exception& ex) {
                failures[t] = std::string(ex.what()) + " (boundary column block " +
                              std::to_string(lo) + ".." + std::to_string(hi - 1) + ")";
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& msg : failures)
        if (!msg.empty()) throw ConvergenceError("dtn assembly: " + msg, 0.0);
    return dtn;
}

double dtn_distance(const DtnMatrix& a, const DtnMatrix& b) {
    if (a.boundary_nodes != b.boundary_nodes)
        throw CompatibilityError("dtn distance: boundary index maps differ");
    const int m = static_cast<int>(a.mat.rows());
    auto deflate = [m](const Eigen::MatrixXd& x) {
        const Eigen::MatrixXd p =
            Eigen::MatrixXd::Identity(m, m) - Eigen::MatrixXd::Constant(m, m, 1.0 / m);
        return Eigen::MatrixXd(p * x * p);
    };
    const double denom = deflate(a.mat).norm();
    if (!(denom > 0)) throw DegenerateFieldError("dtn distance: reference map is zero");
    return deflate(a.mat - b.mat).norm() / denom;
}

DtnExperimentReport dtn_experiment(const Mesh& mesh,
                                   const std::vector<CoefficientField>& gammas,
                                   const std::vector<ScalarField>& ws,
                                   const SolverConfig& cfg) {
    const int ng = static_cast<int>(gammas.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();

    DtnExperimentReport rep;
    rep.gamma_ok.assign(ng, false);
    rep.gamma_errors.assign(ng, "");
    std::vector<DtnMatrix> maps(ng);
    for (int i = 0; i < ng; ++i) {
        try {
            maps[i] = assemble_dtn(mesh, gammas[i], cfg);
            rep.gamma_ok[i] = true;
        } catch (const std::exception& ex) {
            rep.gamma_errors[i] = ex.what();
        }
    }

    rep.distances = Eigen::MatrixXd::Constant(ng, ng, nan);
    for (int i = 0; i < ng; ++i)
        for (int j = 0; j < ng; ++j) {
            if (!rep.gamma_ok[i] || !rep.gamma_ok[j]) continue;
            try {
                rep.distances(i, j) = dtn_distance(maps[i], maps[j]);
            } catch (const std::exception&) {
                // left as NaN
            }
        }

    SolverConfig pair_cfg = cfg;
    pair_cfg.mode = Mode::Gamma;
    for (int i = 0; i < ng; ++i)
        for (int j = 0; j < static_cast<int>(ws.size()); ++j) {
            DtnPairDiagnostics cell;
            cell.gamma_index = i;
            cell.w_index = j;
            try {
                const PairSolveReport pair =
                    alternating_pair_solve(mesh, ws[j], nullptr, &gammas[i], pair_cfg);
                cell.ok = true;
                cell.mu = pair.mu;
                cell.iterations = pair.iterations;
                cell.converged = pair.converged;
                if (!pair.residual_history.empty()) {
                    cell.r1 = pair.residual_history.back()[0];
                    cell.r2 = pair.residual_history.back()[1];
                }
            } catch (const std::exception& ex) {
                cell.error = ex.what();
            }
            rep.pairs.push_back(cell);
        }
    return rep;
}

} // namespace conjpair
