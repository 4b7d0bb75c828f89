#include "conjpair/solver.hpp"

#include "conjpair/verify.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

namespace conjpair {

namespace {

void project_out_ones(Eigen::VectorXd& x) {
    x.array() -= x.mean();
}

// Deterministic uniform in [-1, 1): mt19937_64 output mapped through the
// 53-bit mantissa, so runs are identical across platforms.
double uniform_pm1(std::mt19937_64& rng) {
    return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
}

ScalarField default_seed_vector(const Mesh& mesh, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ScalarField v(mesh.num_vertices());
    for (int i = 0; i < mesh.num_vertices(); ++i)
        v[i] = mesh.vertices(i, 1) + 1e-4 * uniform_pm1(rng);
    return v;
}

ScalarField restart_seed_vector(const Mesh& mesh, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ScalarField v(mesh.num_vertices());
    for (int i = 0; i < mesh.num_vertices(); ++i) v[i] = uniform_pm1(rng);
    return v;
}

}  // namespace

ScalarField solve_neumann(const SparseForm& K, const Eigen::VectorXd& f,
                          const SolverConfig& cfg, const ScalarField* warm_start) {
    const int n = K.dimension();
    if (f.size() != n) throw DimensionError("neumann solve: rhs length != dimension");

    const double fnorm = f.norm();
    if (std::abs(f.sum()) > 1e-10 * std::max(1.0, std::sqrt(double(n)) * fnorm))
        throw CompatibilityError("neumann solve: rhs not orthogonal to constants");
    if (fnorm == 0.0) return Eigen::VectorXd::Zero(n);

    Eigen::VectorXd inv_diag = K.mat.diagonal();
    for (int i = 0; i < n; ++i) {
        if (!(inv_diag[i] > 0))
            throw InvalidParameterError("neumann solve: nonpositive diagonal entry");
        inv_diag[i] = 1.0 / inv_diag[i];
    }

    Eigen::VectorXd x;
    if (warm_start != nullptr && warm_start->size() == n) {
        x = *warm_start;
        project_out_ones(x);
    } else {
        x = Eigen::VectorXd::Zero(n);
    }

    Eigen::VectorXd r = f - K.mat * x;
    project_out_ones(r);
    Eigen::VectorXd z = inv_diag.cwiseProduct(r);
    project_out_ones(z);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    double rel = r.norm() / fnorm;

    const int maxit = cfg.cg_maxit > 0 ? cfg.cg_maxit : 10 * n;
    for (int it = 0; it < maxit && rel > cfg.cg_tol; ++it) {
        const Eigen::VectorXd q = K.mat * p;
        const double pq = p.dot(q);
        if (!(pq > 0))
            throw ConvergenceError("neumann solve: conjugate gradient broke down", rel);
        const double alpha = rz / pq;
        x += alpha * p;
        r -= alpha * q;
        project_out_ones(r);
        rel = r.norm() / fnorm;
        z = inv_diag.cwiseProduct(r);
        project_out_ones(z);
        const double rz_new = r.dot(z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    if (rel > cfg.cg_tol)
        throw ConvergenceError("neumann solve: no convergence within cg_maxit", rel);
    project_out_ones(x);
    return x;
}

ScalarField conjugate_of(const Mesh& mesh, const ScalarField& v, const ScalarField& w,
                         const CoefficientField& gamma, const SolverConfig& cfg) {
    const SparseForm K = assemble_stiffness(mesh, gamma);
    const Eigen::VectorXd f = assemble_cross_load(mesh, v, w, 1.0);
    ScalarField u = solve_neumann(K, f, cfg);
    u.array() -= mesh.mean(u);
    return u;
}

ScalarField dual_conjugate_of(const Mesh& mesh, const ScalarField& u, const ScalarField& w,
                              const CoefficientField& gamma, const SolverConfig& cfg) {
    check_gamma_bounds(gamma, mesh.num_tets());
    CoefficientField inv_gamma;
    inv_gamma.values = gamma.values.cwiseInverse();
    inv_gamma.bound = gamma.bound;
    const SparseForm K = assemble_stiffness(mesh, inv_gamma);
    // (grad w x grad u) . grad phi pairs w before u under the cross load
    const Eigen::VectorXd f = assemble_cross_load(mesh, w, u, 1.0);
    ScalarField v = solve_neumann(K, f, cfg);
    v.array() -= mesh.mean(v);
    return v;
}

PairSolveReport alternating_pair_solve(const Mesh& mesh, const ScalarField& w,
                                       const ScalarField* v0, const CoefficientField* gamma,
                                       const SolverConfig& cfg) {
    if (cfg.maxit < 1) throw InvalidParameterError("pair solve: maxit must be >= 1");
    if (!(cfg.tol > 0) || !(cfg.cg_tol > 0))
        throw InvalidParameterError("pair solve: tolerances must be positive");

    const auto [weight_a, weight_d] = mode_weights(mesh, w, cfg.mode, gamma);
    const SparseForm Ka = assemble_stiffness(mesh, weight_a);
    const SparseForm Kd = assemble_stiffness(mesh, weight_d);
    const SparseForm B = assemble_det_form(mesh, w);
    const Eigen::SparseMatrix<double> Bt = B.mat.transpose();

    PairSolveReport rep;

    // A start is degenerate when its first half-sweep carries no coupling
    // energy; try fresh seeded vectors before giving up.
    ScalarField v = v0 != nullptr ? *v0 : default_seed_vector(mesh, cfg.seed);
    ScalarField u;
    for (int attempt = 0;; ++attempt) {
        v.array() -= mesh.mean(v);
        const double ev = v.dot(Kd.mat * v);
        if (ev > 0) {
            u = solve_neumann(Ka, B.mat * v, cfg);
            const double eu = u.dot(Ka.mat * u);
            if (std::sqrt(eu) > 1e-10 * std::sqrt(ev)) break;
        }
        if (attempt >= 3)
            throw DegenerateFieldError(
                "pair solve: starting vector stays in the coupling kernel after 3 restarts");
        rep.restarts += 1;
        v = restart_seed_vector(mesh, cfg.seed + attempt + 1);
    }

    double mu_prev = 0.0;
    for (int sweep = 1; sweep <= cfg.maxit; ++sweep) {
        if (sweep > 1) u = solve_neumann(Ka, B.mat * v, cfg, &u);
        v = solve_neumann(Kd, Bt * u, cfg, sweep > 1 ? &v : nullptr);

        const double eu = u.dot(Ka.mat * u);
        const double ev = v.dot(Kd.mat * v);
        const double scale = 1.0 / std::sqrt(0.5 * (eu + ev));
        u *= scale;
        v *= scale;
        const double mu = u.dot(B.mat * v);

        const auto res = residual_report(mesh, u, v, w, gamma, cfg.mode);
        rep.residual_history.push_back({res.r1, res.r2});
        rep.iterations = sweep;
        rep.mu = mu;
        if (sweep > 1 && std::abs(mu - mu_prev) <= cfg.tol * std::max(std::abs(mu), 1e-30)) {
            rep.converged = true;
            break;
        }
        mu_prev = mu;
    }

    u.array() -= mesh.mean(u);
    v.array() -= mesh.mean(v);
    rep.u = std::move(u);
    rep.v = std::move(v);
    return rep;
}

EigOracle dense_eig_oracle(const SparseForm& Ka, const SparseForm& Kd, const SparseForm& B,
                           int dof_limit) {
    const int n = Ka.dimension();
    if (Kd.dimension() != n || B.dimension() != n)
        throw DimensionError("eig oracle: mismatched form dimensions");
    if (2 * n > dof_limit)
        throw SizeError("eig oracle: problem size " + std::to_string(2 * n) +
                        " exceeds limit " + std::to_string(dof_limit));

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    M.block(0, n, n, n) = Eigen::MatrixXd(B.mat);
    M.block(n, 0, n, n) = Eigen::MatrixXd(B.mat).transpose();

    // Rank-one shifts make each stiffness block positive definite without
    // touching the zero-mean subspace; eigenvectors of nonzero eigenvalues
    // are blockwise zero-mean automatically.
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    K.block(0, 0, n, n) = Eigen::MatrixXd(Ka.mat);
    K.block(n, n, n, n) = Eigen::MatrixXd(Kd.mat);
    const double ca = Ka.mat.diagonal().mean() / n;
    const double cd = Kd.mat.diagonal().mean() / n;
    K.block(0, 0, n, n).array() += ca;
    K.block(n, n, n, n).array() += cd;

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(M, K);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("eig oracle: dense eigensolver failed", 0.0);

    EigOracle out;
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    return out;
}

HwSolveReport solve_in_hw(const Mesh& mesh, const ScalarField& w, const SparseForm& K,
                          const Eigen::VectorXd& f, int bins) {
    if (bins < 1) throw InvalidParameterError("hw solve: bins must be >= 1");
    const int n = mesh.num_vertices();
    if (K.dimension() != n || f.size() != n || w.size() != n)
        throw DimensionError("hw solve: mismatched sizes");

    const auto interior = mesh.interior_vertex_indices();
    const int m = static_cast<int>(interior.size()) + bins;

    // Z maps subspace coefficients to nodal values: interior hats first,
    // then the 1D piecewise-linear functions of w sampled at the nodes.
    Eigen::SparseMatrix<double> Z(n, m);
    {
        std::vector<Eigen::Triplet<double>> trips;
        for (size_t c = 0; c < interior.size(); ++c)
            trips.emplace_back(interior[c], static_cast<int>(c), 1.0);
        const double wmin = w.minCoeff(), wmax = w.maxCoeff();
        const double span = wmax - wmin;
        for (int j = 0; j < bins; ++j) {
            const int col = static_cast<int>(interior.size()) + j;
            if (bins == 1 || span <= 0) {
                for (int i = 0; i < n; ++i) trips.emplace_back(i, col, 1.0);
                continue;
            }
            const double step = span / (bins - 1);
            const double tj = wmin + j * step;
            for (int i = 0; i < n; ++i) {
                const double val = 1.0 - std::abs(w[i] - tj) / step;
                if (val > 0) trips.emplace_back(i, col, val);
            }
        }
        Z.setFromTriplets(trips.begin(), trips.end());
    }

    const Eigen::MatrixXd A = Eigen::MatrixXd(Z.transpose() * K.mat * Z);
    const Eigen::VectorXd b = Z.transpose() * f;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
    if (eig.info() != Eigen::Success)
        throw ConvergenceError("hw solve: dense eigensolver failed", 0.0);
    const double lambda_max = eig.eigenvalues().cwiseAbs().maxCoeff();
    const double thresh = 1e-12 * std::max(lambda_max, 1e-300);

    HwSolveReport rep;
    rep.basis_size = m;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
    for (int k = 0; k < m; ++k) {
        const double lambda = eig.eigenvalues()[k];
        if (lambda <= thresh) {
            rep.rank_deficiency += 1;
            continue;
        }
        const Eigen::VectorXd vk = eig.eigenvectors().col(k);
        y += (vk.dot(b) / lambda) * vk;
    }
    rep.solution = Z * y;
    rep.solution.array() -= mesh.mean(rep.solution);
    return rep;
}

} // namespace conjpair
