#ifndef CONJPAIR_SOLVER_HPP
#define CONJPAIR_SOLVER_HPP

#include "conjpair/forms.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace conjpair {

struct SolverConfig {
    double tol = 1e-10;       // relative change of mu between sweeps
    int maxit = 500;          // sweeps of the alternating iteration
    double cg_tol = 1e-12;    // relative residual of each linear solve
    int cg_maxit = 0;         // 0 means 10 * dof
    Mode mode = Mode::Unitary;
    std::uint64_t seed = 42;  // default starting-vector perturbation
};

/// Converged pair and its diagnostics. u and v have zero mean over the
/// domain; mu is the Rayleigh estimate u^T B v / (energy/2 + energy/2)
/// under the joint normalization used by the solver.
struct PairSolveReport {
    ScalarField u;
    ScalarField v;
    double mu = 0.0;
    int iterations = 0;
    int restarts = 0;
    bool converged = false;
    std::vector<std::array<double, 2>> residual_history;  // (r1, r2) per sweep
};

/// Solve K x = f for the pure-Neumann operator K (SPD with the constants in
/// its kernel) by Jacobi-preconditioned conjugate gradients, keeping iterates
/// in the zero-mean complement. Returns the zero-mean solution.
/// Throws CompatibilityError when f is not orthogonal to constants and
/// ConvergenceError when the iteration stalls past cg_maxit.
ScalarField solve_neumann(const SparseForm& K, const Eigen::VectorXd& f,
                          const SolverConfig& cfg, const ScalarField* warm_start = nullptr);

/// The conjugate of v with respect to w: the zero-mean u with
///   integral gamma grad u . grad U = integral (grad v x grad w) . grad U
/// for every discrete U (natural boundary condition included).
ScalarField conjugate_of(const Mesh& mesh, const ScalarField& v, const ScalarField& w,
                         const CoefficientField& gamma, const SolverConfig& cfg);

/// The dual direction: the zero-mean v with
///   integral (1/gamma) grad v . grad U = integral (grad w x grad u) . grad U.
ScalarField dual_conjugate_of(const Mesh& mesh, const ScalarField& u, const ScalarField& w,
                              const CoefficientField& gamma, const SolverConfig& cfg);

/// Power iteration on the composed map v -> u = conjugate(v) -> v' = dual(u),
/// renormalized to joint energy 1 each sweep. Finds the dominant eigenpair of
/// the coupling pencil; cfg.mode picks the weights (gamma required in Gamma
/// mode, ignored otherwise). A null v0 selects the deterministic default
/// (x2 nodal values plus a seeded perturbation). Degenerate starts are
/// restarted with fresh seeded vectors, at most 3 times.
/// Non-convergence after maxit returns converged = false, never throws.
PairSolveReport alternating_pair_solve(const Mesh& mesh, const ScalarField& w,
                                       const ScalarField* v0, const CoefficientField* gamma,
                                       const SolverConfig& cfg);

struct EigOracle {
    Eigen::VectorXd eigenvalues;   // ascending; the top one is the solver's mu
    Eigen::MatrixXd eigenvectors;  // column k stacks (u; v)
};

/// Dense generalized spectrum of the coupling pencil
///   [0 B; B^T 0] z = lambda diag(Ka, Kd) z
/// restricted to blockwise zero-mean vectors (the kernel of each block is
/// deflated by a rank-one shift; spurious zero eigenvalues remain zero).
/// Brute-force oracle for alternating_pair_solve on small problems.
EigOracle dense_eig_oracle(const SparseForm& Ka, const SparseForm& Kd, const SparseForm& B,
                           int dof_limit = 3000);

struct HwSolveReport {
    ScalarField solution;
    int basis_size = 0;        // interior nodes + bins
    int rank_deficiency = 0;   // deflated directions of the reduced operator
};

/// Galerkin solve of K x = f in the subspace spanned by the interior hat
/// functions plus `bins` one-dimensional piecewise-linear functions of w
/// (sampled at nodes). Rank deficiencies of the reduced operator are
/// deflated and reported.
HwSolveReport solve_in_hw(const Mesh& mesh, const ScalarField& w, const SparseForm& K,
                          const Eigen::VectorXd& f, int bins);

} // namespace conjpair

#endif
