#ifndef CONJPAIR_DTN_HPP
#define CONJPAIR_DTN_HPP

#include "conjpair/solver.hpp"

#include <string>
#include <vector>

namespace conjpair {

/// Discrete Dirichlet-to-Neumann operator over the boundary nodes:
/// the Schur complement of the gamma-weighted stiffness onto the boundary.
/// Symmetric, annihilates constants, positive semidefinite on zero-mean
/// boundary data (up to the interior solve tolerance).
struct DtnMatrix {
    Eigen::MatrixXd mat;
    std::vector<int> boundary_nodes;  // mesh vertex index per row/column
};

/// Assemble Lambda = A_bb - A_bi A_ii^{-1} A_ib column by column; each column
/// is an interior conjugate-gradient solve warm-started from its neighbor.
/// Columns run in parallel; CONJPAIR_THREADS caps the worker count.
DtnMatrix assemble_dtn(const Mesh& mesh, const CoefficientField& gamma,
                       const SolverConfig& cfg);

/// Relative Frobenius distance on the zero-mean boundary subspace:
/// ||P (A - B) P||_F / ||P A P||_F with P the constant deflator.
double dtn_distance(const DtnMatrix& a, const DtnMatrix& b);

struct DtnPairDiagnostics {
    int gamma_index = 0;
    int w_index = 0;
    bool ok = false;
    std::string error;
    double mu = 0;
    double r1 = 0;
    double r2 = 0;
    int iterations = 0;
    bool converged = false;
};

/// Pairwise DtN distances across conductivities plus, for every (gamma, w),
/// the diagnostics of the associated conjugate pair. Failures are recorded
/// per cell and the experiment continues.
struct DtnExperimentReport {
    Eigen::MatrixXd distances;               // NaN where either map failed
    std::vector<bool> gamma_ok;
    std::vector<std::string> gamma_errors;
    std::vector<DtnPairDiagnostics> pairs;
};

DtnExperimentReport dtn_experiment(const Mesh& mesh,
                                   const std::vector<CoefficientField>& gammas,
                                   const std::vector<ScalarField>& ws,
                                   const SolverConfig& cfg);

} // namespace conjpair

#endif
