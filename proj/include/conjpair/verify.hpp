#ifndef CONJPAIR_VERIFY_HPP
#define CONJPAIR_VERIFY_HPP

#include "conjpair/fields.hpp"

#include <vector>

namespace conjpair {

struct SolverConfig;

/// L2 residuals of the conjugacy identities for a triple (u, v, w) under the
/// weights of `mode`:
///   r1   = ||a grad u - grad v x grad w|| / ||grad u||
///   r2   = ||d grad v - grad w x grad u|| / ||grad v||
///   orth = ||grad v . grad w|| / ||grad v||
/// det_mean is the domain average of det(grad u, grad v, grad w); norm_gap the
/// relative gap between the two weighted energies (equal for an exact pair).
struct ResidualReport {
    double r1 = 0;
    double r2 = 0;
    double orth = 0;
    double det_mean = 0;
    double norm_gap = 0;
    // absolute L2 values, kept for zero-field edge cases
    double r1_abs = 0;
    double r2_abs = 0;
    double orth_abs = 0;
};

ResidualReport residual_report(const Mesh& mesh, const ScalarField& u, const ScalarField& v,
                               const ScalarField& w, const CoefficientField* gamma, Mode mode);

/// Deviations of a gradient triple from the orthogonal-basis relations
/// satisfied by conjugate pairs: pairwise dot products and
/// |gu|^2 - det, |gv|^2 - det with det = det(gu, gv, gw).
struct OrthobasisDeviation {
    double dot_uv = 0;
    double dot_uw = 0;
    double dot_vw = 0;
    double u2_minus_det = 0;
    double v2_minus_det = 0;
};

OrthobasisDeviation orthobasis_check(const Vec3& gu, const Vec3& gv, const Vec3& gw);

/// Residuals of two vector algebra identities, zero for all inputs:
///   lagrange: | |v x w|^2 + (v.w)^2 - |v|^2 |w|^2 |
///   triple:   | w x (v x u) - ((w.u) v - (v.u) w) |
/// Self-test of the cross-product kernel.
struct VectorIdentityResiduals {
    double lagrange = 0;
    double triple = 0;
};

VectorIdentityResiduals vector_identity_checks(const Vec3& v, const Vec3& w, const Vec3& u);

/// Exponents of the relaxed Cauchy-Riemann system: nonnegative, summing to 1.
struct ExponentTriple {
    ExponentTriple(double a1, double a2, double a3);
    double alpha1, alpha2, alpha3;
};

/// Frobenius residual of J J^T - diag(det(J)^{2 alpha_i}).
/// Fractional exponents require det(J) > 0.
double relaxed_cr_check(const Eigen::Matrix3d& J, const ExponentTriple& alpha);

/// Face-wise boundary residuals of (grad v x grad w) . n together with
/// phi = |grad w x n| per face. Faces with phi below the degeneracy threshold
/// carry no tangent direction; they are flagged and excluded from the norms.
struct BoundaryTangentialReport {
    Eigen::VectorXd residual;          // per boundary face
    Eigen::VectorXd phi;               // per boundary face
    std::vector<int> degenerate_faces; // phi <= 1e-10
    double rms = 0;                    // area-weighted, non-degenerate faces only
};

BoundaryTangentialReport boundary_tangential_residual(const Mesh& mesh, const ScalarField& v,
                                                      const ScalarField& w);

// ---- convergence studies -----------------------------------------------------

struct ConvergenceRow {
    int level = 0;
    double h = 0;
    double error = 0;
    double rate = 0;  // vs previous row; NaN on the first
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    double fitted_rate = 0;  // least-squares slope of log error vs log h
    bool monotone = false;   // errors strictly decreasing; no rate claimed otherwise
};

/// Fit a rate to (h, error) samples; needs at least 3 levels.
ConvergenceStudy fit_convergence(const std::vector<ConvergenceRow>& rows);

enum class StudyCase { QuadraticPair, AffinePair, BallUnitarity };

StudyCase study_case_from_name(const std::string& name);
std::string study_case_name(StudyCase c);

/// Run a named refinement study over the given mesh levels.
ConvergenceStudy convergence_study(StudyCase kind, const std::vector<int>& levels,
                                   const SolverConfig& cfg);

} // namespace conjpair

#endif
