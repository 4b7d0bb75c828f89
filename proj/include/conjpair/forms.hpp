#ifndef CONJPAIR_FORMS_HPP
#define CONJPAIR_FORMS_HPP

#include "conjpair/fields.hpp"

#include <Eigen/Sparse>

namespace conjpair {

struct SparseForm {
    enum class Symmetry { Symmetric, Skew };
    Eigen::SparseMatrix<double> mat;
    Symmetry symmetry = Symmetry::Symmetric;

    int dimension() const { return static_cast<int>(mat.rows()); }
};

/// Weighted stiffness K[i][j] = sum_e weight_e (grad phi_i . grad phi_j) vol_e.
/// Symmetric PSD with the constants in its kernel on a connected mesh.
/// P1 gradients are element constants, so assembly is exact.
SparseForm assemble_stiffness(const Mesh& mesh, const CoefficientField& weight);

/// Unit-weight stiffness.
SparseForm assemble_stiffness(const Mesh& mesh);

/// Coupling form B[i][j] = integral of grad phi_i . (grad phi_j x grad w_h).
/// u^T B v equals the integral of det(grad u_h, grad v_h, grad w_h).
/// Each unordered index pair is computed once per element and written with
/// both signs, so B = -B^T holds exactly as stored.
SparseForm assemble_det_form(const Mesh& mesh, const ScalarField& w);

/// Load vector f_i = sign * integral of (grad v_h x grad w_h) . grad phi_i.
Eigen::VectorXd assemble_cross_load(const Mesh& mesh, const ScalarField& v,
                                    const ScalarField& w, double sign = 1.0);

/// Largest normalized interior weak-divergence residual
/// max_i |integral (grad v_h x grad w_h) . grad phi_i| / (||cross||_L2 ||grad phi_i||_L2)
/// over interior nodes i. Zero when the cross field is an element-wise
/// constant (discrete Piola identity).
double weak_divergence_residual(const Mesh& mesh, const ScalarField& v,
                                const ScalarField& w);

} // namespace conjpair

#endif
