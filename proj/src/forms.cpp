#include "conjpair/forms.hpp"

#include <cmath>
#include <vector>

namespace conjpair {

namespace {

using Triplet = Eigen::Triplet<double>;

void check_field(const Mesh& mesh, const ScalarField& f, const char* what) {
    if (f.size() != mesh.num_vertices())
        throw DimensionError(std::string(what) + ": length != vertex count");
}

}  // namespace

SparseForm assemble_stiffness(const Mesh& mesh, const CoefficientField& weight) {
    check_gamma_bounds(weight, mesh.num_tets());
    const int n = mesh.num_vertices();
    std::vector<Triplet> trips;
    trips.reserve(mesh.num_tets() * 16);
    for (int e = 0; e < mesh.num_tets(); ++e) {
        const auto& g = mesh.basis_gradients[e];
        const double scale = weight.values[e] * mesh.volumes[e];
        for (int i = 0; i < 4; ++i) {
            const int gi = mesh.tets(e, i);
            for (int j = i; j < 4; ++j) {
                const int gj = mesh.tets(e, j);
                const double val = scale * g.col(i).dot(g.col(j));
                trips.emplace_back(gi, gj, val);
                if (i != j) trips.emplace_back(gj, gi, val);
            }
        }
    }
    SparseForm form;
    form.symmetry = SparseForm::Symmetry::Symmetric;
    form.mat.resize(n, n);
    form.mat.setFromTriplets(trips.begin(), trips.end());
    return form;
}

SparseForm assemble_stiffness(const Mesh& mesh) {
    CoefficientField one;
    one.values = Eigen::VectorXd::Ones(mesh.num_tets());
    one.bound = 1.0;
    return assemble_stiffness(mesh, one);
}

SparseForm assemble_det_form(const Mesh& mesh, const ScalarField& w) {
    check_field(mesh, w, "det form w");
    const int n = mesh.num_vertices();
    const auto gw = element_gradients(mesh, w);
    std::vector<Triplet> trips;
    trips.reserve(mesh.num_tets() * 12);
    for (int e = 0; e < mesh.num_tets(); ++e) {
        const auto& g = mesh.basis_gradients[e];
        const Vec3 we = gw.row(e);
        const double vol = mesh.volumes[e];
        for (int i = 0; i < 4; ++i) {
            const int gi = mesh.tets(e, i);
            for (int j = i + 1; j < 4; ++j) {
                const int gj = mesh.tets(e, j);
                // det(g_i, g_j, gw); written once with each sign so the
                // stored matrix is skew to the last bit
                const double val = vol * g.col(i).cross(g.col(j)).dot(we);
                trips.emplace_back(gi, gj, val);
                trips.emplace_back(gj, gi, -val);
            }
        }
    }
    SparseForm form;
    form.symmetry = SparseForm::Symmetry::Skew;
    form.mat.resize(n, n);
    form.mat.setFromTriplets(trips.begin(), trips.end());
    return form;
}

Eigen::VectorXd assemble_cross_load(const Mesh& mesh, const ScalarField& v,
                                    const ScalarField& w, double sign) {
    check_field(mesh, v, "cross load v");
    check_field(mesh, w, "cross load w");
    const auto gv = element_gradients(mesh, v);
    const auto gw = element_gradients(mesh, w);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(mesh.num_vertices());
    for (int e = 0; e < mesh.num_tets(); ++e) {
        const Vec3 cross = Vec3(gv.row(e)).cross(Vec3(gw.row(e)));
        const auto& g = mesh.basis_gradients[e];
        const double vol = mesh.volumes[e];
        for (int i = 0; i < 4; ++i)
            f[mesh.tets(e, i)] += sign * vol * cross.dot(g.col(i));
    }
    return f;
}

double weak_divergence_residual(const Mesh& mesh, const ScalarField& v,
                                const ScalarField& w) {
    const Eigen::VectorXd f = assemble_cross_load(mesh, v, w, 1.0);

    const auto gv = element_gradients(mesh, v);
    const auto gw = element_gradients(mesh, w);
    double cross_norm2 = 0;
    for (int e = 0; e < mesh.num_tets(); ++e)
        cross_norm2 += mesh.volumes[e] * Vec3(gv.row(e)).cross(Vec3(gw.row(e))).squaredNorm();
    const double cross_norm = std::sqrt(cross_norm2);

    // ||grad phi_i||_L2^2 per node from the unit stiffness diagonal
    Eigen::VectorXd phi_norm2 = Eigen::VectorXd::Zero(mesh.num_vertices());
    for (int e = 0; e < mesh.num_tets(); ++e) {
        const auto& g = mesh.basis_gradients[e];
        for (int i = 0; i < 4; ++i)
            phi_norm2[mesh.tets(e, i)] += mesh.volumes[e] * g.col(i).squaredNorm();
    }

    double worst = 0;
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        if (mesh.vertex_on_boundary[i]) continue;
        const double scale = cross_norm * std::sqrt(phi_norm2[i]);
        if (scale > 0) worst = std::max(worst, std::abs(f[i]) / scale);
    }
    return worst;
}

} // namespace conjpair
