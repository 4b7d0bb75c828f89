#include "conjpair/solver.hpp"
#include "conjpair/verify.hpp"

#include <cmath>

namespace conjpair {

namespace {

ScalarField nodal(const Mesh& mesh, double (*f)(double, double, double)) {
    ScalarField out(mesh.num_vertices());
    for (int i = 0; i < mesh.num_vertices(); ++i)
        out[i] = f(mesh.vertices(i, 0), mesh.vertices(i, 1), mesh.vertices(i, 2));
    return out;
}

double energy_norm(const Mesh& mesh, const ScalarField& d) {
    const auto g = element_gradients(mesh, d);
    double e = 0;
    for (int i = 0; i < mesh.num_tets(); ++i) e += mesh.volumes[i] * g.row(i).squaredNorm();
    return std::sqrt(e);
}

// Energy-norm error of the computed conjugate against the interpolated
// analytic conjugate; constants drop out of the norm.
double conjugate_error(int n, double (*v_fn)(double, double, double),
                       double (*u_fn)(double, double, double), const SolverConfig& cfg) {
    const Mesh mesh = build_cube_mesh(n);
    const ScalarField v = nodal(mesh, v_fn);
    const ScalarField w = sample_w(CoordinateW{2, 0.0}, mesh);
    GammaSpec one;
    const CoefficientField gamma = make_gamma(one, mesh, nullptr);
    const ScalarField u = conjugate_of(mesh, v, w, gamma, cfg);
    const ScalarField exact = nodal(mesh, u_fn);
    return energy_norm(mesh, u - exact);
}

}  // namespace

ConvergenceStudy convergence_study(StudyCase kind, const std::vector<int>& levels,
                                   const SolverConfig& cfg) {
    if (levels.size() < 3)
        throw InvalidParameterError("convergence study needs at least 3 levels");
    std::vector<ConvergenceRow> rows;
    for (int n : levels) {
        if (n < 1) throw InvalidParameterError("convergence study: level must be >= 1");
        ConvergenceRow row;
        row.level = n;
        row.h = 1.0 / n;
        switch (kind) {
            case StudyCase::QuadraticPair:
                row.error = conjugate_error(
                    n, [](double x, double y, double) { return 2.0 * x * y; },
                    [](double x, double y, double) { return x * x - y * y; }, cfg);
                break;
            case StudyCase::AffinePair:
                row.error = conjugate_error(
                    n, [](double, double y, double) { return y; },
                    [](double x, double, double) { return x; }, cfg);
                break;
            case StudyCase::BallUnitarity: {
                const Mesh mesh = build_ball_mesh(n);
                const ScalarField w = sample_w(DistToPointW{Vec3(0, 0, -2)}, mesh);
                row.error = unitarity_report(mesh, w).max_dev;
                break;
            }
        }
        rows.push_back(row);
    }
    return fit_convergence(rows);
}

} // namespace conjpair
