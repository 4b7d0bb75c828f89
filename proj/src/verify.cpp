#include "conjpair/verify.hpp"

#include <cmath>

namespace conjpair {

ResidualReport residual_report(const Mesh& mesh, const ScalarField& u, const ScalarField& v,
                               const ScalarField& w, const CoefficientField* gamma, Mode mode) {
    const auto [wa, wd] = mode_weights(mesh, w, mode, gamma);
    const auto gu = element_gradients(mesh, u);
    const auto gv = element_gradients(mesh, v);
    const auto gw = element_gradients(mesh, w);

    double nu2 = 0, nv2 = 0;        // unweighted gradient energies
    double ea = 0, ed = 0;          // weighted energies
    double res1 = 0, res2 = 0, orth2 = 0, det_int = 0;
    for (int e = 0; e < mesh.num_tets(); ++e) {
        const double vol = mesh.volumes[e];
        const Vec3 a = gu.row(e), b = gv.row(e), c = gw.row(e);
        nu2 += vol * a.squaredNorm();
        nv2 += vol * b.squaredNorm();
        ea += vol * wa.values[e] * a.squaredNorm();
        ed += vol * wd.values[e] * b.squaredNorm();
        res1 += vol * (wa.values[e] * a - b.cross(c)).squaredNorm();
        res2 += vol * (wd.values[e] * b - c.cross(a)).squaredNorm();
        const double dot = b.dot(c);
        orth2 += vol * dot * dot;
        det_int += vol * a.dot(b.cross(c));
    }
    if (!(nu2 > 0) || !(nv2 > 0))
        throw DegenerateFieldError("residual report: zero-norm u or v");

    ResidualReport rep;
    rep.r1_abs = std::sqrt(res1);
    rep.r2_abs = std::sqrt(res2);
    rep.orth_abs = std::sqrt(orth2);
    rep.r1 = rep.r1_abs / std::sqrt(nu2);
    rep.r2 = rep.r2_abs / std::sqrt(nv2);
    rep.orth = rep.orth_abs / std::sqrt(nv2);
    rep.det_mean = det_int / mesh.total_volume();
    rep.norm_gap = std::abs(ea - ed) / std::max(ea, ed);
    return rep;
}

OrthobasisDeviation orthobasis_check(const Vec3& gu, const Vec3& gv, const Vec3& gw) {
    const double det = gu.dot(gv.cross(gw));
    OrthobasisDeviation d;
    d.dot_uv = gu.dot(gv);
    d.dot_uw = gu.dot(gw);
    d.dot_vw = gv.dot(gw);
    d.u2_minus_det = gu.squaredNorm() - det;
    d.v2_minus_det = gv.squaredNorm() - det;
    return d;
}

VectorIdentityResiduals vector_identity_checks(const Vec3& v, const Vec3& w, const Vec3& u) {
    VectorIdentityResiduals r;
    r.lagrange = std::abs(v.cross(w).squaredNorm() + std::pow(v.dot(w), 2) -
                          v.squaredNorm() * w.squaredNorm());
    r.triple = (w.cross(v.cross(u)) - (w.dot(u) * v - v.dot(u) * w)).norm();
    return r;
}

ExponentTriple::ExponentTriple(double a1, double a2, double a3)
    : alpha1(a1), alpha2(a2), alpha3(a3) {
    if (a1 < 0 || a2 < 0 || a3 < 0)
        throw InvalidParameterError("exponent triple: negative exponent");
    if (std::abs(a1 + a2 + a3 - 1.0) > 1e-12)
        throw InvalidParameterError("exponent triple: exponents must sum to 1");
}

namespace {

bool exponent_is_safe(double a) {
    // det^{2a} stays defined for any det sign when 2a is a nonnegative integer
    const double two_a = 2.0 * a;
    return std::abs(two_a - std::round(two_a)) < 1e-14;
}

}  // namespace

double relaxed_cr_check(const Eigen::Matrix3d& J, const ExponentTriple& alpha) {
    const double det = J.determinant();
    const double alphas[3] = {alpha.alpha1, alpha.alpha2, alpha.alpha3};
    Eigen::Vector3d target;
    for (int i = 0; i < 3; ++i) {
        if (exponent_is_safe(alphas[i])) {
            target[i] = std::pow(det, std::round(2.0 * alphas[i]));
        } else {
            if (det <= 0)
                throw InvalidParameterError(
                    "relaxed CR check: fractional exponent needs det(J) > 0");
            target[i] = std::pow(det, 2.0 * alphas[i]);
        }
    }
    const Eigen::Matrix3d residual =
        J * J.transpose() - Eigen::Matrix3d(target.asDiagonal());
    return residual.norm();
}

BoundaryTangentialReport boundary_tangential_residual(const Mesh& mesh, const ScalarField& v,
                                                      const ScalarField& w) {
    const auto gv = element_gradients(mesh, v);
    const auto gw = element_gradients(mesh, w);
    const int nf = static_cast<int>(mesh.boundary_faces.size());
    BoundaryTangentialReport rep;
    rep.residual.resize(nf);
    rep.phi.resize(nf);
    double num = 0, area = 0;
    for (int f = 0; f < nf; ++f) {
        const auto& face = mesh.boundary_faces[f];
        const Vec3 b = gv.row(face.tet), c = gw.row(face.tet);
        rep.residual[f] = b.cross(c).dot(face.normal);
        rep.phi[f] = c.cross(face.normal).norm();
        if (rep.phi[f] <= 1e-10) {
            rep.degenerate_faces.push_back(f);
        } else {
            num += face.area * rep.residual[f] * rep.residual[f];
            area += face.area;
        }
    }
    rep.rms = area > 0 ? std::sqrt(num / area) : 0.0;
    return rep;
}

ConvergenceStudy fit_convergence(const std::vector<ConvergenceRow>& rows) {
    if (rows.size() < 3)
        throw InvalidParameterError("convergence fit needs at least 3 levels");
    ConvergenceStudy study;
    study.rows = rows;
    study.monotone = true;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i == 0) {
            study.rows[i].rate = std::nan("");
            continue;
        }
        if (!(rows[i].error < rows[i - 1].error)) study.monotone = false;
        study.rows[i].rate = std::log(rows[i - 1].error / rows[i].error) /
                             std::log(rows[i - 1].h / rows[i].h);
    }
    if (!study.monotone) {
        study.fitted_rate = std::nan("");
        return study;
    }
    // least-squares slope of log(error) against log(h)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rows.size());
    for (const auto& r : rows) {
        const double x = std::log(r.h), y = std::log(r.error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    study.fitted_rate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return study;
}

StudyCase study_case_from_name(const std::string& name) {
    if (name == "quadratic_pair") return StudyCase::QuadraticPair;
    if (name == "affine_pair") return StudyCase::AffinePair;
    if (name == "ball_unitarity") return StudyCase::BallUnitarity;
    throw InvalidParameterError("unknown convergence case '" + name + "'");
}

std::string study_case_name(StudyCase c) {
    switch (c) {
        case StudyCase::QuadraticPair: return "quadratic_pair";
        case StudyCase::AffinePair: return "affine_pair";
        case StudyCase::BallUnitarity: return "ball_unitarity";
    }
    return "quadratic_pair";
}

} // namespace conjpair
