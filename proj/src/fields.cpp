#include "conjpair/fields.hpp"

#include <cmath>

namespace conjpair {

namespace {

bool point_in_closed_domain(const Mesh& mesh, const Vec3& p) {
    if (mesh.domain == Domain::Cube)
        return p.minCoeff() >= 0.0 && p.maxCoeff() <= 1.0;
    return p.norm() <= 1.0;
}

double dist_point_to_domain(const Mesh& mesh, const Vec3& p) {
    if (mesh.domain == Domain::Ball) return p.norm() - 1.0;
    const Vec3 clamped = p.cwiseMax(Vec3::Zero()).cwiseMin(Vec3::Ones());
    return (p - clamped).norm();
}

// Minimum distance from the line {a + t d} to the domain. dist(t) is convex,
// so golden-section narrows it down reliably.
double dist_line_to_domain(const Mesh& mesh, const Vec3& a, const Vec3& d) {
    const Vec3 dir = d.normalized();
    auto f = [&](double t) { return dist_point_to_domain(mesh, a + t * dir); };
    double lo = -1e3, hi = 1e3;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = f(x2);
        }
    }
    return std::min(f1, f2);
}

}  // namespace

ScalarField sample_w(const WSpec& spec, const Mesh& mesh) {
    const int n = mesh.num_vertices();
    ScalarField w(n);

    if (const auto* c = std::get_if<CoordinateW>(&spec)) {
        if (c->axis < 0 || c->axis > 2)
            throw InvalidParameterError("coordinate w: axis out of range");
        for (int v = 0; v < n; ++v) w[v] = mesh.vertices(v, c->axis) + c->offset;
        return w;
    }
    if (const auto* p = std::get_if<DistToPointW>(&spec)) {
        if (point_in_closed_domain(mesh, p->point))
            throw InvalidParameterError(
                "dist-to-point w: reference point lies inside the closed domain");
        for (int v = 0; v < n; ++v)
            w[v] = (Vec3(mesh.vertices.row(v)) - p->point).norm();
        return w;
    }
    if (const auto* ax = std::get_if<DistToAxisW>(&spec)) {
        if (!(ax->direction.norm() > 0))
            throw InvalidParameterError("dist-to-axis w: zero direction");
        if (dist_line_to_domain(mesh, ax->point, ax->direction) <= 0.0)
            throw InvalidParameterError(
                "dist-to-axis w: reference line meets the closed domain");
        const Vec3 d = ax->direction.normalized();
        for (int v = 0; v < n; ++v)
            w[v] = (Vec3(mesh.vertices.row(v)) - ax->point).cross(d).norm();
        return w;
    }
    const auto& nodal = std::get<NodalW>(spec);
    if (nodal.values.size() != n)
        throw DimensionError("nodal w: length != vertex count");
    return nodal.values;
}

UnitarityReport unitarity_report(const Mesh& mesh, const ScalarField& w) {
    const auto grads = element_gradients(mesh, w);
    double max_dev = 0, sum = 0;
    for (int e = 0; e < mesh.num_tets(); ++e) {
        const double dev = std::abs(grads.row(e).norm() - 1.0);
        max_dev = std::max(max_dev, dev);
        sum += dev;
    }
    return {max_dev, sum / mesh.num_tets()};
}

CoefficientField make_gamma(const GammaSpec& spec, const Mesh& mesh, const ScalarField* w) {
    if (!(spec.bound > 0.0 && spec.bound <= 1.0))
        throw InvalidParameterError("gamma bound must lie in (0, 1]");
    CoefficientField gamma;
    gamma.bound = spec.bound;
    gamma.values.resize(mesh.num_tets());

    switch (spec.kind) {
        case GammaSpec::Kind::Constant:
            gamma.values.setConstant(spec.value);
            break;
        case GammaSpec::Kind::TwoPhase:
            for (int e = 0; e < mesh.num_tets(); ++e) {
                Vec3 centroid = Vec3::Zero();
                for (int i = 0; i < 4; ++i) centroid += Vec3(mesh.vertices.row(mesh.tets(e, i)));
                centroid /= 4.0;
                gamma.values[e] =
                    (centroid - spec.center).norm() < spec.radius ? spec.inside : spec.outside;
            }
            break;
        case GammaSpec::Kind::AbsW:
        case GammaSpec::Kind::AbsW2: {
            if (w == nullptr)
                throw InvalidParameterError("gamma from |grad w| needs the sampled w");
            const auto grads = element_gradients(mesh, *w);
            for (int e = 0; e < mesh.num_tets(); ++e) {
                const double g = grads.row(e).norm();
                gamma.values[e] = spec.kind == GammaSpec::Kind::AbsW ? g : g * g;
            }
            break;
        }
    }
    check_gamma_bounds(gamma, mesh.num_tets());
    return gamma;
}

std::pair<CoefficientField, CoefficientField> mode_weights(const Mesh& mesh,
                                                           const ScalarField& w, Mode mode,
                                                           const CoefficientField* gamma) {
    CoefficientField ones;
    ones.values = Eigen::VectorXd::Ones(mesh.num_tets());
    ones.bound = 1.0;

    switch (mode) {
        case Mode::Unitary:
            return {ones, ones};
        case Mode::Gamma: {
            if (gamma == nullptr)
                throw InvalidParameterError("gamma mode needs a conductivity field");
            check_gamma_bounds(*gamma, mesh.num_tets());
            CoefficientField inv;
            inv.values = gamma->values.cwiseInverse();
            inv.bound = gamma->bound;
            return {*gamma, inv};
        }
        case Mode::WeightedW2: {
            GammaSpec spec;
            spec.kind = GammaSpec::Kind::AbsW2;
            return {ones, make_gamma(spec, mesh, &w)};
        }
        case Mode::GammaAbsW: {
            GammaSpec spec;
            spec.kind = GammaSpec::Kind::AbsW;
            CoefficientField absw = make_gamma(spec, mesh, &w);
            return {absw, absw};
        }
    }
    return {ones, ones};
}

void check_gamma_bounds(const CoefficientField& gamma, int num_tets) {
    if (gamma.values.size() != num_tets)
        throw DimensionError("coefficient length != element count");
    if (!(gamma.bound > 0.0 && gamma.bound <= 1.0))
        throw InvalidParameterError("gamma bound must lie in (0, 1]");
    const double lo = gamma.bound, hi = 1.0 / gamma.bound;
    for (int e = 0; e < gamma.values.size(); ++e) {
        const double g = gamma.values[e];
        if (!std::isfinite(g) || g < lo || g > hi)
            throw BoundViolationError("coefficient value " + std::to_string(g) +
                                      " outside [C, 1/C] for C = " + std::to_string(lo));
    }
}

} // namespace conjpair
