#ifndef CONJPAIR_FIELDS_HPP
#define CONJPAIR_FIELDS_HPP

#include "conjpair/mesh.hpp"

#include <variant>

namespace conjpair {

// ---- analytic w specifications ---------------------------------------------

/// w = x_axis + offset (axis is 0-based).
struct CoordinateW {
    int axis = 2;
    double offset = 0.0;
};

/// w = |x - point|; the point must lie outside the closed domain.
struct DistToPointW {
    Vec3 point;
};

/// w = distance to the line {point + t * direction}; the line must stay
/// outside the closed domain.
struct DistToAxisW {
    Vec3 point;
    Vec3 direction;
};

/// Arbitrary nodal values, passed through unchanged.
struct NodalW {
    Eigen::VectorXd values;
};

using WSpec = std::variant<CoordinateW, DistToPointW, DistToAxisW, NodalW>;

/// Nodal interpolant of the analytic formula (exact at nodes).
/// Throws InvalidParameterError when the spec is not smooth inside the domain.
ScalarField sample_w(const WSpec& spec, const Mesh& mesh);

// ---- unitarity diagnostics --------------------------------------------------

struct UnitarityReport {
    double max_dev;   // max over elements of | |grad w_h| - 1 |
    double mean_dev;  // plain mean over elements
};

UnitarityReport unitarity_report(const Mesh& mesh, const ScalarField& w);

// ---- conductivity coefficients ----------------------------------------------

/// Piecewise-constant positive coefficient, one value per element,
/// constrained to [bound, 1/bound].
struct CoefficientField {
    Eigen::VectorXd values;
    double bound = 0.1;
};

struct GammaSpec {
    enum class Kind { Constant, TwoPhase, AbsW, AbsW2 };
    Kind kind = Kind::Constant;
    double value = 1.0;              // Constant
    Vec3 center = Vec3::Zero();      // TwoPhase: gamma = inside where |x-center| < radius
    double radius = 0.0;
    double inside = 1.0;
    double outside = 1.0;
    double bound = 0.1;
};

/// Build a coefficient field; the |grad w| variants need the sampled w.
/// Throws BoundViolationError if any element value leaves [bound, 1/bound].
CoefficientField make_gamma(const GammaSpec& spec, const Mesh& mesh,
                            const ScalarField* w = nullptr);

/// Validate an externally supplied coefficient against its declared bound.
void check_gamma_bounds(const CoefficientField& gamma, int num_tets);

/// The two weights (a, d) carried by the variational problem in each mode:
/// a weighs the u-energy and the first identity (a grad u = grad v x grad w),
/// d weighs the v-energy and the second (d grad v = grad w x grad u).
/// Gamma mode requires gamma; the |grad w| modes derive the weight from w.
std::pair<CoefficientField, CoefficientField> mode_weights(const Mesh& mesh,
                                                           const ScalarField& w, Mode mode,
                                                           const CoefficientField* gamma);

} // namespace conjpair

#endif
