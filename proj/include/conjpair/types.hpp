#ifndef CONJPAIR_TYPES_HPP
#define CONJPAIR_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace conjpair {

/// Nodal coefficient vector of a piecewise-linear function on a mesh.
using ScalarField = Eigen::VectorXd;

using Vec3 = Eigen::Vector3d;

/// Which pair of weights the variational problem carries.
///   Unitary:    1      and 1          (|grad w| = 1 a.e.)
///   WeightedW2: 1      and |grad w|^2 (non-unitary w, one harmonic function)
///   Gamma:      gamma  and 1/gamma    (conductivity pairs)
///   GammaAbsW:  |grad w| and |grad w| (both solve the |grad w| conductivity equation)
enum class Mode { Unitary, WeightedW2, Gamma, GammaAbsW };

std::string mode_name(Mode mode);
Mode mode_from_name(const std::string& name);

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameterError : Error {
    using Error::Error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct BoundViolationError : Error {
    using Error::Error;
};

struct CompatibilityError : Error {
    using Error::Error;
};

struct DegenerateFieldError : Error {
    using Error::Error;
};

struct SizeError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

/// Iterative solver failed to reach its tolerance; carries the last residual seen.
struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, double residual)
        : Error(what), last_residual(residual) {}
    double last_residual;
};

} // namespace conjpair

#endif
