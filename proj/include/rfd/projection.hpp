/// @file projection.hpp
/// @brief Pointwise interpolation and the discrete elliptic projection used
///        to initialize the time-stepper.
///
/// The elliptic projection of a C^2 function v is the boundary-zero grid
/// function X with lap_h(X) = interior samples of v''.  It reproduces
/// quadratics exactly and carries an O(h^2) error in the discrete H^1 norm:
/// ||X - samples(v)||_{1,h} <= sqrt(1+L^2) L^{3/2} / 24 * h^2 * max|v''''|.

#pragma once

#include <functional>
#include <limits>

#include "rfd/grid.hpp"

namespace rfd {

/// A smooth complex-valued function on [x_a, x_b], sampled through callbacks.
/// `second_derivative` may be empty; `fourth_derivative_bound` is optional
/// (NaN when unknown) and only consumed by error-bound checks.
struct SmoothFunction {
    std::function<Complex(double)> value;
    std::function<Complex(double)> second_derivative;
    double fourth_derivative_bound = std::numeric_limits<double>::quiet_NaN();

    bool has_second_derivative() const { return static_cast<bool>(second_derivative); }
};

/// Sample f at every node; with interior_only the boundary entries are forced
/// to exact zero and the result is flagged boundary_zero.
GridFunction interpolate(const SmoothFunction& f, const SpaceMesh& mesh, bool interior_only);

/// Discrete elliptic projection: the unique boundary-zero solution of
/// lap_h(X) = interior samples of f''.
/// @throws std::invalid_argument if f.second_derivative is missing.
GridFunction elliptic_project(const SmoothFunction& f, const SpaceMesh& mesh);

}  // namespace rfd
