/// @file mollifier.hpp
/// @brief C^3 saturating cutoff built from a degree-7 Hermite polynomial, and
///        its componentwise complex lift.
///
/// The cutoff n_delta is odd, equals the identity on [0, delta], follows the
/// transition polynomial p_delta on (delta, 2*delta] and is constant 2*delta
/// beyond.  p_delta is the unique degree-7 polynomial with
///   p(delta) = delta,  p'(delta) = 1,  p''(delta) = p'''(delta) = 0,
///   p(2*delta) = 2*delta,  p'(2*delta) = p''(2*delta) = p'''(2*delta) = 0,
/// so the three joins are C^3.  The complex lift clips real and imaginary
/// parts independently: clip(z) = n_delta(Re z) + i n_delta(Im z), which is
/// the identity on the disk |z| <= delta and bounded by 2*sqrt(2)*delta.
///
/// Internally p_delta is represented in the shifted/scaled variable
/// s = (x - delta)/delta in [0, 1]; the resulting Hermite system is
/// well-conditioned uniformly in delta and the scaled coefficients are
/// delta-independent.

#pragma once

#include <array>
#include <complex>
#include <span>

#include "rfd/grid.hpp"

namespace rfd {

class Mollifier {
public:
    /// Solve the 8x8 Hermite interpolation system and verify all eight
    /// conditions to 1e-10 * max(1, delta).
    /// @throws std::invalid_argument if delta <= 0.
    /// @throws std::runtime_error if the conditions fail after the solve.
    static Mollifier build(double delta);

    double delta() const { return delta_; }

    /// Coefficients of the transition polynomial in the scaled variable
    /// s = (x - delta)/delta, ascending powers:  p(x) = delta * sum c_k s^k.
    std::span<const double, 8> transition_coeffs() const { return transition_coeffs_; }

    /// The odd cutoff n_delta.
    double saturate(double x) const;

    /// k-th derivative of the cutoff, k = 1..3 (one-sided limits agree at the
    /// joins, so the pointwise value is well defined).
    double saturate_derivative(double x, int order) const;

    /// Componentwise complex clip gamma: Re and Im pass through the cutoff.
    Complex clip(Complex z) const;

    /// Pointwise lifts to grid functions.
    GridFunction clip(const GridFunction& v) const;
    RealGridFunction saturate(const RealGridFunction& v) const;

    /// sup |n_delta^{(k)}| for k = 1..3, estimated at build time by dense
    /// sampling (1e4 points across the transition interval).
    double derivative_sup(int order) const;

private:
    Mollifier() = default;

    double saturate_derivative_impl(double x, int order) const;

    double delta_ = 0.0;
    std::array<double, 8> transition_coeffs_{};
    std::array<double, 3> derivative_sups_{};
};

}  // namespace rfd
