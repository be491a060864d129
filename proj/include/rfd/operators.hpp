/// @file operators.hpp
/// @brief The discrete Laplacian and the per-step linear operators of the
///        relaxation time-stepper.
///
/// On the boundary-zero subspace:
///   (lap_h v)_j   = (v_{j-1} - 2 v_j + v_{j+1}) / h^2       (interior j)
///   nu_h[eps,phi] = I - i*eps*tau*lap_h - i*eps*tau*phi(x)  (one solve/step)
///   A_h = I - i(tau/2) lap_h,   T_h = I + i(tau/2) lap_h,   B_h = A_h^{-1} T_h
///
/// nu_h is unconditionally invertible for real phi (Re(nu_h chi, chi)_{0,h}
/// equals ||chi||^2), so the tridiagonal solves below never fail for valid
/// inputs.  Sign convention for the eigenvalues used in the tests:
/// lap_h applied to the sine mode sin(k*pi*(x_j - x_a)/L) multiplies it by
/// -lambda_k with lambda_k = (4/h^2) sin^2(k*pi*h/(2L)).

#pragma once

#include "rfd/grid.hpp"
#include "rfd/tridiagonal.hpp"

namespace rfd {

/// Second central difference with zero boundary values.
/// @throws std::invalid_argument if v is not boundary_zero.
GridFunction apply_laplacian(const GridFunction& v, const SpaceMesh& mesh);

/// Solve nu_h[eps,phi] chi = rhs for chi in the boundary-zero subspace, where
/// nu_h[eps,phi] chi = chi - i*eps*tau*lap_h(chi) - i*eps*tau*phi (x) chi.
/// @throws std::invalid_argument if eps <= 0 or rhs is not boundary_zero.
GridFunction solve_nu_h(double eps, const RealGridFunction& phi, const GridFunction& rhs,
                        double tau, const SpaceMesh& mesh);

/// Half-step operator pair sharing a time step and a mesh.
struct HalfStepOperators {
    double tau;
    SpaceMesh mesh;

    HalfStepOperators(double tau_, const SpaceMesh& mesh_) : tau(tau_), mesh(mesh_) {
        if (!(tau >= 0.0)) {
            throw std::invalid_argument("HalfStepOperators: tau must be nonnegative");
        }
    }
};

/// Apply (I + sign * i*(tau/2) * lap_h).  sign = -1 gives A_h, +1 gives T_h.
GridFunction apply_half_shift(const GridFunction& v, int sign, const HalfStepOperators& ops);

/// Apply B_h = A_h^{-1} T_h (isometric in ||.||_{0,h} and |.|_{1,h}).
GridFunction apply_B_h(const GridFunction& v, const HalfStepOperators& ops);

}  // namespace rfd
