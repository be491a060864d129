/// @file scheme.hpp
/// @brief The relaxation time-stepper, its mollified variant, and the
///        charge/energy diagnostics.
///
/// One run advances two unknowns: the solution values W^n (boundary-zero)
/// and the real relaxation variable Phi, carried at half-integer times.
/// Startup:
///   W^0      = elliptic projection of the initial data
///   W^{1/2}  = Crank-Nicolson half step on [t_0, t^{1/2}] with the frozen
///              coefficient g(|u^0|^2) sampled from the initial data
///   Phi^{1/2} = g(|W^{1/2}|^2)            (second-order init), or
///               g(|u^0|^2)                (first-order init)
/// Then for n = 0, 1, ...:
///   Phi^{n+1/2} = 2 g(|W^n|^2) - Phi^{n-1/2}     (n >= 1; pure extrapolation)
///   solve  nu_h[1/2, Phi^{n+1/2}] W^{n+1} = W^n + i(tau/2) lap_h W^n
///          + i(tau/2) Phi^{n+1/2} (x) W^n + (tau/2)(f(t_{n+1}) + f(t_n))
///
/// Every step costs one tridiagonal solve; with f = 0 the discrete charge
/// ||W^n||_{0,h}^2 is conserved to rounding because Phi is real.
///
/// The mollified variant passes W and Phi through the saturating cutoff
/// before they enter the update, which makes the step nonlinear; it is
/// solved by fixed-point iteration (see mrfd_advance).  Whenever every
/// iterate stays inside the cutoff's identity region the mollified step
/// reproduces the plain step exactly.
///
/// Storage convention: SolverState::phi holds Phi^{n-1/2} when state.n = n
/// (and the pre-seeded Phi^{1/2} when n = 0, where no Phi^{-1/2} exists).

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rfd/grid.hpp"
#include "rfd/mollifier.hpp"
#include "rfd/problems.hpp"
#include "rfd/projection.hpp"

namespace rfd {

/// An initial-boundary-value problem u_t = i u_xx + i g(|u|^2) u + f on
/// [x_a, x_b] with homogeneous Dirichlet data.
struct Problem {
    std::string name;
    double x_a = 0.0;
    double x_b = 1.0;
    Nonlinearity g;                       ///< g(rho), rho = |u|^2 >= 0
    std::function<double(double)> g_antiderivative;  ///< G(rho); empty disables energy
    Forcing f;                            ///< f(t, x); empty means zero forcing
    SmoothFunction u0;                    ///< initial data, ideally with u0''
    std::optional<ExactSolution> exact;   ///< enables error measurement
    double boundary_tol = 1e-12;          ///< compatibility tolerance at x_a, x_b

    Complex forcing_at(double t, double x) const { return f ? f(t, x) : Complex(0.0, 0.0); }
};

/// Check the compatibility conditions: u0 vanishes at both endpoints within
/// boundary_tol, and exact(0,.) agrees with u0 at 10 sample points.
/// @throws std::invalid_argument on violation.
void validate_problem(const Problem& p, const SpaceMesh& mesh);

struct SchemeVariant {
    enum class Kind {
        relaxation_second_order_init,  ///< Phi^{1/2} = g(|W^{1/2}|^2)
        relaxation_first_order_init,   ///< Phi^{1/2} = g(|u^0|^2)
        mollified,                     ///< cutoff inserted, nonlinear solve
    };

    Kind kind = Kind::relaxation_second_order_init;
    double delta_star = 0.0;   ///< cutoff radius (mollified only)
    double fp_tol = 1e-12;     ///< fixed-point stopping tolerance
    int fp_max_iter = 50;

    static SchemeVariant relaxation() { return {}; }
    static SchemeVariant relaxation_first_order() {
        return {Kind::relaxation_first_order_init, 0.0, 1e-12, 50};
    }
    static SchemeVariant mollified(double delta_star, double fp_tol = 1e-12,
                                   int fp_max_iter = 50);
};

/// March state: W^n plus the half-shifted relaxation variable.
struct SolverState {
    int n = 0;
    GridFunction w;        ///< W^n
    RealGridFunction phi;  ///< Phi^{n-1/2} (Phi^{1/2} when n == 0)
    SpaceMesh space;
    TimeMesh time;
};

/// Thrown when the mollified step's fixed-point iteration fails to converge;
/// carries the increment history for diagnosis.
class FixedPointError : public std::runtime_error {
public:
    FixedPointError(std::string message, std::vector<double> increments);
    const std::vector<double>& increments() const { return increments_; }

private:
    std::vector<double> increments_;
};

/// W^0 from the elliptic projection of u0.  When u0'' is unavailable falls
/// back to plain interior interpolation (non-conforming initialization);
/// *used_interpolation_fallback reports which path was taken.
GridFunction init_w0(const Problem& p, const SpaceMesh& mesh,
                     bool* used_interpolation_fallback = nullptr);

/// Crank-Nicolson half step on [t_0, t^{1/2}] with the coefficient frozen at
/// g(|u^0|^2), u^0 sampled from the problem's initial data (not from W^0).
GridFunction step_half(const GridFunction& w0, const Problem& p, double tau,
                       const SpaceMesh& mesh);

/// Phi^{1/2} per variant.  The mollified variant requires m and uses
/// g(|clip(W^{1/2})|^2).
RealGridFunction phi_init(const SchemeVariant& variant, const GridFunction& w_half,
                          const Problem& p, const SpaceMesh& mesh,
                          const Mollifier* m = nullptr);

/// One full step of the relaxation scheme; returns the state at n+1 with
/// phi = Phi^{n+1/2}.
SolverState advance(const SolverState& state, const Problem& p, const SchemeVariant& variant);

/// One full step of the mollified scheme.  The update is nonlinear through
/// clip((V^{n+1}+V^n)/2); it is solved by fixed-point iteration starting from
/// V^n, where each pass re-evaluates the cutoff defect clip(m) - m at the
/// previous iterate and solves the same linear system as the plain scheme.
/// Stops when the increment drops below fp_tol * (1 + ||iterate||_{0,h}).
/// @throws FixedPointError after fp_max_iter iterations without convergence.
SolverState mrfd_advance(const SolverState& state, const Problem& p, const Mollifier& m,
                         const SchemeVariant& variant, int* iterations_used = nullptr);

/// Discrete charge ||W||_{0,h}^2.
double charge(const GridFunction& w, const SpaceMesh& mesh);

/// Discrete energy |W|_{1,h}^2 - h * sum_j G(|W_j|^2) with G the
/// antiderivative of g.
double energy(const GridFunction& w, const std::function<double(double)>& g_antiderivative,
              const SpaceMesh& mesh);

/// Energy of each snapshot relative to the first: (E^n - E^0) / max(|E^0|, 1).
std::vector<double> energy_drift(std::span<const GridFunction> trajectory,
                                 const std::function<double(double)>& g_antiderivative,
                                 const SpaceMesh& mesh);

}  // namespace rfd
