/// @file problems.hpp
/// @brief Exact solutions, forcing synthesis, the test-problem catalogue and
///        the time-consistency residual oracles.
///
/// Residual conventions (all built from an exact solution u; g acts on |u|^2):
///
///   r^{n+1/2} = [u^{n+1} - u^n - i*tau*avg(u_xx) - i*tau*g(|u^{n+1/2}|^2)
///               (x) avg(u) - tau*avg(f)] / tau,     averages over t_n, t_{n+1}
///   r^n       = (g(|u^{n+1/2}|^2) + g(|u^{n-1/2}|^2))/2 - g(|u^n|^2)
///   r^{1/4}   = the analogous defect of the half step on [t_0, t^{1/2}]
///               with the frozen coefficient g(|u^0|^2)
///
/// Under the trapezoid rule these are O(tau^2), O(tau^2) and O(tau)
/// respectively, with O(tau^3) consecutive differences for the first two.
/// The residuals are boundary-zero quantities (like the scheme's right-hand
/// sides they are taken through the interior sampler).

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rfd/grid.hpp"

namespace rfd {

struct Problem;  // defined in scheme.hpp

/// A classical solution with the derivatives the residual oracles need.
struct ExactSolution {
    std::function<Complex(double, double)> u;     ///< u(t, x)
    std::function<Complex(double, double)> u_t;   ///< time derivative
    std::function<Complex(double, double)> u_xx;  ///< second space derivative
    std::string description;
};

using Nonlinearity = std::function<double(double)>;
using Forcing = std::function<Complex(double, double)>;

/// Forcing that makes `exact` solve u_t = i u_xx + i g(|u|^2) u + f.
Complex manufactured_forcing(const ExactSolution& exact, const Nonlinearity& g, double t,
                             double x);

/// Bright soliton family for the cubic focusing equation (g(rho) = 2 rho,
/// f = 0):  u(t,x) = k sech(k(x - v t)) exp(i(v x / 2 + (k^2 - v^2/4) t)).
/// The default (k, v) = (1, 2) profile is sech(x - 2t) e^{ix}.
Complex soliton(double t, double x, double k = 1.0, double v = 2.0);
Complex soliton_time_derivative(double t, double x, double k = 1.0, double v = 2.0);
Complex soliton_space_second_derivative(double t, double x, double k = 1.0, double v = 2.0);

/// Half-node residual r^{n+1/2} for n in [0, N-1].
GridFunction residual_mid(const ExactSolution& exact, const Nonlinearity& g, const Forcing& f,
                          int n, const TimeMesh& time, const SpaceMesh& mesh);

/// Node residual r^n for n in [1, N-1].
/// @throws std::out_of_range when n is outside that range.
RealGridFunction residual_node(const ExactSolution& exact, const Nonlinearity& g, int n,
                               const TimeMesh& time, const SpaceMesh& mesh);

/// Quarter-node residual r^{1/4} of the startup half step.
GridFunction residual_quarter(const ExactSolution& exact, const Nonlinearity& g, const Forcing& f,
                              const TimeMesh& time, const SpaceMesh& mesh);

/// Catalogue ids: "zero", "linear_sine", "cubic_sine", "defocusing_sine",
/// "soliton".  The sine problems live on [0,1]; the soliton on [-20,20].
std::vector<std::string> problem_ids();

/// Build a catalogue problem.
/// @throws std::invalid_argument for an unknown id.
Problem make_problem(const std::string& id);

}  // namespace rfd
