#include "rfd/scheme.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rfd/operators.hpp"

namespace rfd {

namespace {

// g(|v|^2) sampled at every node.
RealGridFunction nonlinearity_of(const Nonlinearity& g, const GridFunction& v) {
    std::vector<double> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        out[j] = g(std::norm(v[j]));
    }
    return RealGridFunction(std::move(out));
}

// Interior sampler of (f(ta,.) + f(tb,.)): the forcing part of every RHS.
GridFunction forcing_pair(const Problem& p, double ta, double tb, const SpaceMesh& mesh) {
    std::vector<Complex> out(mesh.total_nodes(), Complex(0.0, 0.0));
    for (std::size_t j = 1; j + 1 < out.size(); ++j) {
        const double x = mesh.node(static_cast<int>(j));
        out[j] = p.forcing_at(ta, x) + p.forcing_at(tb, x);
    }
    return GridFunction(std::move(out), true);
}

// RHS of the rearranged step:  w + i*c*lap(w) + i*c*phi(x)w + c*forcing_pair,
// where c = eps*tau.
GridFunction step_rhs(const GridFunction& w, const RealGridFunction& phi,
                      const GridFunction& forcing, double eps, double tau,
                      const SpaceMesh& mesh) {
    const Complex ic(0.0, eps * tau);
    const GridFunction lap = apply_laplacian(w, mesh);
    return w + ic * lap + ic * otimes(phi, w) + Complex(eps * tau, 0.0) * forcing;
}

}  // namespace

void validate_problem(const Problem& p, const SpaceMesh& mesh) {
    if (!p.g) {
        throw std::invalid_argument("Problem '" + p.name + "': nonlinearity g missing");
    }
    if (!p.u0.value) {
        throw std::invalid_argument("Problem '" + p.name + "': initial data missing");
    }
    const double scale = std::max(1.0, norm_inf(interpolate(p.u0, mesh, false)));
    for (const double x : {p.x_a, p.x_b}) {
        if (std::abs(p.u0.value(x)) > p.boundary_tol * scale) {
            throw std::invalid_argument("Problem '" + p.name +
                                        "': initial data violates the Dirichlet condition");
        }
    }
    if (p.exact) {
        for (int i = 0; i < 10; ++i) {
            const double x = p.x_a + (p.x_b - p.x_a) * (i + 0.5) / 10.0;
            if (std::abs(p.exact->u(0.0, x) - p.u0.value(x)) > 1e-12 * scale) {
                throw std::invalid_argument("Problem '" + p.name +
                                            "': exact(0,.) disagrees with the initial data");
            }
        }
    }
}

SchemeVariant SchemeVariant::mollified(double delta_star, double fp_tol, int fp_max_iter) {
    if (!(delta_star > 0.0)) {
        throw std::invalid_argument("SchemeVariant: delta_star must be positive");
    }
    if (!(fp_tol > 0.0) || fp_max_iter < 1) {
        throw std::invalid_argument("SchemeVariant: invalid fixed-point parameters");
    }
    return {Kind::mollified, delta_star, fp_tol, fp_max_iter};
}

FixedPointError::FixedPointError(std::string message, std::vector<double> increments)
    : std::runtime_error(std::move(message)), increments_(std::move(increments)) {}

GridFunction init_w0(const Problem& p, const SpaceMesh& mesh, bool* used_interpolation_fallback) {
    if (p.u0.has_second_derivative()) {
        if (used_interpolation_fallback != nullptr) {
            *used_interpolation_fallback = false;
        }
        return elliptic_project(p.u0, mesh);
    }
    if (used_interpolation_fallback != nullptr) {
        *used_interpolation_fallback = true;
    }
    return interpolate(p.u0, mesh, true);
}

GridFunction step_half(const GridFunction& w0, const Problem& p, double tau,
                       const SpaceMesh& mesh) {
    const RealGridFunction frozen = nonlinearity_of(p.g, interpolate(p.u0, mesh, false));
    const GridFunction forcing = forcing_pair(p, 0.5 * tau, 0.0, mesh);
    const GridFunction rhs = step_rhs(w0, frozen, forcing, 0.25, tau, mesh);
    return solve_nu_h(0.25, frozen, rhs, tau, mesh);
}

RealGridFunction phi_init(const SchemeVariant& variant, const GridFunction& w_half,
                          const Problem& p, const SpaceMesh& mesh, const Mollifier* m) {
    switch (variant.kind) {
        case SchemeVariant::Kind::relaxation_second_order_init:
            return nonlinearity_of(p.g, w_half);
        case SchemeVariant::Kind::relaxation_first_order_init:
            return nonlinearity_of(p.g, interpolate(p.u0, mesh, false));
        case SchemeVariant::Kind::mollified:
            if (m == nullptr) {
                throw std::invalid_argument("phi_init: mollified variant needs a Mollifier");
            }
            return nonlinearity_of(p.g, m->clip(w_half));
    }
    throw std::logic_error("phi_init: unreachable");
}

SolverState advance(const SolverState& state, const Problem& p, const SchemeVariant&) {
    const double tau = state.time.tau();
    const SpaceMesh& mesh = state.space;

    // Phi^{n+1/2}: extrapolate for n >= 1, pre-seeded Phi^{1/2} at n = 0.
    RealGridFunction phi = state.phi;
    if (state.n >= 1) {
        const RealGridFunction g_now = nonlinearity_of(p.g, state.w);
        std::vector<double> next(phi.size());
        for (std::size_t j = 0; j < phi.size(); ++j) {
            next[j] = 2.0 * g_now[j] - phi[j];
        }
        phi = RealGridFunction(std::move(next));
    }

    const GridFunction forcing =
        forcing_pair(p, state.time.t(state.n + 1), state.time.t(state.n), mesh);
    const GridFunction rhs = step_rhs(state.w, phi, forcing, 0.5, tau, mesh);
    GridFunction w_next = solve_nu_h(0.5, phi, rhs, tau, mesh);

    return SolverState{state.n + 1, std::move(w_next), std::move(phi), state.space, state.time};
}

SolverState mrfd_advance(const SolverState& state, const Problem& p, const Mollifier& m,
                         const SchemeVariant& variant, int* iterations_used) {
    const double tau = state.time.tau();
    const SpaceMesh& mesh = state.space;

    RealGridFunction phi = state.phi;
    if (state.n >= 1) {
        const RealGridFunction g_now = nonlinearity_of(p.g, m.clip(state.w));
        std::vector<double> next(phi.size());
        for (std::size_t j = 0; j < phi.size(); ++j) {
            next[j] = 2.0 * g_now[j] - phi[j];
        }
        phi = RealGridFunction(std::move(next));
    }
    const RealGridFunction phi_cut = m.saturate(phi);

    const GridFunction forcing =
        forcing_pair(p, state.time.t(state.n + 1), state.time.t(state.n), mesh);
    const GridFunction base = step_rhs(state.w, phi_cut, forcing, 0.5, tau, mesh);

    // Fixed point on chi = V^{n+1}.  The cutoff enters only through the
    // defect d = clip(mid) - mid with mid = (chi + V^n)/2; the identity part
    // stays inside nu_h, so inside the identity region the first pass
    // reproduces the plain relaxation step exactly and the second pass
    // terminates with a zero increment.
    GridFunction chi = state.w;
    std::vector<double> increments;
    bool converged = false;
    const Complex i_tau(0.0, tau);
    for (int k = 0; k < variant.fp_max_iter; ++k) {
        const GridFunction mid = Complex(0.5, 0.0) * (chi + state.w);
        const GridFunction defect = m.clip(mid) - mid;
        const GridFunction rhs = base + i_tau * otimes(phi_cut, defect);
        GridFunction next = solve_nu_h(0.5, phi_cut, rhs, tau, mesh);
        const double increment = norm_0h(next - chi, mesh);
        increments.push_back(increment);
        chi = std::move(next);
        if (increment <= variant.fp_tol * (1.0 + norm_0h(chi, mesh))) {
            converged = true;
            if (iterations_used != nullptr) {
                *iterations_used = k + 1;
            }
            break;
        }
    }
    if (!converged) {
        std::string msg = "mrfd_advance: fixed point did not converge at step " +
                          std::to_string(state.n) + "; increments:";
        for (const double inc : increments) {
            msg += " " + std::to_string(inc);
        }
        throw FixedPointError(std::move(msg), std::move(increments));
    }

    return SolverState{state.n + 1, std::move(chi), std::move(phi), state.space, state.time};
}

double charge(const GridFunction& w, const SpaceMesh& mesh) {
    detail::KahanSum sum;
    for (std::size_t j = 0; j < w.size(); ++j) {
        sum.add(std::norm(w[j]));
    }
    return mesh.h() * sum.value();
}

double energy(const GridFunction& w, const std::function<double(double)>& g_antiderivative,
              const SpaceMesh& mesh) {
    if (!g_antiderivative) {
        throw std::invalid_argument("energy: antiderivative of g required");
    }
    const double s1 = seminorm_1h(w, mesh);
    detail::KahanSum sum;
    for (std::size_t j = 0; j < w.size(); ++j) {
        sum.add(g_antiderivative(std::norm(w[j])));
    }
    return s1 * s1 - mesh.h() * sum.value();
}

std::vector<double> energy_drift(std::span<const GridFunction> trajectory,
                                 const std::function<double(double)>& g_antiderivative,
                                 const SpaceMesh& mesh) {
    std::vector<double> out;
    out.reserve(trajectory.size());
    if (trajectory.empty()) {
        return out;
    }
    const double e0 = energy(trajectory.front(), g_antiderivative, mesh);
    const double scale = std::max(std::abs(e0), 1.0);
    for (const GridFunction& w : trajectory) {
        out.push_back((energy(w, g_antiderivative, mesh) - e0) / scale);
    }
    return out;
}

}  // namespace rfd
