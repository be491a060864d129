#include "rfd/operators.hpp"

#include <stdexcept>
#include <string>

namespace rfd {

namespace {

void require_boundary_zero(const GridFunction& v, const char* what) {
    if (!v.boundary_zero()) {
        throw std::invalid_argument(std::string(what) + ": input must be boundary_zero");
    }
}

}  // namespace

GridFunction apply_laplacian(const GridFunction& v, const SpaceMesh& mesh) {
    require_boundary_zero(v, "apply_laplacian");
    if (v.size() != mesh.total_nodes()) {
        throw std::invalid_argument("apply_laplacian: length mismatch");
    }
    const double inv_h2 = 1.0 / (mesh.h() * mesh.h());
    std::vector<Complex> out(v.size(), Complex(0.0, 0.0));
    for (std::size_t j = 1; j + 1 < v.size(); ++j) {
        out[j] = (v[j - 1] - 2.0 * v[j] + v[j + 1]) * inv_h2;
    }
    return GridFunction(std::move(out), true);
}

GridFunction solve_nu_h(double eps, const RealGridFunction& phi, const GridFunction& rhs,
                        double tau, const SpaceMesh& mesh) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("solve_nu_h: eps must be positive");
    }
    require_boundary_zero(rhs, "solve_nu_h");
    if (rhs.size() != mesh.total_nodes() || phi.size() != mesh.total_nodes()) {
        throw std::invalid_argument("solve_nu_h: length mismatch");
    }

    const std::size_t n_interior = mesh.total_nodes() - 2;
    const double et = eps * tau;
    const Complex off(0.0, -et / (mesh.h() * mesh.h()));

    TridiagonalSystem sys;
    sys.sub.assign(n_interior - 1, off);
    sys.super.assign(n_interior - 1, off);
    sys.diag.resize(n_interior);
    for (std::size_t k = 0; k < n_interior; ++k) {
        // row for unknown chi_{k+1}: 1 + 2i*et/h^2 - i*et*phi_j on the diagonal
        sys.diag[k] = Complex(1.0, 2.0 * et / (mesh.h() * mesh.h()) - et * phi[k + 1]);
    }

    std::vector<Complex> interior_rhs(n_interior);
    for (std::size_t k = 0; k < n_interior; ++k) {
        interior_rhs[k] = rhs[k + 1];
    }
    const std::vector<Complex> interior = tridiagonal_solve(sys, interior_rhs);

    std::vector<Complex> out(mesh.total_nodes(), Complex(0.0, 0.0));
    for (std::size_t k = 0; k < n_interior; ++k) {
        out[k + 1] = interior[k];
    }
    return GridFunction(std::move(out), true);
}

GridFunction apply_half_shift(const GridFunction& v, int sign, const HalfStepOperators& ops) {
    require_boundary_zero(v, "apply_half_shift");
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("apply_half_shift: sign must be +1 or -1");
    }
    const GridFunction lap = apply_laplacian(v, ops.mesh);
    const Complex factor(0.0, static_cast<double>(sign) * 0.5 * ops.tau);
    return v + factor * lap;
}

GridFunction apply_B_h(const GridFunction& v, const HalfStepOperators& ops) {
    // A_h w = T_h v, with A_h = nu_h[1/2, 0] (eps*tau = tau/2).
    const GridFunction rhs = apply_half_shift(v, +1, ops);
    if (ops.tau == 0.0) {
        return rhs;
    }
    const RealGridFunction zero_phi = RealGridFunction::zeros(ops.mesh.total_nodes());
    return solve_nu_h(0.5, zero_phi, rhs, ops.tau, ops.mesh);
}

}  // namespace rfd
