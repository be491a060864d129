#include "rfd/projection.hpp"

#include <stdexcept>

#include "rfd/tridiagonal.hpp"

namespace rfd {

GridFunction interpolate(const SmoothFunction& f, const SpaceMesh& mesh, bool interior_only) {
    if (!f.value) {
        throw std::invalid_argument("interpolate: value callback missing");
    }
    std::vector<Complex> out(mesh.total_nodes());
    if (interior_only) {
        out.front() = Complex(0.0, 0.0);
        out.back() = Complex(0.0, 0.0);
        for (std::size_t j = 1; j + 1 < out.size(); ++j) {
            out[j] = f.value(mesh.node(static_cast<int>(j)));
        }
        return GridFunction(std::move(out), true);
    }
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = f.value(mesh.node(static_cast<int>(j)));
    }
    return GridFunction(std::move(out), false);
}

GridFunction elliptic_project(const SmoothFunction& f, const SpaceMesh& mesh) {
    if (!f.has_second_derivative()) {
        throw std::invalid_argument("elliptic_project: second derivative callback required");
    }
    const std::size_t n_interior = mesh.total_nodes() - 2;
    const double inv_h2 = 1.0 / (mesh.h() * mesh.h());

    TridiagonalSystem sys;
    sys.sub.assign(n_interior - 1, Complex(inv_h2, 0.0));
    sys.super.assign(n_interior - 1, Complex(inv_h2, 0.0));
    sys.diag.assign(n_interior, Complex(-2.0 * inv_h2, 0.0));

    std::vector<Complex> rhs(n_interior);
    for (std::size_t k = 0; k < n_interior; ++k) {
        rhs[k] = f.second_derivative(mesh.node(static_cast<int>(k + 1)));
    }
    const std::vector<Complex> interior = tridiagonal_solve(sys, rhs);

    std::vector<Complex> out(mesh.total_nodes(), Complex(0.0, 0.0));
    for (std::size_t k = 0; k < n_interior; ++k) {
        out[k + 1] = interior[k];
    }
    return GridFunction(std::move(out), true);
}

}  // namespace rfd
