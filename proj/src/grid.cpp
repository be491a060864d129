#include "rfd/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rfd {

namespace {

void require_equal_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": length mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

SpaceMesh::SpaceMesh(double x_a, double x_b, int interior_nodes)
    : x_a_(x_a), x_b_(x_b), interior_nodes_(interior_nodes) {
    if (interior_nodes < 1) {
        throw std::invalid_argument("SpaceMesh: need at least one interior node");
    }
    if (!(x_b > x_a)) {
        throw std::invalid_argument("SpaceMesh: x_b must exceed x_a");
    }
    length_ = x_b - x_a;
    h_ = length_ / static_cast<double>(interior_nodes + 1);
}

TimeMesh::TimeMesh(double final_time, int steps) : final_time_(final_time), steps_(steps) {
    if (steps < 1) {
        throw std::invalid_argument("TimeMesh: need at least one step");
    }
    if (!(final_time > 0.0)) {
        throw std::invalid_argument("TimeMesh: final time must be positive");
    }
    tau_ = final_time / static_cast<double>(steps);
}

GridFunction::GridFunction(std::vector<Complex> values, bool boundary_zero)
    : values_(std::move(values)), boundary_zero_(boundary_zero) {
    if (values_.size() < 3) {
        throw std::invalid_argument("GridFunction: need at least 3 nodes");
    }
    if (boundary_zero_ &&
        (values_.front() != Complex(0.0, 0.0) || values_.back() != Complex(0.0, 0.0))) {
        throw std::invalid_argument("GridFunction: boundary_zero set but boundary values nonzero");
    }
}

GridFunction GridFunction::zeros(std::size_t total_nodes, bool boundary_zero) {
    return GridFunction(std::vector<Complex>(total_nodes, Complex(0.0, 0.0)), boundary_zero);
}

RealGridFunction::RealGridFunction(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 3) {
        throw std::invalid_argument("RealGridFunction: need at least 3 nodes");
    }
}

RealGridFunction RealGridFunction::zeros(std::size_t total_nodes) {
    return RealGridFunction(std::vector<double>(total_nodes, 0.0));
}

StaggeredFunction::StaggeredFunction(std::vector<Complex> values) : values_(std::move(values)) {
    if (values_.size() < 2) {
        throw std::invalid_argument("StaggeredFunction: need at least 2 cells");
    }
}

GridFunction otimes(const GridFunction& v, const GridFunction& w) {
    require_equal_length(v.size(), w.size(), "otimes");
    std::vector<Complex> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        out[j] = v[j] * w[j];
    }
    return GridFunction(std::move(out), v.boundary_zero() || w.boundary_zero());
}

GridFunction otimes(const RealGridFunction& coeff, const GridFunction& w) {
    require_equal_length(coeff.size(), w.size(), "otimes");
    std::vector<Complex> out(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        out[j] = coeff[j] * w[j];
    }
    return GridFunction(std::move(out), w.boundary_zero());
}

StaggeredFunction delta_h(const GridFunction& v, const SpaceMesh& mesh) {
    require_equal_length(v.size(), mesh.total_nodes(), "delta_h");
    const double inv_h = 1.0 / mesh.h();
    std::vector<Complex> out(v.size() - 1);
    for (std::size_t j = 0; j + 1 < v.size(); ++j) {
        out[j] = (v[j + 1] - v[j]) * inv_h;
    }
    return StaggeredFunction(std::move(out));
}

Complex inner_product_0h(const GridFunction& v, const GridFunction& z, const SpaceMesh& mesh) {
    require_equal_length(v.size(), z.size(), "inner_product_0h");
    require_equal_length(v.size(), mesh.total_nodes(), "inner_product_0h");
    detail::KahanSum re, im;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const Complex term = v[j] * std::conj(z[j]);
        re.add(term.real());
        im.add(term.imag());
    }
    return mesh.h() * Complex(re.value(), im.value());
}

Complex staggered_inner_product_0h(const StaggeredFunction& z, const StaggeredFunction& v,
                                   const SpaceMesh& mesh) {
    require_equal_length(z.size(), v.size(), "staggered_inner_product_0h");
    detail::KahanSum re, im;
    for (std::size_t j = 0; j < z.size(); ++j) {
        const Complex term = z[j] * std::conj(v[j]);
        re.add(term.real());
        im.add(term.imag());
    }
    return mesh.h() * Complex(re.value(), im.value());
}

double norm_0h(const GridFunction& v, const SpaceMesh& mesh) {
    require_equal_length(v.size(), mesh.total_nodes(), "norm_0h");
    detail::KahanSum sum;
    for (std::size_t j = 0; j < v.size(); ++j) {
        sum.add(std::norm(v[j]));
    }
    return std::sqrt(mesh.h() * sum.value());
}

double seminorm_1h(const GridFunction& v, const SpaceMesh& mesh) {
    return staggered_norm_0h(delta_h(v, mesh), mesh);
}

double norm_1h(const GridFunction& v, const SpaceMesh& mesh) {
    const double n0 = norm_0h(v, mesh);
    const double s1 = seminorm_1h(v, mesh);
    return std::sqrt(n0 * n0 + s1 * s1);
}

double norm_inf(const GridFunction& v) {
    double m = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        m = std::max(m, std::abs(v[j]));
    }
    return m;
}

double staggered_norm_0h(const StaggeredFunction& z, const SpaceMesh& mesh) {
    detail::KahanSum sum;
    for (std::size_t j = 0; j < z.size(); ++j) {
        sum.add(std::norm(z[j]));
    }
    return std::sqrt(mesh.h() * sum.value());
}

double staggered_norm_inf(const StaggeredFunction& z) {
    double m = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
        m = std::max(m, std::abs(z[j]));
    }
    return m;
}

NormBundle discrete_norms(const GridFunction& v, const SpaceMesh& mesh) {
    NormBundle out{};
    out.norm0h = norm_0h(v, mesh);
    out.seminorm1h = seminorm_1h(v, mesh);
    out.norm1h = std::sqrt(out.norm0h * out.norm0h + out.seminorm1h * out.seminorm1h);
    out.normInf = norm_inf(v);
    return out;
}

GridFunction to_complex(const RealGridFunction& v) {
    std::vector<Complex> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        out[j] = Complex(v[j], 0.0);
    }
    return GridFunction(std::move(out), false);
}

GridFunction operator+(const GridFunction& v, const GridFunction& w) {
    require_equal_length(v.size(), w.size(), "operator+");
    std::vector<Complex> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        out[j] = v[j] + w[j];
    }
    return GridFunction(std::move(out), v.boundary_zero() && w.boundary_zero());
}

GridFunction operator-(const GridFunction& v, const GridFunction& w) {
    require_equal_length(v.size(), w.size(), "operator-");
    std::vector<Complex> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        out[j] = v[j] - w[j];
    }
    return GridFunction(std::move(out), v.boundary_zero() && w.boundary_zero());
}

GridFunction operator*(Complex scalar, const GridFunction& v) {
    std::vector<Complex> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        out[j] = scalar * v[j];
    }
    return GridFunction(std::move(out), v.boundary_zero());
}

}  // namespace rfd
