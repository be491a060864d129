/// @file grid.hpp
/// @brief Uniform 1D meshes, complex/real grid functions and discrete norms.
///
/// Grid functions live on the J+2 nodes x_j = x_a + j*h, j = 0..J+1, of a
/// uniform partition with spacing h = L/(J+1).  Functions vanishing at both
/// boundary nodes carry a `boundary_zero` flag; operators that are only
/// defined on that subspace reject unflagged inputs instead of silently
/// zeroing boundaries.
///
/// Discrete inner products and norms:
///   (v,z)_{0,h}   = h * sum_{j=0}^{J+1} v_j conj(z_j)
///   |w|_{1,h}     = staggered L2 norm of the forward difference delta_h(w)
///   ||w||_{1,h}^2 = ||w||_{0,h}^2 + |w|_{1,h}^2
///   |w|_{inf,h}   = max_j |w_j|
///
/// All sums are accumulated with compensated (Kahan) summation so the
/// operator-identity tolerances (1e-13 relative) stay attainable on fine
/// grids.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace rfd {

using Complex = std::complex<double>;

/// Uniform spatial mesh on [x_a, x_b] with J interior nodes.
class SpaceMesh {
public:
    /// @throws std::invalid_argument if J < 1 or x_b <= x_a.
    SpaceMesh(double x_a, double x_b, int interior_nodes);

    double x_a() const { return x_a_; }
    double x_b() const { return x_b_; }
    int J() const { return interior_nodes_; }
    double h() const { return h_; }
    double length() const { return length_; }

    /// Node coordinate x_j = x_a + j*h, j = 0..J+1.
    double node(int j) const { return x_a_ + static_cast<double>(j) * h_; }

    /// Total node count J+2.
    std::size_t total_nodes() const { return static_cast<std::size_t>(interior_nodes_) + 2; }

private:
    double x_a_;
    double x_b_;
    int interior_nodes_;
    double h_;
    double length_;
};

/// Uniform time mesh on [0, T] with N steps of size tau = T/N.
class TimeMesh {
public:
    /// @throws std::invalid_argument if N < 1 or T <= 0.
    TimeMesh(double final_time, int steps);

    double final_time() const { return final_time_; }
    int N() const { return steps_; }
    double tau() const { return tau_; }

    /// Node t_n = n*tau.
    double t(int n) const { return static_cast<double>(n) * tau_; }
    /// Intermediate node t^{n+1/2} = t_n + tau/2.
    double t_mid(int n) const { return t(n) + 0.5 * tau_; }

private:
    double final_time_;
    int steps_;
    double tau_;
};

/// Complex grid function with J+2 node values; immutable value type.
class GridFunction {
public:
    /// @param boundary_zero marks membership in the boundary-zero subspace.
    /// @throws std::invalid_argument if the flag is set but values[0] or
    ///         values[J+1] is nonzero.
    explicit GridFunction(std::vector<Complex> values, bool boundary_zero = false);

    static GridFunction zeros(std::size_t total_nodes, bool boundary_zero = true);

    std::size_t size() const { return values_.size(); }
    bool boundary_zero() const { return boundary_zero_; }
    const Complex& operator[](std::size_t j) const { return values_[j]; }
    std::span<const Complex> values() const { return values_; }

private:
    std::vector<Complex> values_;
    bool boundary_zero_;
};

/// Real grid function with J+2 node values (carries the relaxation variable).
class RealGridFunction {
public:
    explicit RealGridFunction(std::vector<double> values);
    static RealGridFunction zeros(std::size_t total_nodes);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t j) const { return values_[j]; }
    std::span<const double> values() const { return values_; }

private:
    std::vector<double> values_;
};

/// Cell-based staggered function with J+1 values (holds forward differences).
class StaggeredFunction {
public:
    explicit StaggeredFunction(std::vector<Complex> values);

    std::size_t size() const { return values_.size(); }
    const Complex& operator[](std::size_t j) const { return values_[j]; }
    std::span<const Complex> values() const { return values_; }

private:
    std::vector<Complex> values_;
};

/// Norms of a grid function in one pass.
struct NormBundle {
    double norm0h;      ///< ||v||_{0,h}
    double seminorm1h;  ///< |v|_{1,h}
    double norm1h;      ///< (norm0h^2 + seminorm1h^2)^{1/2}
    double normInf;     ///< max_j |v_j|
};

/// Pointwise product (v (x) w)_j = v_j w_j; boundary_zero if either operand is.
/// @throws std::invalid_argument on length mismatch.
GridFunction otimes(const GridFunction& v, const GridFunction& w);

/// Pointwise product of a real coefficient with a complex grid function.
GridFunction otimes(const RealGridFunction& coeff, const GridFunction& w);

/// Forward difference (delta_h v)_j = (v_{j+1} - v_j)/h, j = 0..J.
StaggeredFunction delta_h(const GridFunction& v, const SpaceMesh& mesh);

/// Sesquilinear inner product (v,z)_{0,h} = h sum v_j conj(z_j).
Complex inner_product_0h(const GridFunction& v, const GridFunction& z, const SpaceMesh& mesh);

/// Staggered inner product h sum_{j=0}^{J} z_j conj(v_j).
Complex staggered_inner_product_0h(const StaggeredFunction& z, const StaggeredFunction& v,
                                   const SpaceMesh& mesh);

double norm_0h(const GridFunction& v, const SpaceMesh& mesh);
double seminorm_1h(const GridFunction& v, const SpaceMesh& mesh);
double norm_1h(const GridFunction& v, const SpaceMesh& mesh);
double norm_inf(const GridFunction& v);

double staggered_norm_0h(const StaggeredFunction& z, const SpaceMesh& mesh);
double staggered_norm_inf(const StaggeredFunction& z);

/// All four norms of v at once.
NormBundle discrete_norms(const GridFunction& v, const SpaceMesh& mesh);

/// Lift a real grid function to a complex one (same boundary values).
GridFunction to_complex(const RealGridFunction& v);

// Value arithmetic; sums/differences keep the boundary-zero flag only when
// both operands carry it.
GridFunction operator+(const GridFunction& v, const GridFunction& w);
GridFunction operator-(const GridFunction& v, const GridFunction& w);
GridFunction operator*(Complex scalar, const GridFunction& v);

namespace detail {

/// Compensated (Kahan) accumulator for double sums.
class KahanSum {
public:
    void add(double x) {
        const double y = x - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace detail

}  // namespace rfd
