#include "rfd/mollifier.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rfd {

namespace {

// Dense 8x8 solve with partial pivoting; only used for the Hermite system.
std::array<double, 8> solve_dense_8x8(std::array<std::array<double, 8>, 8> a,
                                      std::array<double, 8> b) {
    constexpr int n = 8;
    for (int col = 0; col < n; ++col) {
        int pivot_row = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot_row][col])) {
                pivot_row = r;
            }
        }
        if (std::abs(a[pivot_row][col]) < 1e-14) {
            throw std::runtime_error("Mollifier: Hermite system is singular");
        }
        std::swap(a[col], a[pivot_row]);
        std::swap(b[col], b[pivot_row]);
        for (int r = col + 1; r < n; ++r) {
            const double m = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) {
                a[r][c] -= m * a[col][c];
            }
            b[r] -= m * b[col];
        }
    }
    std::array<double, 8> x{};
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    return x;
}

// Row of the interpolation matrix: d^order/ds^order of s^k evaluated at s.
std::array<double, 8> hermite_row(double s, int order) {
    std::array<double, 8> row{};
    for (int k = 0; k < 8; ++k) {
        if (k < order) {
            continue;
        }
        double c = 1.0;
        for (int m = 0; m < order; ++m) {
            c *= static_cast<double>(k - m);
        }
        row[static_cast<std::size_t>(k)] = c * std::pow(s, k - order);
    }
    return row;
}

double eval_scaled_poly(std::span<const double, 8> coeffs, double s, int order) {
    double acc = 0.0;
    for (int k = 7; k >= order; --k) {
        double c = coeffs[static_cast<std::size_t>(k)];
        for (int m = 0; m < order; ++m) {
            c *= static_cast<double>(k - m);
        }
        acc = acc * s + c;
    }
    return acc;
}

}  // namespace

Mollifier Mollifier::build(double delta) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("Mollifier: delta must be positive");
    }

    // In the scaled variable s = (x - delta)/delta the conditions read
    // q(0)=1, q'(0)=1, q''(0)=q'''(0)=0, q(1)=2, q'(1)=q''(1)=q'''(1)=0,
    // where p(x) = delta * q(s); the system is delta-independent.
    std::array<std::array<double, 8>, 8> a{};
    std::array<double, 8> b{};
    const std::array<std::pair<double, int>, 8> where = {{
        {0.0, 0}, {0.0, 1}, {0.0, 2}, {0.0, 3}, {1.0, 0}, {1.0, 1}, {1.0, 2}, {1.0, 3},
    }};
    const std::array<double, 8> rhs = {1.0, 1.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < 8; ++i) {
        a[i] = hermite_row(where[i].first, where[i].second);
        b[i] = rhs[i];
    }

    Mollifier m;
    m.delta_ = delta;
    m.transition_coeffs_ = solve_dense_8x8(a, b);

    // Verify the eight conditions on p itself (x-scale) before accepting.
    const double tol = 1e-10 * std::max(1.0, delta);
    const std::array<std::pair<double, int>, 8> checks = {{
        {delta, 0},
        {delta, 1},
        {delta, 2},
        {delta, 3},
        {2.0 * delta, 0},
        {2.0 * delta, 1},
        {2.0 * delta, 2},
        {2.0 * delta, 3},
    }};
    const std::array<double, 8> expected = {delta, 1.0, 0.0, 0.0, 2.0 * delta, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < 8; ++i) {
        const double got = m.saturate_derivative_impl(checks[i].first, checks[i].second);
        if (std::abs(got - expected[i]) > tol) {
            throw std::runtime_error("Mollifier: Hermite condition violated after solve");
        }
    }

    // sup |n^{(k)}|: identity branch contributes 1 to the first derivative;
    // the transition branch is sampled densely.
    constexpr int samples = 10000;
    m.derivative_sups_ = {1.0, 0.0, 0.0};
    for (int i = 0; i <= samples; ++i) {
        const double x = delta * (1.0 + static_cast<double>(i) / samples);
        for (int order = 1; order <= 3; ++order) {
            m.derivative_sups_[static_cast<std::size_t>(order - 1)] =
                std::max(m.derivative_sups_[static_cast<std::size_t>(order - 1)],
                         std::abs(m.saturate_derivative_impl(x, order)));
        }
    }
    return m;
}

double Mollifier::saturate_derivative_impl(double x, int order) const {
    // Evaluate on the branch containing |x| (joins are C^3 so the one-sided
    // values agree); odd extension flips odd-order derivatives' sign rule:
    // n(-x) = -n(x)  =>  n^{(k)}(-x) = (-1)^{k+1} n^{(k)}(x).
    const double ax = std::abs(x);
    double value = 0.0;
    if (order == 0) {
        if (ax <= delta_) {
            value = ax;
        } else if (ax <= 2.0 * delta_) {
            value = delta_ * eval_scaled_poly(transition_coeffs_, (ax - delta_) / delta_, 0);
        } else {
            value = 2.0 * delta_;
        }
        return x < 0.0 ? -value : value;
    }
    if (ax <= delta_) {
        value = (order == 1) ? 1.0 : 0.0;
    } else if (ax <= 2.0 * delta_) {
        // p(x) = delta*q(s), s=(x-delta)/delta  =>  p^{(k)}(x) = q^{(k)}(s)/delta^{k-1}
        value = eval_scaled_poly(transition_coeffs_, (ax - delta_) / delta_, order) /
                std::pow(delta_, order - 1);
    } else {
        value = 0.0;
    }
    const double sign = (x < 0.0 && order % 2 == 0) ? -1.0 : 1.0;
    return sign * value;
}

double Mollifier::saturate(double x) const { return saturate_derivative_impl(x, 0); }

double Mollifier::saturate_derivative(double x, int order) const {
    if (order < 1 || order > 3) {
        throw std::invalid_argument("Mollifier: derivative order must be 1..3");
    }
    return saturate_derivative_impl(x, order);
}

Complex Mollifier::clip(Complex z) const {
    return Complex(saturate(z.real()), saturate(z.imag()));
}

GridFunction Mollifier::clip(const GridFunction& v) const {
    std::vector<Complex> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        out[j] = clip(v[j]);
    }
    return GridFunction(std::move(out), v.boundary_zero());
}

RealGridFunction Mollifier::saturate(const RealGridFunction& v) const {
    std::vector<double> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        out[j] = saturate(v[j]);
    }
    return RealGridFunction(std::move(out));
}

double Mollifier::derivative_sup(int order) const {
    if (order < 1 || order > 3) {
        throw std::invalid_argument("Mollifier: derivative order must be 1..3");
    }
    return derivative_sups_[static_cast<std::size_t>(order - 1)];
}

}  // namespace rfd
