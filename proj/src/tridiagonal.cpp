#include "rfd/tridiagonal.hpp"

#include <cmath>
#include <string>

namespace rfd {

namespace {

constexpr double kPivotTolerance = 1e-14;

double row_scale(const TridiagonalSystem& sys, std::size_t i) {
    const std::size_t n = sys.diag.size();
    double s = std::abs(sys.diag[i]);
    if (i > 0) {
        s = std::max(s, std::abs(sys.sub[i - 1]));
    }
    if (i + 1 < n) {
        s = std::max(s, std::abs(sys.super[i]));
    }
    return s;
}

}  // namespace

std::vector<std::complex<double>> tridiagonal_solve(const TridiagonalSystem& sys,
                                                    std::span<const std::complex<double>> rhs) {
    const std::size_t n = sys.diag.size();
    if (n == 0) {
        throw std::invalid_argument("tridiagonal_solve: empty system");
    }
    if (sys.sub.size() != n - 1 || sys.super.size() != n - 1) {
        throw std::invalid_argument("tridiagonal_solve: off-diagonal lengths must be J-1");
    }
    if (rhs.size() != n) {
        throw std::invalid_argument("tridiagonal_solve: rhs length " + std::to_string(rhs.size()) +
                                    " does not match system size " + std::to_string(n));
    }

    std::vector<std::complex<double>> super_scaled(n - 1);
    std::vector<std::complex<double>> x(rhs.begin(), rhs.end());

    std::complex<double> pivot = sys.diag[0];
    if (std::abs(pivot) < kPivotTolerance * std::max(row_scale(sys, 0), 1.0)) {
        throw SingularSystemError("tridiagonal_solve: near-zero pivot at row 0");
    }
    if (n > 1) {
        super_scaled[0] = sys.super[0] / pivot;
    }
    x[0] /= pivot;

    for (std::size_t i = 1; i < n; ++i) {
        pivot = sys.diag[i] - sys.sub[i - 1] * super_scaled[i - 1];
        if (std::abs(pivot) < kPivotTolerance * std::max(row_scale(sys, i), 1.0)) {
            throw SingularSystemError("tridiagonal_solve: near-zero pivot at row " +
                                      std::to_string(i));
        }
        if (i + 1 < n) {
            super_scaled[i] = sys.super[i] / pivot;
        }
        x[i] = (x[i] - sys.sub[i - 1] * x[i - 1]) / pivot;
    }

    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= super_scaled[i] * x[i + 1];
    }
    return x;
}

}  // namespace rfd
