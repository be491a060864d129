/// @file tridiagonal.hpp
/// @brief Complex tridiagonal systems and a Thomas-algorithm solver.

#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace rfd {

/// J x J tridiagonal matrix acting on the interior unknowns.
/// Lengths: sub and super have J-1 entries, diag has J.
struct TridiagonalSystem {
    std::vector<std::complex<double>> sub;
    std::vector<std::complex<double>> diag;
    std::vector<std::complex<double>> super;
};

/// Thrown when forward elimination meets a pivot below 1e-14 times the row
/// scale.  The matrices assembled by this library have diagonal modulus >= 1,
/// so this signals a solver bug rather than a mathematical failure.
class SingularSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Solve sys * x = rhs by forward elimination and back substitution.
/// No pivoting; O(J) work.
/// @throws std::invalid_argument on inconsistent lengths.
/// @throws SingularSystemError on a near-zero pivot.
std::vector<std::complex<double>> tridiagonal_solve(const TridiagonalSystem& sys,
                                                    std::span<const std::complex<double>> rhs);

}  // namespace rfd
