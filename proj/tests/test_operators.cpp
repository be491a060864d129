#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rfd/operators.hpp"

using namespace rfd;

namespace {

constexpr double kPi = std::numbers::pi;

GridFunction random_interior(const SpaceMesh& mesh, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<Complex> vals(mesh.total_nodes(), Complex(0.0, 0.0));
    for (std::size_t j = 1; j + 1 < vals.size(); ++j) {
        vals[j] = Complex(dist(rng), dist(rng));
    }
    return GridFunction(std::move(vals), true);
}

RealGridFunction random_real(const SpaceMesh& mesh, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<double> vals(mesh.total_nodes());
    for (double& v : vals) {
        v = dist(rng);
    }
    return RealGridFunction(std::move(vals));
}

GridFunction sine_mode(const SpaceMesh& mesh, int k) {
    std::vector<Complex> vals(mesh.total_nodes());
    for (std::size_t j = 0; j < vals.size(); ++j) {
        vals[j] = Complex(
            std::sin(k * kPi * (mesh.node(static_cast<int>(j)) - mesh.x_a()) / mesh.length()),
            0.0);
    }
    vals.front() = vals.back() = Complex(0.0, 0.0);
    return GridFunction(std::move(vals), true);
}

double mode_eigenvalue(const SpaceMesh& mesh, int k) {
    const double s = std::sin(k * kPi * mesh.h() / (2.0 * mesh.length()));
    return 4.0 / (mesh.h() * mesh.h()) * s * s;
}

// Dense Gaussian elimination with partial pivoting; the oracle for the
// tridiagonal solver.
std::vector<Complex> dense_solve(std::vector<std::vector<Complex>> a, std::vector<Complex> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pr = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pr][col])) {
                pr = r;
            }
        }
        std::swap(a[col], a[pr]);
        std::swap(b[col], b[pr]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex m = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) {
                a[r][c] -= m * a[col][c];
            }
            b[r] -= m * b[col];
        }
    }
    for (std::size_t r = n; r-- > 0;) {
        for (std::size_t c = r + 1; c < n; ++c) {
            b[r] -= a[r][c] * b[c];
        }
        b[r] /= a[r][r];
    }
    return b;
}

}  // namespace

TEST_CASE("discrete laplacian") {
    SUBCASE("zero and quadratic exactness") {
        const SpaceMesh mesh(0.0, 2.0, 19);
        const GridFunction z = apply_laplacian(GridFunction::zeros(mesh.total_nodes()), mesh);
        for (std::size_t j = 0; j < z.size(); ++j) {
            CHECK(z[j] == Complex(0, 0));
        }
        // x (L - x) has second derivative -2 everywhere; the stencil is exact.
        std::vector<Complex> q(mesh.total_nodes());
        for (std::size_t j = 0; j < q.size(); ++j) {
            const double x = mesh.node(static_cast<int>(j));
            q[j] = Complex(x * (mesh.length() - x), 0.0);
        }
        q.front() = q.back() = Complex(0, 0);
        const GridFunction lap = apply_laplacian(GridFunction(std::move(q), true), mesh);
        for (std::size_t j = 1; j + 1 < lap.size(); ++j) {
            CHECK(lap[j].real() == doctest::Approx(-2.0).epsilon(1e-11));
            CHECK(lap[j].imag() == 0.0);
        }
    }

    SUBCASE("hand stencil, h = 1") {
        const SpaceMesh mesh(0.0, 4.0, 3);
        const GridFunction v(
            {Complex(0, 0), Complex(1, 0), Complex(2, 0), Complex(1, 0), Complex(0, 0)}, true);
        const GridFunction lap = apply_laplacian(v, mesh);
        CHECK(lap[1] == Complex(0, 0));
        CHECK(lap[2] == Complex(-2, 0));
        CHECK(lap[3] == Complex(0, 0));
    }

    SUBCASE("rejects inputs without the boundary-zero flag") {
        const SpaceMesh mesh(0.0, 1.0, 3);
        const GridFunction v(std::vector<Complex>(5, Complex(1, 0)));
        CHECK_THROWS_AS(apply_laplacian(v, mesh), std::invalid_argument);
    }

    SUBCASE("eigenmode table") {
        for (const int J : {9, 40}) {
            const SpaceMesh mesh(-0.7, 1.9, J);
            for (const int k : {1, 2, J / 2, J}) {
                const GridFunction mode = sine_mode(mesh, k);
                const double lambda = mode_eigenvalue(mesh, k);
                const GridFunction lap = apply_laplacian(mode, mesh);
                for (std::size_t j = 1; j + 1 < mode.size(); ++j) {
                    CHECK(std::abs(lap[j] + lambda * mode[j]) <= 1e-12 * lambda);
                }
            }
        }
    }
}

TEST_CASE("summation by parts") {
    std::mt19937_64 rng(5);
    for (const int J : {3, 10, 100}) {
        const SpaceMesh mesh(0.0, 1.3, J);
        for (int rep = 0; rep < 100; ++rep) {
            const GridFunction v = random_interior(mesh, rng);
            const GridFunction z = random_interior(mesh, rng);
            const Complex a = inner_product_0h(apply_laplacian(v, mesh), z, mesh);
            const Complex b =
                -staggered_inner_product_0h(delta_h(v, mesh), delta_h(z, mesh), mesh);
            const Complex c = inner_product_0h(v, apply_laplacian(z, mesh), mesh);
            const double scale = std::max({std::abs(a), std::abs(b), 1e-30});
            CHECK(std::abs(a - b) / scale <= 1e-13);
            CHECK(std::abs(c - b) / scale <= 1e-13);

            const double s1 = seminorm_1h(v, mesh);
            const Complex quad = inner_product_0h(apply_laplacian(v, mesh), v, mesh);
            CHECK(std::abs(quad - Complex(-s1 * s1, 0.0)) <=
                  1e-13 * std::max(1.0, s1 * s1));
        }
    }
}

TEST_CASE("tridiagonal solver") {
    SUBCASE("identity") {
        TridiagonalSystem sys;
        sys.diag.assign(4, Complex(1, 0));
        sys.sub.assign(3, Complex(0, 0));
        sys.super.assign(3, Complex(0, 0));
        const std::vector<Complex> rhs = {Complex(1, 1), Complex(2, -1), Complex(0, 3),
                                          Complex(-4, 0)};
        const std::vector<Complex> x = tridiagonal_solve(sys, rhs);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(x[i] == rhs[i]);
        }
    }

    SUBCASE("closed-form 2x2") {
        TridiagonalSystem sys;
        sys.diag = {Complex(2, 0), Complex(2, 0)};
        sys.sub = {Complex(1, 0)};
        sys.super = {Complex(1, 0)};
        const std::vector<Complex> x =
            tridiagonal_solve(sys, std::vector<Complex>{Complex(3, 0), Complex(3, 0)});
        CHECK(std::abs(x[0] - Complex(1, 0)) <= 1e-15);
        CHECK(std::abs(x[1] - Complex(1, 0)) <= 1e-15);
    }

    SUBCASE("random diagonally dominant 50x50 vs dense oracle") {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        constexpr std::size_t n = 50;
        TridiagonalSystem sys;
        sys.sub.resize(n - 1);
        sys.super.resize(n - 1);
        sys.diag.resize(n);
        std::vector<std::vector<Complex>> dense(n, std::vector<Complex>(n, Complex(0, 0)));
        for (std::size_t i = 0; i < n; ++i) {
            sys.diag[i] = Complex(4.0 + dist(rng), dist(rng));
            dense[i][i] = sys.diag[i];
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            sys.super[i] = Complex(dist(rng), dist(rng));
            sys.sub[i] = Complex(dist(rng), dist(rng));
            dense[i][i + 1] = sys.super[i];
            dense[i + 1][i] = sys.sub[i];
        }
        std::vector<Complex> rhs(n);
        for (Complex& v : rhs) {
            v = Complex(dist(rng), dist(rng));
        }
        const std::vector<Complex> x = tridiagonal_solve(sys, rhs);
        const std::vector<Complex> y = dense_solve(dense, rhs);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(x[i] - y[i]) <= 1e-11);
        }
    }

    SUBCASE("singular pivot aborts") {
        TridiagonalSystem sys;
        sys.diag = {Complex(0, 0), Complex(1, 0)};
        sys.sub = {Complex(1, 0)};
        sys.super = {Complex(1, 0)};
        CHECK_THROWS_AS(tridiagonal_solve(sys, std::vector<Complex>{Complex(1, 0), Complex(1, 0)}),
                        SingularSystemError);
    }

    SUBCASE("length validation") {
        TridiagonalSystem sys;
        sys.diag = {Complex(1, 0), Complex(1, 0)};
        sys.sub = {Complex(0, 0), Complex(0, 0)};  // wrong length
        sys.super = {Complex(0, 0)};
        CHECK_THROWS_AS(tridiagonal_solve(sys, std::vector<Complex>{Complex(1, 0), Complex(1, 0)}),
                        std::invalid_argument);
    }
}

TEST_CASE("nu_h solve") {
    const SpaceMesh mesh(0.0, 1.0, 24);
    const double tau = 0.05;
    std::mt19937_64 rng(29);

    SUBCASE("zero kernel") {
        const RealGridFunction phi = random_real(mesh, rng);
        const GridFunction x =
            solve_nu_h(0.5, phi, GridFunction::zeros(mesh.total_nodes()), tau, mesh);
        for (std::size_t j = 0; j < x.size(); ++j) {
            CHECK(x[j] == Complex(0, 0));
        }
    }

    SUBCASE("apply-then-solve round trip") {
        for (const double eps : {0.25, 0.5}) {
            for (int rep = 0; rep < 25; ++rep) {
                const GridFunction chi = random_interior(mesh, rng);
                const RealGridFunction phi = random_real(mesh, rng);
                // Forward application of nu_h[eps, phi].
                const Complex iet(0.0, eps * tau);
                const GridFunction forward =
                    chi - iet * apply_laplacian(chi, mesh) - iet * otimes(phi, chi);
                const GridFunction back = solve_nu_h(eps, phi, forward, tau, mesh);
                CHECK(norm_0h(back - chi, mesh) <= 1e-11 * std::max(1.0, norm_0h(chi, mesh)));
            }
        }
    }

    SUBCASE("sine-mode closed form with phi = 0") {
        const RealGridFunction zero_phi = RealGridFunction::zeros(mesh.total_nodes());
        for (const int k : {1, 3, 7}) {
            const GridFunction mode = sine_mode(mesh, k);
            const double lambda = mode_eigenvalue(mesh, k);
            const double eps = 0.25;
            const GridFunction chi = solve_nu_h(eps, zero_phi, mode, tau, mesh);
            const Complex expected_factor = 1.0 / Complex(1.0, eps * tau * lambda);
            for (std::size_t j = 1; j + 1 < mode.size(); ++j) {
                CHECK(std::abs(chi[j] - expected_factor * mode[j]) <= 1e-12);
            }
        }
    }

    SUBCASE("eps validation") {
        const RealGridFunction zero_phi = RealGridFunction::zeros(mesh.total_nodes());
        CHECK_THROWS_AS(
            solve_nu_h(0.0, zero_phi, GridFunction::zeros(mesh.total_nodes()), tau, mesh),
            std::invalid_argument);
    }
}

TEST_CASE("half-shift operators") {
    const SpaceMesh mesh(0.0, 1.0, 24);
    const double tau = 0.08;
    const HalfStepOperators ops(tau, mesh);
    std::mt19937_64 rng(31);

    SUBCASE("zero input and zero step") {
        const GridFunction z = apply_half_shift(GridFunction::zeros(mesh.total_nodes()), -1, ops);
        CHECK(norm_inf(z) == 0.0);
        const HalfStepOperators frozen(0.0, mesh);
        const GridFunction v = random_interior(mesh, rng);
        const GridFunction same = apply_half_shift(v, +1, frozen);
        for (std::size_t j = 0; j < v.size(); ++j) {
            CHECK(same[j] == v[j]);
        }
    }

    SUBCASE("sine-mode multipliers") {
        for (const int k : {1, 5}) {
            const GridFunction mode = sine_mode(mesh, k);
            const double lambda = mode_eigenvalue(mesh, k);
            const GridFunction a = apply_half_shift(mode, -1, ops);  // A_h
            const GridFunction t = apply_half_shift(mode, +1, ops);  // T_h
            for (std::size_t j = 1; j + 1 < mode.size(); ++j) {
                CHECK(std::abs(a[j] - Complex(1.0, 0.5 * tau * lambda) * mode[j]) <= 1e-12);
                CHECK(std::abs(t[j] - Complex(1.0, -0.5 * tau * lambda) * mode[j]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("B_h properties") {
    std::mt19937_64 rng(37);
    for (const int J : {3, 10, 100}) {
        const SpaceMesh mesh(0.0, 1.3, J);
        const HalfStepOperators ops(0.37, mesh);
        const RealGridFunction zero_phi = RealGridFunction::zeros(mesh.total_nodes());

        for (int rep = 0; rep < 100; ++rep) {
            const GridFunction chi = random_interior(mesh, rng);
            const GridFunction b = apply_B_h(chi, ops);
            const double n0 = norm_0h(chi, mesh);
            const double s1 = seminorm_1h(chi, mesh);
            CHECK(norm_0h(b, mesh) == doctest::Approx(n0).epsilon(1e-12));
            CHECK(seminorm_1h(b, mesh) == doctest::Approx(s1).epsilon(1e-12));

            // A_h^{-1} never expands the L2 norm.
            const GridFunction ainv = solve_nu_h(0.5, zero_phi, chi, ops.tau, mesh);
            CHECK(norm_0h(ainv, mesh) <= n0 * (1.0 + 1e-13));
        }

        // (I + B_h) y = A_h^{-1} chi has the solution chi/2: build the dense
        // matrix of I + B_h column by column and solve with the dense oracle.
        const std::size_t ni = mesh.total_nodes() - 2;
        std::vector<std::vector<Complex>> ipb(ni, std::vector<Complex>(ni));
        for (std::size_t c = 0; c < ni; ++c) {
            std::vector<Complex> e(mesh.total_nodes(), Complex(0, 0));
            e[c + 1] = Complex(1, 0);
            const GridFunction col = apply_B_h(GridFunction(std::move(e), true), ops);
            for (std::size_t r = 0; r < ni; ++r) {
                ipb[r][c] = col[r + 1] + (r == c ? Complex(1, 0) : Complex(0, 0));
            }
        }
        for (int rep = 0; rep < 10; ++rep) {
            const GridFunction chi = random_interior(mesh, rng);
            const GridFunction ainv = solve_nu_h(0.5, zero_phi, chi, ops.tau, mesh);
            std::vector<Complex> rhs(ni);
            for (std::size_t r = 0; r < ni; ++r) {
                rhs[r] = ainv[r + 1];
            }
            const std::vector<Complex> y = dense_solve(ipb, rhs);
            double defect = 0.0;
            double scale = 1e-30;
            for (std::size_t r = 0; r < ni; ++r) {
                defect = std::max(defect, std::abs(y[r] - 0.5 * chi[r + 1]));
                scale = std::max(scale, std::abs(chi[r + 1]));
            }
            CHECK(defect / scale <= 1e-11);
        }
    }
}
