#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rfd/grid.hpp"

using namespace rfd;

namespace {

GridFunction random_interior(const SpaceMesh& mesh, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<Complex> vals(mesh.total_nodes(), Complex(0.0, 0.0));
    for (std::size_t j = 1; j + 1 < vals.size(); ++j) {
        vals[j] = Complex(dist(rng), dist(rng));
    }
    return GridFunction(std::move(vals), true);
}

}  // namespace

TEST_CASE("space mesh node placement") {
    const SpaceMesh mesh(-1.5, 2.5, 7);
    CHECK(mesh.h() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mesh.length() == doctest::Approx(4.0));
    CHECK(std::abs(mesh.node(0) - (-1.5)) == 0.0);
    CHECK(std::abs(mesh.node(8) - 2.5) <= 1e-12 * mesh.length());
    CHECK(mesh.total_nodes() == 9);

    CHECK_THROWS_AS(SpaceMesh(0.0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(SpaceMesh(1.0, 1.0, 5), std::invalid_argument);
}

TEST_CASE("time mesh nodes") {
    const TimeMesh time(2.0, 8);
    CHECK(time.tau() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(std::abs(time.t(8) - 2.0) <= 1e-12 * 2.0);
    CHECK(time.t_mid(3) == doctest::Approx(0.875));
    CHECK_THROWS_AS(TimeMesh(0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(TimeMesh(1.0, 0), std::invalid_argument);
}

TEST_CASE("boundary-zero flag is constructor enforced") {
    std::vector<Complex> ok = {Complex(0, 0), Complex(1, 2), Complex(0, 0)};
    CHECK_NOTHROW(GridFunction(ok, true));
    std::vector<Complex> bad = {Complex(1e-300, 0), Complex(1, 2), Complex(0, 0)};
    CHECK_THROWS_AS(GridFunction(bad, true), std::invalid_argument);
    CHECK_NOTHROW(GridFunction(bad, false));
}

TEST_CASE("otimes pointwise product") {
    const GridFunction ones(std::vector<Complex>(5, Complex(1, 0)));
    std::mt19937_64 rng(7);
    const SpaceMesh mesh(0.0, 1.0, 3);
    const GridFunction v = random_interior(mesh, rng);

    SUBCASE("identity and zero") {
        const GridFunction vi = otimes(v, ones);
        const GridFunction z = otimes(GridFunction::zeros(5), v);
        for (std::size_t j = 0; j < 5; ++j) {
            CHECK(vi[j] == v[j]);
            CHECK(z[j] == Complex(0, 0));
        }
    }

    SUBCASE("hand-evaluated case") {
        const GridFunction a({Complex(0, 0), Complex(2, 0), Complex(3, 0), Complex(0, 0)},
                             true);
        const GridFunction b({Complex(0, 0), Complex(0, 1), Complex(-1, 0), Complex(0, 0)},
                             true);
        const GridFunction c = otimes(a, b);
        CHECK(c[0] == Complex(0, 0));
        CHECK(c[1] == Complex(0, 2));
        CHECK(c[2] == Complex(-3, 0));
        CHECK(c[3] == Complex(0, 0));
        CHECK(c.boundary_zero());
    }

    SUBCASE("flag propagation and length mismatch") {
        const GridFunction plain(std::vector<Complex>(5, Complex(2, 1)));
        CHECK(otimes(v, plain).boundary_zero());
        CHECK_FALSE(otimes(plain, plain).boundary_zero());
        const GridFunction shorter(std::vector<Complex>(4, Complex(1, 0)));
        CHECK_THROWS_AS(otimes(plain, shorter), std::invalid_argument);
    }
}

TEST_CASE("forward difference") {
    SUBCASE("constants vanish, linears are exact") {
        const SpaceMesh mesh(0.0, 1.0, 6);
        const GridFunction c(std::vector<Complex>(8, Complex(3, -1)));
        for (std::size_t j = 0; j < 7; ++j) {
            CHECK(std::abs(delta_h(c, mesh)[j]) == 0.0);
        }
        std::vector<Complex> lin(8);
        for (int j = 0; j < 8; ++j) {
            lin[static_cast<std::size_t>(j)] = Complex(mesh.node(j), 0.0);
        }
        const StaggeredFunction d = delta_h(GridFunction(std::move(lin)), mesh);
        for (std::size_t j = 0; j < 7; ++j) {
            CHECK(d[j].real() == doctest::Approx(1.0).epsilon(1e-13));
        }
    }

    SUBCASE("hand stencil, h = 0.5") {
        const SpaceMesh mesh(0.0, 1.0, 1);  // 3 nodes, h = 0.5
        const GridFunction v({Complex(0, 0), Complex(1, 0), Complex(0, 0)}, true);
        const StaggeredFunction d = delta_h(v, mesh);
        CHECK(d.size() == 2);
        CHECK(d[0] == Complex(2, 0));
        CHECK(d[1] == Complex(-2, 0));
    }
}

TEST_CASE("inner product") {
    const SpaceMesh mesh(0.0, 1.0, 30);
    std::mt19937_64 rng(11);

    SUBCASE("positivity and conjugate symmetry") {
        for (int rep = 0; rep < 20; ++rep) {
            const GridFunction v = random_interior(mesh, rng);
            const GridFunction w = random_interior(mesh, rng);
            const Complex vv = inner_product_0h(v, v, mesh);
            CHECK(vv.imag() == doctest::Approx(0.0).epsilon(1e-15));
            CHECK(vv.real() >= 0.0);
            const Complex vw = inner_product_0h(v, w, mesh);
            const Complex wv = inner_product_0h(w, v, mesh);
            CHECK(std::abs(vw - std::conj(wv)) <= 1e-14 * std::max(1.0, std::abs(vw)));
        }
    }

    SUBCASE("orthogonal sine modes, direct-summation oracle") {
        constexpr double pi = std::numbers::pi;
        auto mode = [&](int k) {
            std::vector<Complex> vals(mesh.total_nodes());
            for (std::size_t j = 0; j < vals.size(); ++j) {
                vals[j] = Complex(std::sin(k * pi * mesh.node(static_cast<int>(j))), 0.0);
            }
            return GridFunction(std::move(vals));
        };
        for (const auto [k, m] : {std::pair{1, 2}, std::pair{2, 5}, std::pair{3, 7}}) {
            const GridFunction vk = mode(k);
            const GridFunction vm = mode(m);
            // Independent oracle: plain left-to-right summation.
            Complex direct(0.0, 0.0);
            for (std::size_t j = 0; j < vk.size(); ++j) {
                direct += vk[j] * std::conj(vm[j]);
            }
            direct *= mesh.h();
            CHECK(std::abs(inner_product_0h(vk, vm, mesh) - direct) <= 1e-13);
            CHECK(std::abs(inner_product_0h(vk, vm, mesh)) <= 1e-12);
        }
    }
}

TEST_CASE("discrete norms") {
    const SpaceMesh mesh(0.0, 2.0, 15);

    SUBCASE("zero function") {
        const NormBundle nb = discrete_norms(GridFunction::zeros(mesh.total_nodes()), mesh);
        CHECK(nb.norm0h == 0.0);
        CHECK(nb.seminorm1h == 0.0);
        CHECK(nb.norm1h == 0.0);
        CHECK(nb.normInf == 0.0);
    }

    SUBCASE("single interior spike") {
        const Complex a(3.0, -4.0);
        std::vector<Complex> vals(mesh.total_nodes(), Complex(0, 0));
        vals[5] = a;
        const NormBundle nb = discrete_norms(GridFunction(std::move(vals), true), mesh);
        CHECK(nb.norm0h == doctest::Approx(std::sqrt(mesh.h()) * std::abs(a)).epsilon(1e-13));
        CHECK(nb.normInf == doctest::Approx(std::abs(a)).epsilon(1e-15));
    }

    SUBCASE("embedding inequalities on random boundary-zero functions") {
        std::mt19937_64 rng(23);
        for (const int J : {3, 10, 100}) {
            const SpaceMesh m(0.0, 2.0, J);
            const double L = m.length();
            for (int rep = 0; rep < 100; ++rep) {
                const GridFunction v = random_interior(m, rng);
                const NormBundle nb = discrete_norms(v, m);
                CHECK(nb.norm0h <= L * nb.seminorm1h * (1 + 1e-12));
                CHECK(nb.normInf <= std::sqrt(L) * nb.seminorm1h * (1 + 1e-12));
                CHECK(nb.seminorm1h <= 2.0 / m.h() * nb.norm0h * (1 + 1e-12));
                CHECK(nb.norm1h * nb.norm1h ==
                      doctest::Approx(nb.norm0h * nb.norm0h + nb.seminorm1h * nb.seminorm1h)
                          .epsilon(1e-14));
            }
        }
    }
}
