#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "s3pot/special_functions.hpp"

using namespace s3pot;

TEST_CASE("gegenbauer: low-degree closed forms") {
    CHECK(gegenbauer({0, 2.0, 0.3}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gegenbauer({1, 1.0, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));  // 2 a x
    CHECK(gegenbauer({3, 1.5, 0.2}) ==
          doctest::Approx(oracles::gegenbauer_series(3, 1.5, 0.2)).epsilon(1e-12));
    CHECK_THROWS_AS(gegenbauer({-1, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("gegenbauer: recurrence equals series oracle, n <= 10") {
    for (double alpha : {1.0, 1.5, 3.0}) {
        for (int n = 0; n <= 10; ++n) {
            for (int i = 0; i < 50; ++i) {
                const double x = -1.0 + 2.0 * i / 49.0;
                const double rec = gegenbauer({n, alpha, x});
                const double ser = oracles::gegenbauer_series(n, alpha, x);
                CHECK(oracles::mixed_deviation(rec, ser) < 1e-10);
            }
        }
    }
}

TEST_CASE("romanovski: degree 0 and 1") {
    CHECK(romanovski({0, 0.7, -3.0, 1.7}) == doctest::Approx(1.0).epsilon(1e-15));
    // R_1^{a,b}(z) = a + 2 b z; with (a,b) = (-alpha_K, -K) this is -alpha_K - 2 K z,
    // the first-degree polynomial multiplying u' in the hypergeometric reduction
    const double alpha_k = 0.8;
    const int K = 2;
    for (double z : {-2.0, -0.3, 0.0, 1.1, 4.0}) {
        CHECK(romanovski({1, -alpha_k, double(-K), z}) ==
              doctest::Approx(-alpha_k - 2.0 * K * z).epsilon(1e-14));
    }
    CHECK_THROWS_AS(romanovski({-2, 0.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("romanovski: n=2 against finite-difference Rodrigues oracle") {
    const double a = 1.0, b = -2.0, z = 0.5;
    const double poly = romanovski({2, a, b, z});
    const double fd = oracles::romanovski_rodrigues_fd(2, a, b, z);
    CHECK(std::abs(poly - fd) / std::abs(fd) < 1e-8);
}

TEST_CASE("romanovski: ODE residual for the quasi-radial reduction") {
    // (1+z^2) u'' + (-alpha_K - 2 K z) u' + (K(K+1) - l(l+1)) u = 0 for u = R_n with
    // weight parameters (-alpha_K, -K), n = K - l.
    const double alpha_s_nc = 2.0;
    for (int K = 0; K <= 5; ++K) {
        const double alpha_k = alpha_s_nc / (K + 1.0);
        for (int ell = std::max(0, K - 5); ell <= K; ++ell) {
            const int n = K - ell;
            const Eigen::VectorXd u = romanovski_coefficients(n, -alpha_k, -double(K));
            const Eigen::VectorXd up = poly_derivative(u);
            const Eigen::VectorXd upp = poly_derivative(up);
            for (int i = 0; i < 50; ++i) {
                const double z = -3.0 + 6.0 * i / 49.0;
                const double r = (1.0 + z * z) * polyval(upp, z) +
                                 (-alpha_k - 2.0 * K * z) * polyval(up, z) +
                                 (K * (K + 1.0) - ell * (ell + 1.0)) * polyval(u, z);
                CHECK(std::abs(r) < 1e-8);
            }
        }
    }
}

TEST_CASE("quasi_radial: trivial and derived values") {
    CHECK(quasi_radial({0, 0, constants::pi / 2}) == doctest::Approx(1.0));
    for (double chi : {0.3, 1.0, 2.5}) {
        CHECK(quasi_radial({1, 1, chi}) == doctest::Approx(std::sin(chi)).epsilon(1e-14));
    }
    const double chi = constants::pi / 3;
    CHECK(quasi_radial({2, 0, chi}) ==
          doctest::Approx(oracles::gegenbauer_series(2, 1.0, 0.5)).epsilon(1e-13));
    CHECK_THROWS_AS(quasi_radial({1, 2, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(quasi_radial({1, 0, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(quasi_radial({1, 0, 4.0}), std::invalid_argument);
}

TEST_CASE("quasi_radial: S_Kl vanishes like sin^l at the left endpoint") {
    // log-log slope of |S_Kl| on chi in [1e-4, 1e-2] approaches l
    for (int K : {2, 4}) {
        for (int ell = 1; ell <= K; ++ell) {
            const double c1 = 1e-4, c2 = 1e-2;
            const double s1 = std::abs(quasi_radial({K, ell, c1}));
            const double s2 = std::abs(quasi_radial({K, ell, c2}));
            const double slope = std::log(s2 / s1) / std::log(c2 / c1);
            CHECK(slope == doctest::Approx(double(ell)).epsilon(1e-3));
        }
    }
}

TEST_CASE("gradient annihilation residual") {
    std::vector<double> grid100, grid1000;
    for (int i = 1; i <= 100; ++i) grid100.push_back(constants::pi * i / 101.0);
    for (int i = 1; i <= 1000; ++i) grid1000.push_back(constants::pi * i / 1001.0);
    CHECK(gradient_annihilation_residual(0, grid100) == 0.0);
    CHECK(gradient_annihilation_residual(3, grid100) < 1e-12);
    CHECK(gradient_annihilation_residual(7, grid1000) < 1e-11);
}
