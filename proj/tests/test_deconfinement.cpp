#include <doctest.h>

#include <array>
#include <vector>

#include "oracles.hpp"
#include "s3pot/deconfinement.hpp"
#include "s3pot/deformation.hpp"
#include "s3pot/eigensolver.hpp"

using namespace s3pot;

TEST_CASE("compactified running coupling") {
    // Q^2 -> infinity: asymptotic freedom at fixed x
    CouplingParams uv;
    uv.q2_over_lambda2 = 1e12;
    uv.x = 1.0;
    const CouplingValue a_uv = alpha_s_compactified(uv);
    CHECK(a_uv.perturbative);
    CHECK(a_uv.value < 1e-1);

    // rho = 0 restores the radius-only form
    CouplingParams base;
    base.q2_over_lambda2 = 4.0;
    base.x = 2.5;
    base.rho = 0.0;
    const CouplingValue a0 = alpha_s_compactified(base);
    CHECK(a0.value ==
          doctest::Approx(4.0 * constants::pi / (9.0 * std::log(6.5))).epsilon(1e-14));

    // x -> 0 at Q^2 = 0, rho > 0: infrared fall-off with growing radius
    CouplingParams ir;
    ir.q2_over_lambda2 = 0.0;
    ir.rho = 1.0 / std::sqrt(2.0);
    double prev = 1e300;
    for (double x : {1e-2, 1e-4, 1e-6}) {
        ir.x = x;
        const CouplingValue v = alpha_s_compactified(ir);
        CHECK(v.perturbative);
        CHECK(v.value < prev);
        prev = v.value;
    }
    CHECK(prev < 0.2);

    // log argument <= 1: tagged non-perturbative, not a crash
    CouplingParams np;
    np.q2_over_lambda2 = 0.0;
    np.x = 0.5;
    np.rho = 0.0;
    const CouplingValue bad = alpha_s_compactified(np);
    CHECK_FALSE(bad.perturbative);
    CHECK(std::isnan(bad.value));
    CHECK(bad.log_argument == doctest::Approx(0.5));

    CouplingParams badnf;
    badnf.n_f = 17;
    CHECK_THROWS_AS(alpha_s_compactified(badnf), std::invalid_argument);
}

TEST_CASE("figure-2 curve") {
    CHECK(figure2_curve(1.0) == doctest::Approx(1.4 / std::log(2.0)).epsilon(1e-15));
    // single maximum at x = 1
    double best_x = 0.0, best = -1.0;
    for (int i = 1; i <= 2000; ++i) {
        const double x = 0.01 * i;
        const double v = figure2_curve(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    CHECK(best_x == doctest::Approx(1.0).epsilon(0.011));
}

TEST_CASE("temperature-radius relation") {
    CHECK(temperature_from_radius(0.58, 200.0, 3) == doctest::Approx(39.19).epsilon(0.0003));
    // exact linearity and exact inverse
    CHECK(temperature_from_radius(1.16, 200.0, 3) ==
          doctest::Approx(2.0 * temperature_from_radius(0.58, 200.0, 3)).epsilon(1e-14));
    const double r_hagedorn = radius_from_temperature(160.0, 200.0, 3);
    CHECK(r_hagedorn == doctest::Approx(2.368).epsilon(1e-3));
    const double r7gev = radius_from_temperature(7000.0, 200.0, 3);
    CHECK(r7gev > 100.0);
    CHECK(r7gev < 110.0);
    CHECK(temperature_from_radius(r7gev, 200.0, 3) == doctest::Approx(7000.0).epsilon(1e-12));
}

TEST_CASE("coulomb collapse report") {
    const auto rows = coulomb_collapse_report(1.0, 3.0, 0.1, 50);
    REQUIRE(rows.size() == 50);
    // r/R = 0.1: series oracle t^2/3 + t^4/45
    const auto& last = rows.back();
    CHECK(last.r_over_R == doctest::Approx(0.1));
    CHECK(last.rel_deviation == doctest::Approx(0.01 / 3.0 + 1e-4 / 45.0).epsilon(1e-4));
    // deviation shrinks toward r -> 0 and is monotone increasing in r
    CHECK(rows.front().rel_deviation < 2e-6);
    for (size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].rel_deviation > rows[i - 1].rel_deviation);
    // bound from the cot series, 1 - t cot t = t^2/3 + t^4/45 + 2t^6/945 + ...
    for (const auto& row : rows) {
        const double t2 = row.r_over_R * row.r_over_R;
        CHECK(row.rel_deviation <=
              t2 / 3.0 + t2 * t2 / 45.0 + 3.0 * t2 * t2 * t2 / 945.0 + 1e-12);
    }
    CHECK_THROWS_AS(coulomb_collapse_report(1.0, 3.0, 1.5), std::invalid_argument);
}

TEST_CASE("dipole branch potentials approach their small-angle limits") {
    const double an = 3.0;
    const DipolePotential dip = dipole_potential(an, 0.0, 0.0, 0);
    const double chi = 1e-3;
    const double gn_limit = an * (std::cos(chi) / std::sin(chi) - 1.0 / constants::pi);
    CHECK(std::abs(dip.gamma_north(chi) - gn_limit) / std::abs(gn_limit) < 1e-5);
    const double gs_limit = -an / constants::pi;
    CHECK(std::abs(dip.gamma_south(chi) - gs_limit) / std::abs(gs_limit) < 1e-5);
}

TEST_CASE("hydrogen-like limit spectrum") {
    const double ry = 450.0, a0 = 0.6578;
    const std::array<int, 4> ks{0, 1, 2, 9};
    // k = 0: pure bound tower
    const auto bound = rydberg_limit_spectrum(ks, ry, a0, 0.0);
    CHECK(bound[0].total_mev == doctest::Approx(-ry).epsilon(1e-14));
    CHECK(bound[3].total_mev == doctest::Approx(-4.5).epsilon(1e-12));
    double prev = -1e300;
    for (const auto& lv : bound) {
        CHECK(lv.scattering_mev == 0.0);
        CHECK(lv.total_mev > prev);
        CHECK(lv.total_mev < 0.0);  // approaches the threshold from below
        prev = lv.total_mev;
    }

    // consistency with the curved spectrum at (K+1)/R = k held fixed
    PhysicalParams p;
    p.lambda_qcd_mev = 200.0;
    p.alpha_s = 1.0;
    const double k_fixed = 0.8;  // 1/fm
    for (int K : {0, 2, 5}) {
        PhysicalParams q = p;
        q.radius_fm = (K + 1.0) / k_fixed;
        const double curved = energy_mev_rydberg_form(K, q);
        const auto limit = rydberg_limit_spectrum(std::array<int, 1>{K}, strong_rydberg_mev(q),
                                                  bohr_radius_fm(q), k_fixed);
        CHECK(std::abs(curved - limit[0].total_mev) < 1e-12 * std::abs(curved));
    }
}

TEST_CASE("curved spectrum collapses onto the flat Coulomb tower") {
    PhysicalParams p;
    p.lambda_qcd_mev = 400.0;  // mu = 200 MeV
    p.alpha_s = 1.0;           // aN = 3
    const double a0 = bohr_radius_fm(p);
    const std::vector<double> radii{2.0 * a0, 4.0 * a0, 8.0 * a0};
    const auto rows = curved_vs_flat_spectrum(radii, p, 2, 4000);
    REQUIRE(rows.size() == 6);
    const double ry = strong_rydberg_mev(p);
    for (const auto& row : rows) {
        // the gap IS the scattering term of the curved spectrum, to solver tolerance
        CHECK(std::abs(row.gap_mev - row.gap_formula_mev) < 2e-3 * ry);
        CHECK(row.e_coulomb_mev == doctest::Approx(-ry / std::pow(row.K + 1.0, 2)));
    }
    // gap shrinks as the radius grows (1/R^2)
    for (int K = 0; K < 2; ++K) {
        std::vector<double> gaps;
        for (const auto& row : rows)
            if (row.K == K) gaps.push_back(std::abs(row.gap_mev));
        REQUIRE(gaps.size() == 3);
        CHECK(gaps[1] < gaps[0]);
        CHECK(gaps[2] < gaps[1]);
    }

    // alpha_s = 0: both towers free; the gap formula still matches exactly
    PhysicalParams freep = p;
    freep.alpha_s = 0.0;
    // bohr radius diverges; compare solver against kinetic-only formula instead
    const std::vector<double> one_r{3.0};
    SpectralProblem fp;
    fp.potential = centrifugal_potential(0);
    fp.grid_points = 2000;
    const SpectrumResult fr = solve(fp, 2);
    const double scale = constants::hbar_c_mev_fm * constants::hbar_c_mev_fm /
                         (2.0 * freep.mu_q() * 9.0);
    for (int K = 0; K < 2; ++K) {
        const double exact = scale * (K + 1.0) * (K + 1.0);
        CHECK(scale * fr.eigenvalues[K] == doctest::Approx(exact).epsilon(1e-4));
    }
}
