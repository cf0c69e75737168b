#include "s3pot/deconfinement.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "s3pot/eigensolver.hpp"

namespace s3pot {

namespace {
constexpr double kHbarC = constants::hbar_c_mev_fm;
constexpr double kPi = constants::pi;
}  // namespace

CouplingValue alpha_s_compactified(const CouplingParams& p) {
    if (p.rho < 0.0 || p.rho > 1.0)
        throw std::invalid_argument("alpha_s_compactified: rho in [0,1]");
    const double b0 = p.beta0();
    if (!(b0 > 0.0)) throw std::invalid_argument("alpha_s_compactified: beta0 <= 0 (n_f too large)");
    if (!(p.x > 0.0) && p.rho > 0.0)
        throw std::invalid_argument("alpha_s_compactified: x > 0 required when rho > 0");

    double arg = p.q2_over_lambda2;
    if (p.x > 0.0) arg += std::sqrt(1.0 - p.rho * p.rho) * p.x;
    if (p.rho > 0.0) arg += p.rho / p.x;

    CouplingValue out;
    out.log_argument = arg;
    if (arg <= 1.0) {
        // log <= 0: the one-loop formula has left its domain of validity
        out.perturbative = false;
        out.value = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.perturbative = true;
    out.value = 4.0 * kPi / (b0 * std::log(arg));
    return out;
}

double coupling_x(double r_fm, double lambda_mev) {
    const double t = kHbarC / (r_fm * lambda_mev);
    return t * t;
}

double figure2_curve(double x) { return 1.4 / std::log(x + 1.0 / x); }

double temperature_from_radius(double r_fm, double lambda_mev, int n_c) {
    if (!(r_fm > 0.0)) throw std::invalid_argument("temperature_from_radius: R > 0");
    return lambda_mev * lambda_mev * r_fm / (n_c * kHbarC);
}

double radius_from_temperature(double t_mev, double lambda_mev, int n_c) {
    if (!(t_mev > 0.0)) throw std::invalid_argument("radius_from_temperature: T > 0");
    return n_c * kHbarC * t_mev / (lambda_mev * lambda_mev);
}

std::vector<CollapseRow> coulomb_collapse_report(double r_fm, double alpha_s_nc,
                                                 double r_max_fraction, int n_rows) {
    if (!(r_max_fraction > 0.0 && r_max_fraction < 1.0))
        throw std::invalid_argument("coulomb_collapse_report: fraction in (0,1)");
    std::vector<CollapseRow> rows;
    rows.reserve(n_rows);
    for (int i = 1; i <= n_rows; ++i) {
        const double t = r_max_fraction * i / n_rows;  // r/R
        const double r = t * r_fm;
        CollapseRow row;
        row.r_fm = r;
        row.r_over_R = t;
        row.v_curved_mev = -(kHbarC * alpha_s_nc / r_fm) / std::tan(t);
        row.v_flat_mev = -kHbarC * alpha_s_nc / r;
        row.rel_deviation = std::abs(row.v_curved_mev - row.v_flat_mev) / std::abs(row.v_flat_mev);
        rows.push_back(row);
    }
    return rows;
}

std::vector<RydbergLevel> rydberg_limit_spectrum(std::span<const int> k_list, double ry_mev,
                                                 double a0_fm, double k_inv_fm) {
    std::vector<RydbergLevel> levels;
    levels.reserve(k_list.size());
    const double scatter = ry_mev * (a0_fm * k_inv_fm) * (a0_fm * k_inv_fm);
    for (int K : k_list) {
        if (K < 0) throw std::invalid_argument("rydberg_limit_spectrum: K >= 0");
        RydbergLevel lv;
        lv.K = K;
        lv.bound_mev = -ry_mev / ((K + 1.0) * (K + 1.0));
        lv.scattering_mev = scatter;
        lv.total_mev = lv.bound_mev + lv.scattering_mev;
        levels.push_back(lv);
    }
    return levels;
}

std::vector<CurvedVsFlatRow> curved_vs_flat_spectrum(std::span<const double> r_fm_seq,
                                                     const PhysicalParams& params, int count,
                                                     int grid_points) {
    params.validate();
    const double mu = params.mu_q();
    const double an = params.alpha_s_nc();
    const double ry = strong_rydberg_mev(params);
    const double a0 = bohr_radius_fm(params);

    std::vector<CurvedVsFlatRow> rows;
    for (double r_fm : r_fm_seq) {
        // dimensionless form: -u'' - 2 b cot u = eps u, b = mu R aN / (hbar c),
        // E = eps * hbar^2 c^2/(2 mu R^2)
        const double b = mu * r_fm * an / kHbarC;
        const double kinetic_scale = kHbarC * kHbarC / (2.0 * mu * r_fm * r_fm);

        PotentialModel v;
        v.kind = PotentialKind::Dipole;
        v.family_name = "dipole-dimensionless";
        v.evaluate = [b](double chi) { return -2.0 * b * std::cos(chi) / std::sin(chi); };

        SpectralProblem prob;
        prob.potential = v;
        prob.grid_points = grid_points;
        SpectrumResult res = solve(prob, count);

        for (int K = 0; K < count; ++K) {
            CurvedVsFlatRow row;
            row.r_fm = r_fm;
            row.K = K;
            row.e_solver_mev = kinetic_scale * res.eigenvalues[K];
            row.e_coulomb_mev = -ry / ((K + 1.0) * (K + 1.0));
            row.gap_mev = row.e_solver_mev - row.e_coulomb_mev;
            row.gap_formula_mev = ry * std::pow(a0 / r_fm, 2) * (K + 1.0) * (K + 1.0);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace s3pot
