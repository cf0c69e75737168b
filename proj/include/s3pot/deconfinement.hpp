#ifndef S3POT_DECONFINEMENT_HPP
#define S3POT_DECONFINEMENT_HPP

#include <span>
#include <vector>

#include "s3pot/spectroscopy.hpp"

namespace s3pot {

// One-loop running coupling with the compactification radius folded into the log,
//   alpha_s = 4 pi / (beta0 ln( Q^2 c^2/Lambda^2 + sqrt(1-rho^2) x + rho / x )),
// x = hbar^2 c^2 / (R^2 Lambda^2). rho = 0 restores the radius-only form.
struct CouplingParams {
    int n_f = 3;
    double q2_over_lambda2 = 0.0;  // Q^2 c^2 / Lambda^2, dimensionless
    double x = 1.0;                // hbar^2 c^2 / (R^2 Lambda^2)
    double rho = 0.0;              // in [0, 1]

    double beta0() const { return 11.0 - 2.0 * n_f / 3.0; }
};

struct CouplingValue {
    double value;        // NaN when non-perturbative
    bool perturbative;   // log argument > 1
    double log_argument;
};

CouplingValue alpha_s_compactified(const CouplingParams& p);

// x from a dimensional radius
double coupling_x(double r_fm, double lambda_mev);

// The plotted infrared curve, verbatim: 1.4 / ln(x + 1/x).
double figure2_curve(double x);

// T = Lambda^2 R / (N_c hbar c) and its exact inverse.
double temperature_from_radius(double r_fm, double lambda_mev, int n_c);
double radius_from_temperature(double t_mev, double lambda_mev, int n_c);

struct CollapseRow {
    double r_fm;
    double r_over_R;
    double v_curved_mev;  // -(hbar c aN / R) cot(r/R)
    double v_flat_mev;    // -hbar c aN / r
    double rel_deviation;
};

// Tabulates curved vs flat dipole potential on r in (0, r_max_fraction * R]. The
// deviation is 1 - t cot t = t^2/3 + O(t^4), t = r/R.
std::vector<CollapseRow> coulomb_collapse_report(double r_fm, double alpha_s_nc,
                                                 double r_max_fraction, int n_rows = 100);

struct RydbergLevel {
    int K;
    double bound_mev;       // -Ry/(K+1)^2
    double scattering_mev;  // Ry (a0 k)^2
    double total_mev;
};

// Large-R hydrogen-like limit; the ionization threshold is Ry itself.
std::vector<RydbergLevel> rydberg_limit_spectrum(std::span<const int> k_list, double ry_mev,
                                                 double a0_fm, double k_inv_fm);

struct CurvedVsFlatRow {
    double r_fm;
    int K;
    double e_solver_mev;
    double e_coulomb_mev;      // flat hydrogen-like level -Ry/(K+1)^2
    double gap_mev;            // e_solver - e_coulomb
    double gap_formula_mev;    // Ry (a0/R)^2 (K+1)^2
};

// Solves the dimensional cotangent problem numerically for each R and reports the gap
// to the flat Coulomb tower, which closes as 1/R^2.
std::vector<CurvedVsFlatRow> curved_vs_flat_spectrum(std::span<const double> r_fm_seq,
                                                     const PhysicalParams& params, int count,
                                                     int grid_points = 2000);

}  // namespace s3pot

#endif
