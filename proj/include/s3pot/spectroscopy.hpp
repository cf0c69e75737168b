#ifndef S3POT_SPECTROSCOPY_HPP
#define S3POT_SPECTROSCOPY_HPP

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "s3pot/constants.hpp"

namespace s3pot {

// Units policy: energies in MeV, squared energies in GeV^2, lengths in fm.
struct PhysicalParams {
    double radius_fm = 0.58;
    double lambda_qcd_mev = 200.0;
    double alpha_s = 3.4048952;  // alpha_s N_c ~ 10.215, the meson-fit magnitude
    int n_c = 3;
    int n_f = 3;
    double mu_q_c2_mev = 0.0;  // <= 0: derived as Lambda/2

    double mu_q() const { return mu_q_c2_mev > 0.0 ? mu_q_c2_mev : 0.5 * lambda_qcd_mev; }
    bool mu_q_derived() const { return mu_q_c2_mev <= 0.0; }
    double alpha_s_nc() const { return alpha_s * n_c; }
    void validate() const;
};

// E^2_K = (hbar c / R)^2 (K+1)^2 - (alpha_s N_c Lambda)^2/4 / (K+1)^2, in GeV^2.
double energy_squared_gev2(int K, const PhysicalParams& p);

// E_K = hbar^2 c^2 (K+1)^2 / (2 mu R^2) - mu alpha_s^2 N_c^2 / (2 (K+1)^2), in MeV.
// Equals E^2_K / Lambda when mu = Lambda/2.
double energy_mev(int K, const PhysicalParams& p);

// Ry^s = mu alpha_s^2 N_c^2 / 2;  (a0)* = hbar c / (mu alpha_s N_c) = lambda_bar_c/(aN).
double strong_rydberg_mev(const PhysicalParams& p);
double bohr_radius_fm(const PhysicalParams& p);
double reduced_compton_fm(const PhysicalParams& p);

// Rydberg form of the same level: Ry^s [ -1/(K+1)^2 + ((a0)*/R)^2 (K+1)^2 ].
double energy_mev_rydberg_form(int K, const PhysicalParams& p);

// Cotangent magnitude in the 2G/R parameterization (G in MeV fm).
inline double cot_strength_mev(double g_mev_fm, double r_fm) { return 2.0 * g_mev_fm / r_fm; }

struct LevelRow {
    std::string label;
    double mass_mev = 0.0;
    int K = 0;
    double sigma_mev = -1.0;  // < 0: absent
};

struct LevelDataset {
    std::vector<LevelRow> rows;
    std::string source;
};

// header: label,mass_mev,K[,sigma_mev]; '#' comments
LevelDataset load_levels_csv(const std::filesystem::path& path);

// Predicted squared mass in GeV^2 for the 3-parameter meson-level model
//   M^2(K) = A (K+1)^2 - B/(K+1)^2 + C.
double predicted_m2_gev2(double A, double B, double C, int K);
double predicted_mass_mev(double A, double B, double C, int K);

enum class FitMode {
    // Fit A,B on squared-mass differences (the constant drops out), then C as the mean
    // offset; mirrors fitting the splittings first and shifting the positions after.
    Staged,
    // One joint 3-parameter normal-equations solve (full pivoting), sigma-weighted when
    // uncertainties are present.
    Joint
};

struct FitResult {
    double A = 0.0;  // GeV^2
    double B = 0.0;  // GeV^2
    double C = 0.0;  // GeV^2
    Eigen::VectorXd residuals;     // observed - predicted, GeV^2
    Eigen::Matrix3d covariance;    // from the joint design matrix
    FitMode mode = FitMode::Staged;
};

FitResult fit_levels(const LevelDataset& data, FitMode mode = FitMode::Staged);

// Noise-free masses from (A, B, C) at K = 0..k_max; optional relative Gaussian noise on
// M^2 with a fixed seed.
LevelDataset synthetic_levels(double A, double B, double C, int k_max,
                              double noise_frac = 0.0, std::uint64_t seed = 0);

}  // namespace s3pot

#endif
