#ifndef S3POT_DEFORMATION_HPP
#define S3POT_DEFORMATION_HPP

#include <Eigen/Core>
#include <functional>
#include <span>
#include <string>

#include "s3pot/constants.hpp"

namespace s3pot {

// Conformal scale profiles f(chi). The metric is rescaled by e^{-2f}; every profile
// induces a scalar potential through the master formula below. Named families:
//   Linear     f = a chi / 2                 -> trigonometric Rosen-Morse
//   LogCos     f = (a/2) ln cos(chi)         -> Poschl-Teller I      (domain (0, pi/2))
//   LogCscCot  f = (a/2) ln(csc - cot)       -> Scarf I
//   MicKepler  f = (b/2) ln sin + a chi / 2  -> MIC-Kepler (dyon-dyon)
//   Quadratic  f = a chi^2 / 2               -> quasi-exactly solvable
enum class ProfileFamily { Linear, LogCos, LogCscCot, MicKepler, Quadratic, Custom };

class DeformationProfile {
  public:
    static DeformationProfile linear(double alpha_k);
    static DeformationProfile log_cos(double alpha);
    static DeformationProfile log_csc_cot(double alpha);
    static DeformationProfile mic_kepler(double beta, double alpha_k);
    static DeformationProfile quadratic(double alpha_k);
    static DeformationProfile custom(std::function<double(double)> f,
                                     std::function<double(double)> f_prime,
                                     std::function<double(double)> f_double_prime,
                                     double domain_end = constants::pi);

    double f(double chi) const { return f_(chi); }
    double f_prime(double chi) const { return fp_(chi); }
    double f_double_prime(double chi) const { return fpp_(chi); }

    ProfileFamily family() const { return family_; }
    // pi, except pi/2 for LogCos where ln cos stops existing
    double domain_end() const { return domain_end_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

  private:
    DeformationProfile() = default;
    ProfileFamily family_ = ProfileFamily::Custom;
    double alpha_ = 0.0, beta_ = 0.0;
    double domain_end_ = constants::pi;
    std::function<double(double)> f_, fp_, fpp_;
};

// Spot-check that f_prime / f_double_prime are the derivatives of f (central differences).
double profile_derivative_defect(const DeformationProfile& p, std::span<const double> chis);

enum class PotentialKind { Induced, ClosedForm, Dipole, Centrifugal };

// Which cotangent weight the master formula carries: the (K+1) form is the one the
// derivation produces on the e^f S_KK space; (ell+1) is the optional generalization.
enum class CotWeight { KPlusOne, EllPlusOne };

struct PotentialModel {
    PotentialKind kind = PotentialKind::Induced;
    int ell = 0;
    int K = 0;
    std::function<double(double)> evaluate;  // additive_offset NOT included
    double additive_offset = 0.0;            // ground-state-to-zero shift conventions
    double domain_end = constants::pi;
    std::string family_name = "custom";
    double param_alpha = 0.0;  // family parameters as passed in
    double param_beta = 0.0;

    double value(double chi) const { return evaluate(chi); }
    double value_with_offset(double chi) const { return evaluate(chi) + additive_offset; }
};

// ell(ell+1)/sin^2; shared by every potential construction so the centrifugal term is
// bitwise identical across routes.
inline double centrifugal_term(int ell, double chi) {
    if (ell == 0) return 0.0;
    const double s = std::sin(chi);
    return ell * (ell + 1.0) / (s * s);
}

PotentialModel centrifugal_potential(int ell);

// Master formula:
//   V_I^(l)(chi) = l(l+1)/sin^2 + (f')^2 + f'' + 2 f' (K+1) cot(chi)
PotentialModel induced_potential(const DeformationProfile& profile, int ell, int K,
                                 CotWeight weight = CotWeight::KPlusOne);

// Scal* = 2 f' cot - (f')^2 + f'' + 1
double rescaled_curvature(const DeformationProfile& profile, double chi);

// Rewriting the master formula through Scal*:
//   V_I = l(l+1)/sin^2 + Scal* + 2(f')^2 - 1 + 2 f' K cot
// (the corrected identity; exact pointwise).
double master_formula_scal_identity_defect(const DeformationProfile& profile, int ell, int K,
                                           double chi);
// The literal two-line rewrite l(l+1)/sin^2 + Scal* + 2(f')^2 differs from the master
// formula by 1 - 2 K f' cot; reported as a diagnostic, not corrected silently.
double master_formula_literal_mismatch(const DeformationProfile& profile, int ell, int K,
                                       double chi);

struct ClosedFormParams {
    double alpha = 0.0;  // alpha_K for Linear/MicKepler/Quadratic, alpha for LogCos/LogCscCot
    double beta = 0.0;   // MicKepler only
};

// The literal closed forms with their additive constants carried in additive_offset:
//   Linear/tRM     l(l+1)csc^2 + a(K+1)cot + a^2/4                                (offset 0)
//   LogCos/PT      l(l+1)csc^2 + (a/2)(a/2-1)sec^2,          offset -(l+1+a/2)^2
//   LogCscCot/Sc   [l(l+1)+a^2/4]csc^2 + (a/2)(2l+1)csc cot, offset -(K+1)^2
//   MicKepler      [l(l+1)+mu^2]csc^2 + a(K+1+b/2)cot + a^2/4 - b^2/4 - b(K+1),
//                  mu^2 = (b/2)(b/2-1) + b(K+1),              offset -(K+1)^2
//   Quadratic/QES  l(l+1)csc^2 + 2a(K+1)chi cot + a^2 chi^2 + a                   (offset 0)
// PT and Scarf coincide with the (ell+1)-weight master formula, the rest with (K+1).
PotentialModel closed_form_potential(ProfileFamily family, const ClosedFormParams& params,
                                     int ell, int K);

// Color-electric charge dipole on S^3: two opposite charges at antipodal points.
//   Gamma_N = (aN/pi)(pi - chi) cot + lambda_N,  Gamma_S = -(aN/pi) chi cot + lambda_S,
//   V_CED = Gamma_S - Gamma_N = -aN cot + lambda.
class DipolePotential {
  public:
    DipolePotential(double alpha_s_nc, double lambda_n, double lambda_s, int ell);

    double gamma_north(double chi) const;
    double gamma_south(double chi) const;
    double v_ced(double chi) const { return gamma_south(chi) - gamma_north(chi); }
    double lambda() const { return lambda_s_ - lambda_n_; }
    double alpha_s_nc() const { return alpha_s_nc_; }

    // V_F = l(l+1)/sin^2 - aN cot + lambda
    PotentialModel model() const;

  private:
    double alpha_s_nc_, lambda_n_, lambda_s_;
    int ell_;
};

DipolePotential dipole_potential(double alpha_s_nc, double lambda_n, double lambda_s, int ell);

// Exact ground state U_KK = e^f sin^{K+1}(chi) with its L^2 norm over (0, domain_end).
class GroundState {
  public:
    GroundState(const DeformationProfile& profile, int K);

    double value(double chi) const;
    double norm() const { return norm_; }
    int K() const { return K_; }
    const DeformationProfile& profile() const { return profile_; }

    Eigen::ArrayXd sample(const Eigen::ArrayXd& chi) const;

  private:
    DeformationProfile profile_;
    int K_;
    double norm_;
};

GroundState ground_state(const DeformationProfile& profile, int K);

// max over the grid of |-U'' + V_I^(K) U - (K+1)^2 U| / max |U|, U'' analytic from f.
double ground_state_residual(const DeformationProfile& profile, int K,
                             std::span<const double> grid);

Eigen::ArrayXd sample_potential(const PotentialModel& v, const Eigen::ArrayXd& chi,
                                bool with_offset = false);

// Uniform grid of n points on (a + margin, b - margin), endpoints excluded.
Eigen::ArrayXd interior_grid(int n, double a, double b, double margin = 0.0);

double simpson(const std::function<double(double)>& f, double a, double b, int panels = 4096);

}  // namespace s3pot

#endif
