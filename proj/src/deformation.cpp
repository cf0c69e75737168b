#include "s3pot/deformation.hpp"

#include <cmath>
#include <stdexcept>

namespace s3pot {

namespace {
constexpr double kPi = constants::pi;
}

DeformationProfile DeformationProfile::linear(double alpha_k) {
    DeformationProfile p;
    p.family_ = ProfileFamily::Linear;
    p.alpha_ = alpha_k;
    p.f_ = [alpha_k](double chi) { return 0.5 * alpha_k * chi; };
    p.fp_ = [alpha_k](double) { return 0.5 * alpha_k; };
    p.fpp_ = [](double) { return 0.0; };
    return p;
}

DeformationProfile DeformationProfile::log_cos(double alpha) {
    DeformationProfile p;
    p.family_ = ProfileFamily::LogCos;
    p.alpha_ = alpha;
    p.domain_end_ = kPi / 2.0;
    p.f_ = [alpha](double chi) { return 0.5 * alpha * std::log(std::cos(chi)); };
    p.fp_ = [alpha](double chi) { return -0.5 * alpha * std::tan(chi); };
    p.fpp_ = [alpha](double chi) {
        const double c = std::cos(chi);
        return -0.5 * alpha / (c * c);
    };
    return p;
}

DeformationProfile DeformationProfile::log_csc_cot(double alpha) {
    DeformationProfile p;
    p.family_ = ProfileFamily::LogCscCot;
    p.alpha_ = alpha;
    // ln(csc - cot) = ln tan(chi/2); its derivative is +csc, matching f' below
    p.f_ = [alpha](double chi) { return 0.5 * alpha * std::log(std::tan(0.5 * chi)); };
    p.fp_ = [alpha](double chi) { return 0.5 * alpha / std::sin(chi); };
    p.fpp_ = [alpha](double chi) {
        const double s = std::sin(chi);
        return -0.5 * alpha * std::cos(chi) / (s * s);
    };
    return p;
}

DeformationProfile DeformationProfile::mic_kepler(double beta, double alpha_k) {
    DeformationProfile p;
    p.family_ = ProfileFamily::MicKepler;
    p.alpha_ = alpha_k;
    p.beta_ = beta;
    p.f_ = [beta, alpha_k](double chi) {
        return 0.5 * beta * std::log(std::sin(chi)) + 0.5 * alpha_k * chi;
    };
    p.fp_ = [beta, alpha_k](double chi) {
        return 0.5 * beta * std::cos(chi) / std::sin(chi) + 0.5 * alpha_k;
    };
    p.fpp_ = [beta](double chi) {
        const double s = std::sin(chi);
        return -0.5 * beta / (s * s);
    };
    return p;
}

DeformationProfile DeformationProfile::quadratic(double alpha_k) {
    DeformationProfile p;
    p.family_ = ProfileFamily::Quadratic;
    p.alpha_ = alpha_k;
    p.f_ = [alpha_k](double chi) { return 0.5 * alpha_k * chi * chi; };
    p.fp_ = [alpha_k](double chi) { return alpha_k * chi; };
    p.fpp_ = [alpha_k](double) { return alpha_k; };
    return p;
}

DeformationProfile DeformationProfile::custom(std::function<double(double)> f,
                                              std::function<double(double)> f_prime,
                                              std::function<double(double)> f_double_prime,
                                              double domain_end) {
    DeformationProfile p;
    p.family_ = ProfileFamily::Custom;
    p.domain_end_ = domain_end;
    p.f_ = std::move(f);
    p.fp_ = std::move(f_prime);
    p.fpp_ = std::move(f_double_prime);
    return p;
}

double profile_derivative_defect(const DeformationProfile& p, std::span<const double> chis) {
    double worst = 0.0;
    const double h = 1e-5;
    for (double chi : chis) {
        const double fp = p.f_prime(chi);
        const double fpp = p.f_double_prime(chi);
        const double d1 = (p.f(chi + h) - p.f(chi - h)) / (2.0 * h);
        const double d2 = (p.f_prime(chi + h) - p.f_prime(chi - h)) / (2.0 * h);
        worst = std::max(worst, std::abs(d1 - fp) / std::max(1.0, std::abs(fp)));
        worst = std::max(worst, std::abs(d2 - fpp) / std::max(1.0, std::abs(fpp)));
    }
    return worst;
}

PotentialModel centrifugal_potential(int ell) {
    if (ell < 0) throw std::invalid_argument("centrifugal_potential: ell >= 0");
    PotentialModel v;
    v.kind = PotentialKind::Centrifugal;
    v.ell = ell;
    v.K = ell;
    v.family_name = "free";
    v.evaluate = [ell](double chi) { return centrifugal_term(ell, chi); };
    return v;
}

PotentialModel induced_potential(const DeformationProfile& profile, int ell, int K,
                                 CotWeight weight) {
    if (ell < 0 || ell > K) throw std::invalid_argument("induced_potential: need 0 <= ell <= K");
    PotentialModel v;
    v.kind = PotentialKind::Induced;
    v.ell = ell;
    v.K = K;
    v.domain_end = profile.domain_end();
    v.family_name = "induced";
    v.param_alpha = profile.alpha();
    v.param_beta = profile.beta();
    const double wcoef = (weight == CotWeight::KPlusOne) ? (K + 1.0) : (ell + 1.0);
    v.evaluate = [profile, ell, wcoef](double chi) {
        const double fp = profile.f_prime(chi);
        const double fpp = profile.f_double_prime(chi);
        const double cot = std::cos(chi) / std::sin(chi);
        return centrifugal_term(ell, chi) + fp * fp + fpp + 2.0 * fp * wcoef * cot;
    };
    return v;
}

double rescaled_curvature(const DeformationProfile& profile, double chi) {
    const double fp = profile.f_prime(chi);
    const double fpp = profile.f_double_prime(chi);
    const double cot = std::cos(chi) / std::sin(chi);
    return 2.0 * fp * cot - fp * fp + fpp + 1.0;
}

double master_formula_scal_identity_defect(const DeformationProfile& profile, int ell, int K,
                                           double chi) {
    const double fp = profile.f_prime(chi);
    const double cot = std::cos(chi) / std::sin(chi);
    const double direct = induced_potential(profile, ell, K).evaluate(chi);
    const double via_scal = centrifugal_term(ell, chi) + rescaled_curvature(profile, chi) +
                            2.0 * fp * fp - 1.0 + 2.0 * fp * (K + 1.0) * cot - 2.0 * fp * cot;
    return std::abs(direct - via_scal) / std::max(1.0, std::abs(direct));
}

double master_formula_literal_mismatch(const DeformationProfile& profile, int ell, int K,
                                       double chi) {
    const double fp = profile.f_prime(chi);
    const double direct = induced_potential(profile, ell, K).evaluate(chi);
    const double literal =
        centrifugal_term(ell, chi) + rescaled_curvature(profile, chi) + 2.0 * fp * fp;
    return literal - direct;  // equals 1 - 2 K f' cot
}

PotentialModel closed_form_potential(ProfileFamily family, const ClosedFormParams& params,
                                     int ell, int K) {
    if (ell < 0 || ell > K)
        throw std::invalid_argument("closed_form_potential: need 0 <= ell <= K");
    PotentialModel v;
    v.kind = PotentialKind::ClosedForm;
    v.ell = ell;
    v.K = K;
    v.param_alpha = params.alpha;
    v.param_beta = params.beta;
    const double a = params.alpha;
    const double b = params.beta;
    switch (family) {
        case ProfileFamily::Linear: {
            v.family_name = "trm";
            v.evaluate = [a, ell, K](double chi) {
                const double cot = std::cos(chi) / std::sin(chi);
                return centrifugal_term(ell, chi) + a * (K + 1.0) * cot + 0.25 * a * a;
            };
            break;
        }
        case ProfileFamily::LogCos: {
            v.family_name = "poschl-teller";
            v.domain_end = kPi / 2.0;
            v.additive_offset = -(ell + 1.0 + 0.5 * a) * (ell + 1.0 + 0.5 * a);
            v.evaluate = [a, ell](double chi) {
                const double c = std::cos(chi);
                return centrifugal_term(ell, chi) + 0.5 * a * (0.5 * a - 1.0) / (c * c);
            };
            break;
        }
        case ProfileFamily::LogCscCot: {
            v.family_name = "scarf";
            v.additive_offset = -(K + 1.0) * (K + 1.0);
            v.evaluate = [a, ell](double chi) {
                const double s = std::sin(chi);
                return (ell * (ell + 1.0) + 0.25 * a * a) / (s * s) +
                       0.5 * a * (2.0 * ell + 1.0) * std::cos(chi) / (s * s);
            };
            break;
        }
        case ProfileFamily::MicKepler: {
            v.family_name = "mic-kepler";
            v.additive_offset = -(K + 1.0) * (K + 1.0);
            // mu^2 = (b/2)(b/2-1) + b(K+1); cot carries a(K+1+b/2), the (f')^2 cross term
            const double mu2 = 0.5 * b * (0.5 * b - 1.0) + b * (K + 1.0);
            v.evaluate = [a, b, mu2, ell, K](double chi) {
                const double s = std::sin(chi);
                const double cot = std::cos(chi) / s;
                return (ell * (ell + 1.0) + mu2) / (s * s) + a * (K + 1.0 + 0.5 * b) * cot +
                       0.25 * a * a - 0.25 * b * b - b * (K + 1.0);
            };
            break;
        }
        case ProfileFamily::Quadratic: {
            v.family_name = "qes";
            v.evaluate = [a, ell, K](double chi) {
                const double cot = std::cos(chi) / std::sin(chi);
                return centrifugal_term(ell, chi) + 2.0 * a * (K + 1.0) * chi * cot +
                       a * a * chi * chi + a;
            };
            break;
        }
        default:
            throw std::invalid_argument("closed_form_potential: unknown family");
    }
    return v;
}

DipolePotential::DipolePotential(double alpha_s_nc, double lambda_n, double lambda_s, int ell)
    : alpha_s_nc_(alpha_s_nc), lambda_n_(lambda_n), lambda_s_(lambda_s), ell_(ell) {
    if (alpha_s_nc < 0.0) throw std::invalid_argument("dipole_potential: alpha_s N_c >= 0");
    if (ell < 0) throw std::invalid_argument("dipole_potential: ell >= 0");
}

double DipolePotential::gamma_north(double chi) const {
    const double cot = std::cos(chi) / std::sin(chi);
    return alpha_s_nc_ / kPi * (kPi - chi) * cot + lambda_n_;
}

double DipolePotential::gamma_south(double chi) const {
    const double cot = std::cos(chi) / std::sin(chi);
    return -alpha_s_nc_ / kPi * chi * cot + lambda_s_;
}

PotentialModel DipolePotential::model() const {
    PotentialModel v;
    v.kind = PotentialKind::Dipole;
    v.ell = ell_;
    v.K = ell_;
    v.family_name = "dipole";
    v.param_alpha = alpha_s_nc_;
    v.param_beta = lambda();
    const double an = alpha_s_nc_;
    const double lam = lambda();
    const int ell = ell_;
    v.evaluate = [an, lam, ell](double chi) {
        const double cot = std::cos(chi) / std::sin(chi);
        return centrifugal_term(ell, chi) - an * cot + lam;
    };
    return v;
}

DipolePotential dipole_potential(double alpha_s_nc, double lambda_n, double lambda_s, int ell) {
    return DipolePotential(alpha_s_nc, lambda_n, lambda_s, ell);
}

GroundState::GroundState(const DeformationProfile& profile, int K)
    : profile_(profile), K_(K) {
    if (K < 0) throw std::invalid_argument("ground_state: K >= 0");
    const double L = profile_.domain_end();
    const double n2 = simpson([this](double chi) { const double u = value(chi); return u * u; },
                              0.0, L, 4096);
    if (!(n2 > 0.0) || !std::isfinite(n2))
        throw std::runtime_error("ground_state: norm not finite/positive");
    norm_ = std::sqrt(n2);
}

double GroundState::value(double chi) const {
    if (chi <= 0.0 || chi >= profile_.domain_end()) return 0.0;
    // log form keeps e^f * sin^{K+1} well-defined when f itself diverges at an endpoint
    return std::exp(profile_.f(chi) + (K_ + 1.0) * std::log(std::sin(chi)));
}

Eigen::ArrayXd GroundState::sample(const Eigen::ArrayXd& chi) const {
    Eigen::ArrayXd out(chi.size());
    for (Eigen::Index i = 0; i < chi.size(); ++i) out[i] = value(chi[i]);
    return out;
}

GroundState ground_state(const DeformationProfile& profile, int K) {
    return GroundState(profile, K);
}

double ground_state_residual(const DeformationProfile& profile, int K,
                             std::span<const double> grid) {
    const PotentialModel v = induced_potential(profile, K, K);
    const GroundState u(profile, K);
    const double e = (K + 1.0) * (K + 1.0);
    double worst = 0.0, umax = 0.0;
    for (double chi : grid) {
        const double uval = u.value(chi);
        const double s = std::sin(chi);
        const double cot = std::cos(chi) / s;
        const double fp = profile.f_prime(chi);
        const double fpp = profile.f_double_prime(chi);
        const double g = fp + (K + 1.0) * cot;
        const double upp_over_u = g * g + fpp - (K + 1.0) / (s * s);
        const double residual = (-upp_over_u + v.evaluate(chi) - e) * uval;
        worst = std::max(worst, std::abs(residual));
        umax = std::max(umax, std::abs(uval));
    }
    return umax > 0.0 ? worst / umax : worst;
}

Eigen::ArrayXd sample_potential(const PotentialModel& v, const Eigen::ArrayXd& chi,
                                bool with_offset) {
    Eigen::ArrayXd out(chi.size());
    for (Eigen::Index i = 0; i < chi.size(); ++i)
        out[i] = with_offset ? v.value_with_offset(chi[i]) : v.evaluate(chi[i]);
    return out;
}

Eigen::ArrayXd interior_grid(int n, double a, double b, double margin) {
    const double lo = a + margin, hi = b - margin;
    if (!(hi > lo) || n < 2) throw std::invalid_argument("interior_grid: empty interval");
    return Eigen::ArrayXd::LinSpaced(n, lo, hi);
}

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    if (panels % 2 != 0) ++panels;
    const double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace s3pot
