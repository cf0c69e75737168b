#include "s3pot/special_functions.hpp"

namespace s3pot {

double gegenbauer(const GegenbauerParams& p) {
    return gegenbauer_recurrence<double>(p.n, p.alpha, p.x);
}

Eigen::VectorXd romanovski_coefficients(int n, double alpha, double beta) {
    if (n < 0) throw std::invalid_argument("romanovski: degree must be non-negative");
    Eigen::VectorXd p = Eigen::VectorXd::Zero(1);
    p[0] = 1.0;
    for (int j = 0; j < n; ++j) {
        const double m = n + beta - 1.0 - j;
        Eigen::VectorXd q = Eigen::VectorXd::Zero(p.size() + 1);
        for (int i = 1; i < p.size(); ++i) {
            q[i - 1] += i * p[i];  // p'
            q[i + 1] += i * p[i];  // z^2 p'
        }
        for (int i = 0; i < p.size(); ++i) {
            q[i] += alpha * p[i];
            q[i + 1] += 2.0 * m * p[i];
        }
        p = std::move(q);
    }
    return p;
}

double romanovski(const RomanovskiParams& p) {
    return polyval(romanovski_coefficients(p.n, p.alpha, p.beta), p.z);
}

double polyval(const Eigen::VectorXd& coeffs, double x) {
    double v = 0.0;
    for (Eigen::Index i = coeffs.size() - 1; i >= 0; --i) v = v * x + coeffs[i];
    return v;
}

Eigen::VectorXd poly_derivative(const Eigen::VectorXd& coeffs) {
    if (coeffs.size() <= 1) return Eigen::VectorXd::Zero(1);
    Eigen::VectorXd d(coeffs.size() - 1);
    for (Eigen::Index i = 1; i < coeffs.size(); ++i) d[i - 1] = i * coeffs[i];
    return d;
}

double quasi_radial(const QuasiRadialState& s) {
    if (s.ell < 0 || s.ell > s.K)
        throw std::invalid_argument("quasi_radial: need 0 <= ell <= K");
    if (!(s.chi > 0.0 && s.chi < constants::pi))
        throw std::invalid_argument("quasi_radial: chi must lie in (0, pi)");
    const double sn = std::sin(s.chi);
    return std::pow(sn, s.ell) * gegenbauer_recurrence<double>(s.K - s.ell, s.ell + 1.0, std::cos(s.chi));
}

double gradient_annihilation_residual(int K, std::span<const double> chi_grid) {
    if (K < 0) throw std::invalid_argument("gradient_annihilation_residual: K >= 0");
    double worst = 0.0;
    for (double chi : chi_grid) {
        double r;
        if (K == 0) {
            r = 0.0;  // S_00 = 1, both terms vanish
        } else {
            const double s = std::sin(chi), c = std::cos(chi);
            const double deriv = K * c * std::pow(s, K - 1);
            const double drift = K * (c / s) * std::pow(s, K);
            r = std::abs(deriv - drift);
        }
        worst = std::max(worst, r);
    }
    return worst;
}

}  // namespace s3pot
