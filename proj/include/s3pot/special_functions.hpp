#ifndef S3POT_SPECIAL_FUNCTIONS_HPP
#define S3POT_SPECIAL_FUNCTIONS_HPP

#include <Eigen/Core>
#include <cmath>
#include <span>
#include <stdexcept>

#include "s3pot/constants.hpp"

namespace s3pot {

// Gegenbauer G_n^alpha(x) by the standard three-term recurrence
//   G_0 = 1,  G_1 = 2 alpha x,  n G_n = 2x(n+alpha-1) G_{n-1} - (n+2alpha-2) G_{n-2}.
template <typename Scalar>
Scalar gegenbauer_recurrence(int n, Scalar alpha, Scalar x) {
    if (n < 0) throw std::invalid_argument("gegenbauer: degree must be non-negative");
    Scalar gm2 = Scalar(1);
    if (n == 0) return gm2;
    Scalar gm1 = Scalar(2) * alpha * x;
    if (n == 1) return gm1;
    Scalar g = Scalar(0);
    for (int m = 2; m <= n; ++m) {
        g = (Scalar(2) * x * (Scalar(m) + alpha - Scalar(1)) * gm1 -
             (Scalar(m) + Scalar(2) * alpha - Scalar(2)) * gm2) /
            Scalar(m);
        gm2 = gm1;
        gm1 = g;
    }
    return g;
}

struct GegenbauerParams {
    int n;         // degree >= 0
    double alpha;  // > -1/2
    double x;      // in [-1, 1]
};

double gegenbauer(const GegenbauerParams& p);

// arccot on the branch (0, pi), matching z = cot(chi) with chi in (0, pi).
inline double arccot(double z) { return constants::pi / 2.0 - std::atan(z); }

// Romanovski polynomial R_n^{alpha,beta} from the Rodrigues construction on the weight
//   w(z) = (1+z^2)^{beta-1} exp(-alpha arccot z),
//   R_n  = w^{-1} d^n/dz^n [ (1+z^2)^n w ].
// All weight factors cancel algebraically; the coefficient recursion below is the
// expanded form (P_0 = 1, P_{j+1} = (1+z^2) P_j' + (alpha + 2(n+beta-1-j) z) P_j),
// so the result is a plain degree-n polynomial. Normalization: R_0 = 1, prefactor 1.
Eigen::VectorXd romanovski_coefficients(int n, double alpha, double beta);

struct RomanovskiParams {
    int n;
    double alpha;
    double beta;
    double z;
};

double romanovski(const RomanovskiParams& p);

// Horner evaluation; coefficients in ascending powers.
double polyval(const Eigen::VectorXd& coeffs, double x);
Eigen::VectorXd poly_derivative(const Eigen::VectorXd& coeffs);

// Quasi-radial part of the ultra-spherical harmonics,
//   S_{K l}(chi) = sin^l(chi) G_{K-l}^{l+1}(cos chi).
struct QuasiRadialState {
    int K;
    int ell;     // 0 <= ell <= K
    double chi;  // in (0, pi)
};

double quasi_radial(const QuasiRadialState& s);

// max over the grid of |(d/dchi - K cot chi) S_KK(chi)|, with the derivative of
// sin^K chi taken analytically. Identically zero up to rounding.
double gradient_annihilation_residual(int K, std::span<const double> chi_grid);

}  // namespace s3pot

#endif
