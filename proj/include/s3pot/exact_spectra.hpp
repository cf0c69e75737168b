#ifndef S3POT_EXACT_SPECTRA_HPP
#define S3POT_EXACT_SPECTRA_HPP

#include <cmath>

namespace s3pot::spectra {

// Bound levels of a(a-1)/sin^2 + 2b cot on (0,pi):  E_n = (a+n)^2 - b^2/(a+n)^2.
inline double trm_level(double a, double b, int n, double offset = 0.0) {
    const double q = a + n;
    return q * q - b * b / (q * q) + offset;
}

// Poschl-Teller I on (0,pi/2), a(a-1)/sin^2 + g(g-1)/cos^2:  E_n = (a+g+2n)^2.
inline double poschl_teller_level(double a, double g, int n, double offset = 0.0) {
    const double q = a + g + 2.0 * n;
    return q * q + offset;
}

// Scarf I written as [l(l+1)+a^2/4]csc^2 + (a/2)(2l+1) csc cot on (0,pi):
// E_n = (l+1+n)^2.
inline double scarf_level(int ell, int n, double offset = 0.0) {
    const double q = ell + 1.0 + n;
    return q * q + offset;
}

// Free motion on S^3 reduced to chi: E_K = (K+1)^2, each (K+1)^2-fold degenerate.
inline double free_level(int K) { return (K + 1.0) * (K + 1.0); }

}  // namespace s3pot::spectra

#endif
