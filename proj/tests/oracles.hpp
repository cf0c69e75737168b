// Test-only oracles, kept independent of the library code paths they check.
#ifndef S3POT_TESTS_ORACLES_HPP
#define S3POT_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <numbers>

namespace oracles {

inline double int_pow(double x, int m) {
    double r = 1.0;
    for (int i = 0; i < m; ++i) r *= x;
    return r;
}

// Explicit hypergeometric sum for the Gegenbauer polynomial,
//   G_n^a(x) = sum_k (-1)^k Gamma(n-k+a) / (Gamma(a) k! (n-2k)!) (2x)^{n-2k}.
inline double gegenbauer_series(int n, double a, double x) {
    double total = 0.0;
    for (int k = 0; 2 * k <= n; ++k) {
        const double lg = std::lgamma(n - k + a) - std::lgamma(a) - std::lgamma(k + 1.0) -
                          std::lgamma(n - 2 * k + 1.0);
        const double term = std::exp(lg) * int_pow(2.0 * x, n - 2 * k);
        total += (k % 2 == 0) ? term : -term;
    }
    return total;
}

inline double arccot(double z) { return std::numbers::pi / 2.0 - std::atan(z); }

// Romanovski weight and the Rodrigues integrand (1+z^2)^n w(z)
inline double romanovski_weight(double a, double b, double z) {
    return std::pow(1.0 + z * z, b - 1.0) * std::exp(-a * arccot(z));
}

// n-th derivative of F at z by central differences with one Richardson step.
inline double nth_derivative(const std::function<double(double)>& f, int n, double z, double h) {
    std::function<double(double, double)> d = [&](double step, double at) -> double {
        if (n == 1) return (f(at + step) - f(at - step)) / (2.0 * step);
        if (n == 2) return (f(at + step) - 2.0 * f(at) + f(at - step)) / (step * step);
        if (n == 3)
            return (f(at + 2 * step) - 2.0 * f(at + step) + 2.0 * f(at - step) - f(at - 2 * step)) /
                   (2.0 * step * step * step);
        return 0.0;
    };
    const double coarse = d(h, z);
    const double fine = d(h / 2.0, z);
    return (4.0 * fine - coarse) / 3.0;  // kills the h^2 term
}

// Rodrigues formula evaluated numerically: w^{-1} d^n/dz^n [(1+z^2)^n w]
inline double romanovski_rodrigues_fd(int n, double a, double b, double z, double h = 1e-3) {
    auto f = [&](double t) { return int_pow(1.0 + t * t, n) * romanovski_weight(a, b, t); };
    if (n == 0) return 1.0;
    return nth_derivative(f, n, z, h) / romanovski_weight(a, b, z);
}

inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    if (panels % 2) ++panels;
    const double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// |a-b| on a mixed absolute/relative scale (absolute for O(1) magnitudes)
inline double mixed_deviation(double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::abs(a));
}

}  // namespace oracles

#endif
