#ifndef S3POT_EIGENSOLVER_HPP
#define S3POT_EIGENSOLVER_HPP

#include <Eigen/Core>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "s3pot/deformation.hpp"

namespace s3pot {

enum class Discretization { FiniteDifference2, SineSpectral };

// -d^2/dchi^2 + V(chi) on (0, domain_end) with Dirichlet data. Nodes are strictly
// interior, so csc^2-type endpoint poles never enter the matrix; the ell-dependent
// boundary behavior is captured variationally.
struct SpectralProblem {
    PotentialModel potential;
    int grid_points = 2000;      // FD: interior nodes; sine: basis size
    double domain_margin = 0.0;  // shrink to (margin, domain_end - margin)
    Discretization discretization = Discretization::FiniteDifference2;
    int quadrature_cells = 8192;  // sine mode: fixed midpoint grid for potential integrals

    double domain_end() const { return potential.domain_end; }
};

struct TridiagonalOperator {
    Eigen::VectorXd nodes;  // chi_i = a + i h, i = 1..N
    Eigen::VectorXd diag;   // 2/h^2 + V(chi_i)
    Eigen::VectorXd off;    // -1/h^2
    double step = 0.0;
};

// FD mode assembly. Throws if the potential is non-finite at an interior node.
TridiagonalOperator discretize(const SpectralProblem& p);

// Sine mode: basis sqrt(2/L) sin(k pi (chi-a)/L); kinetic part diagonal (k pi/L)^2,
// potential part by a fixed midpoint quadrature, so the matrix for basis size N is the
// leading block of any larger one (Rayleigh-Ritz monotonicity holds by interlacing).
Eigen::MatrixXd discretize_sine(const SpectralProblem& p);

struct SpectrumResult {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // column k: L2-normalized on `nodes`
    Eigen::VectorXd nodes;
    double weight = 0.0;  // uniform quadrature weight per node
    int grid_points = 0;
    double convergence_order = std::numeric_limits<double>::quiet_NaN();
};

// Lowest `count` eigenpairs. FD: implicit-shift QL on the tridiagonal form for the
// eigenvalues, inverse iteration for the vectors; deterministic given inputs.
SpectrumResult solve(const SpectralProblem& p, int count);

// sum_i psi_k(chi_i)^2 w(chi_i) * weight
double expectation(const SpectrumResult& r, int k, const std::function<double(double)>& w);

// Interior sign changes of a grid-sampled function (entries below a relative floor are
// skipped). The k-th Dirichlet eigenvector has exactly k of them.
int sign_changes(const Eigen::VectorXd& v);

struct DegeneracyRow {
    int ell;
    int level;  // K - ell
    double eigenvalue;
    double target;  // (K+1)^2
    double rel_error;
};

// Free problem with centrifugal term l(l+1)/sin^2 for each l = 0..min(ell_max, K);
// reports the eigenvalue at index K-l, which must reproduce (K+1)^2 across l.
std::vector<DegeneracyRow> degeneracy_report(int ell_max, int K, int N);

struct ConvergenceStudy {
    double order = std::numeric_limits<double>::quiet_NaN();
    bool exact = false;     // all errors at rounding level (sine mode on V = 0)
    bool monotone = false;  // diagnostic only
    double limit = 0.0;     // Richardson extrapolation from the two finest grids
    Eigen::VectorXd grid_sizes;
    Eigen::VectorXd errors;
};

// Tracks the (count-1)-th eigenvalue over the grid sequence (each >= 2x the previous),
// fits log(error) vs log(h). FD contract: order ~ 2 for smooth-interior potentials.
ConvergenceStudy convergence_study(const SpectralProblem& p, int count,
                                   std::span<const int> grids);

}  // namespace s3pot

#endif
