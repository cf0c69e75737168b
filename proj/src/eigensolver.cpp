#include "s3pot/eigensolver.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace s3pot {

namespace {

// (T - sigma I) x = rhs by Gaussian elimination with partial pivoting (fill-in on a
// second superdiagonal). Near-singular pivots are replaced by a tiny value, which is
// exactly what inverse iteration wants.
void shifted_tridiagonal_solve(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                               double sigma, Eigen::VectorXd& x) {
    const Eigen::Index n = diag.size();
    Eigen::VectorXd d = diag.array() - sigma;
    Eigen::VectorXd dl = off;  // sub
    Eigen::VectorXd du = off;  // super
    Eigen::VectorXd du2 = Eigen::VectorXd::Zero(n);
    const double tiny = std::numeric_limits<double>::epsilon() *
                        (diag.cwiseAbs().maxCoeff() + 2.0 * off.cwiseAbs().maxCoeff() + 1.0);

    for (Eigen::Index i = 0; i < n - 1; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (std::abs(d[i]) < tiny) d[i] = (d[i] < 0 ? -tiny : tiny);
            const double m = dl[i] / d[i];
            d[i + 1] -= m * du[i];
            x[i + 1] -= m * x[i];
            dl[i] = 0.0;  // no swap; du2 stays 0
        } else {
            // swap rows i, i+1
            const double m = d[i] / dl[i];
            d[i] = dl[i];
            double tmp = d[i + 1];
            d[i + 1] = du[i] - m * tmp;
            if (i + 1 < n - 1) {
                du2[i] = du[i + 1];
                du[i + 1] = -m * du[i + 1];
            }
            du[i] = tmp;
            std::swap(x[i], x[i + 1]);
            x[i + 1] -= m * x[i];
        }
    }
    if (std::abs(d[n - 1]) < tiny) d[n - 1] = (d[n - 1] < 0 ? -tiny : tiny);

    // back substitution
    x[n - 1] /= d[n - 1];
    if (n >= 2) x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    for (Eigen::Index i = n - 3; i >= 0; --i)
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
}

Eigen::VectorXd tridiagonal_apply(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                                  const Eigen::VectorXd& v) {
    const Eigen::Index n = diag.size();
    Eigen::VectorXd y = diag.cwiseProduct(v);
    y.head(n - 1) += off.cwiseProduct(v.tail(n - 1));
    y.tail(n - 1) += off.cwiseProduct(v.head(n - 1));
    return y;
}

void fix_sign(Eigen::VectorXd& v) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
}

}  // namespace

TridiagonalOperator discretize(const SpectralProblem& p) {
    if (p.grid_points < 64) throw std::invalid_argument("discretize: N >= 64 required");
    const double a = p.domain_margin;
    const double b = p.domain_end() - p.domain_margin;
    if (!(b > a)) throw std::invalid_argument("discretize: empty domain");
    const int N = p.grid_points;
    const double h = (b - a) / (N + 1);
    TridiagonalOperator T;
    T.step = h;
    T.nodes.resize(N);
    T.diag.resize(N);
    const double kin = 2.0 / (h * h);
    for (int i = 0; i < N; ++i) {
        const double chi = a + (i + 1) * h;
        const double v = p.potential.value_with_offset(chi);
        if (!std::isfinite(v))
            throw std::runtime_error("discretize: potential not finite at interior node");
        T.nodes[i] = chi;
        T.diag[i] = kin + v;
    }
    T.off = Eigen::VectorXd::Constant(N - 1, -1.0 / (h * h));
    return T;
}

Eigen::MatrixXd discretize_sine(const SpectralProblem& p) {
    if (p.grid_points < 2) throw std::invalid_argument("discretize_sine: N >= 2");
    const double a = p.domain_margin;
    const double b = p.domain_end() - p.domain_margin;
    const double L = b - a;
    const int N = p.grid_points;
    const int M = p.quadrature_cells;
    const double tau = L / M;

    // S(k,m) = phi_k(chi_m) sqrt(tau); midpoint nodes avoid the endpoint poles
    Eigen::MatrixXd S(N, M);
    Eigen::VectorXd vpot(M);
    for (int m = 0; m < M; ++m) {
        const double chi = a + (m + 0.5) * tau;
        const double v = p.potential.value_with_offset(chi);
        if (!std::isfinite(v))
            throw std::runtime_error("discretize_sine: potential not finite at quadrature node");
        vpot[m] = v;
        for (int k = 0; k < N; ++k)
            S(k, m) = std::sqrt(2.0 / L) * std::sin((k + 1) * constants::pi * (chi - a) / L) *
                      std::sqrt(tau);
    }
    Eigen::MatrixXd H = S * vpot.asDiagonal() * S.transpose();
    for (int k = 0; k < N; ++k) {
        const double kk = (k + 1) * constants::pi / L;
        H(k, k) += kk * kk;
    }
    return 0.5 * (H + H.transpose());
}

SpectrumResult solve(const SpectralProblem& p, int count) {
    if (count < 1) throw std::invalid_argument("solve: count >= 1");
    SpectrumResult r;
    r.grid_points = p.grid_points;

    if (p.discretization == Discretization::FiniteDifference2) {
        if (count > p.grid_points / 4)
            throw std::invalid_argument("solve: count must be <= N/4");
        TridiagonalOperator T = discretize(p);
        const Eigen::Index n = T.diag.size();

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(T.diag, T.off, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("solve: tridiagonal QL iteration failed");
        r.eigenvalues = es.eigenvalues().head(count);

        const double scale =
            T.diag.cwiseAbs().maxCoeff() + 2.0 * T.off.cwiseAbs().maxCoeff();
        Eigen::MatrixXd vecs(n, count);  // 2-norm normalized while iterating
        for (int k = 0; k < count; ++k) {
            const double lam = r.eigenvalues[k];
            // deterministic start; the sine shape is never orthogonal to low modes
            Eigen::VectorXd v(n);
            for (Eigen::Index i = 0; i < n; ++i)
                v[i] = std::sin((k + 1) * constants::pi * (i + 1) / double(n + 1));
            v.normalize();
            double resid = std::numeric_limits<double>::max();
            const int cap = 8;
            for (int iter = 0; iter < cap; ++iter) {
                shifted_tridiagonal_solve(T.diag, T.off, lam, v);
                v.normalize();
                // project out converged vectors of nearly equal eigenvalue
                for (int j = 0; j < k; ++j) {
                    if (std::abs(r.eigenvalues[j] - lam) < 1e-6 * std::max(1.0, std::abs(lam))) {
                        v -= vecs.col(j).dot(v) * vecs.col(j);
                        v.normalize();
                    }
                }
                resid = (tridiagonal_apply(T.diag, T.off, v) - lam * v).norm();
                if (resid < 1e-10 * scale) break;
            }
            if (resid > 1e-7 * scale)
                throw std::runtime_error("solve: inverse iteration did not converge at index " +
                                         std::to_string(k));
            fix_sign(v);
            vecs.col(k) = v;
        }
        r.eigenvectors = vecs / std::sqrt(T.step);
        r.nodes = T.nodes;
        r.weight = T.step;
        return r;
    }

    // sine-spectral
    Eigen::MatrixXd H = discretize_sine(p);
    if (count > H.rows()) throw std::invalid_argument("solve: count exceeds basis size");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success) throw std::runtime_error("solve: dense eigensolver failed");
    r.eigenvalues = es.eigenvalues().head(count);

    const double a = p.domain_margin;
    const double b = p.domain_end() - p.domain_margin;
    const double L = b - a;
    const int P = 2001;  // output sampling; trapezoid on it is exact for these products
    const double h = L / (P + 1);
    r.nodes.resize(P);
    Eigen::MatrixXd synth(P, H.rows());
    for (int i = 0; i < P; ++i) {
        const double chi = a + (i + 1) * h;
        r.nodes[i] = chi;
        for (int k = 0; k < H.rows(); ++k)
            synth(i, k) = std::sqrt(2.0 / L) * std::sin((k + 1) * constants::pi * (chi - a) / L);
    }
    r.eigenvectors = synth * es.eigenvectors().leftCols(count);
    for (int k = 0; k < count; ++k) {
        Eigen::VectorXd col = r.eigenvectors.col(k);
        fix_sign(col);
        r.eigenvectors.col(k) = col;
    }
    r.weight = h;
    return r;
}

double expectation(const SpectrumResult& r, int k, const std::function<double(double)>& w) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < r.nodes.size(); ++i) {
        const double psi = r.eigenvectors(i, k);
        acc += psi * psi * w(r.nodes[i]);
    }
    return acc * r.weight;
}

int sign_changes(const Eigen::VectorXd& v) {
    const double floor = 1e-8 * v.cwiseAbs().maxCoeff();
    int flips = 0;
    int last = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) <= floor) continue;
        const int s = v[i] > 0 ? 1 : -1;
        if (last != 0 && s != last) ++flips;
        last = s;
    }
    return flips;
}

std::vector<DegeneracyRow> degeneracy_report(int ell_max, int K, int N) {
    std::vector<DegeneracyRow> rows;
    const double target = (K + 1.0) * (K + 1.0);
    for (int ell = 0; ell <= std::min(ell_max, K); ++ell) {
        SpectralProblem p;
        p.potential = centrifugal_potential(ell);
        p.grid_points = N;
        SpectrumResult r = solve(p, K - ell + 1);
        const double e = r.eigenvalues[K - ell];
        rows.push_back({ell, K - ell, e, target, std::abs(e - target) / target});
    }
    return rows;
}

ConvergenceStudy convergence_study(const SpectralProblem& p, int count,
                                   std::span<const int> grids) {
    if (grids.size() < 3)
        throw std::invalid_argument("convergence_study: need at least 3 grid sizes");
    for (size_t i = 1; i < grids.size(); ++i)
        if (grids[i] < 2 * grids[i - 1])
            throw std::invalid_argument("convergence_study: each grid must be >= 2x the previous");

    const int idx = count - 1;
    const double L = p.domain_end() - 2.0 * p.domain_margin;
    ConvergenceStudy cs;
    cs.grid_sizes.resize(grids.size());
    Eigen::VectorXd vals(grids.size());
    for (size_t i = 0; i < grids.size(); ++i) {
        SpectralProblem q = p;
        q.grid_points = grids[i];
        vals[i] = solve(q, count).eigenvalues[idx];
        cs.grid_sizes[i] = grids[i];
    }
    const Eigen::Index n = vals.size();
    // h^2 Richardson from the two finest grids
    cs.limit = (4.0 * vals[n - 1] - vals[n - 2]) / 3.0;
    cs.errors = (vals.array() - cs.limit).abs();

    const double floor = 1e-12 * std::max(1.0, std::abs(cs.limit));
    if ((cs.errors.array() < floor).all()) {
        cs.exact = true;
        cs.monotone = true;
        cs.order = std::numeric_limits<double>::infinity();
        return cs;
    }
    cs.monotone = true;
    for (Eigen::Index i = 1; i < n; ++i)
        if (cs.errors[i] >= cs.errors[i - 1]) cs.monotone = false;

    // least-squares slope of log(err) vs log(h), skipping rounding-level points
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (cs.errors[i] < floor) continue;
        const double lx = std::log(L / (cs.grid_sizes[i] + 1.0));
        const double ly = std::log(cs.errors[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m >= 2) cs.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return cs;
}

}  // namespace s3pot
