#include "s3pot/spectroscopy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace s3pot {

namespace {
constexpr double kHbarC = constants::hbar_c_mev_fm;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// joint design row for K: [x, -1/x, 1] with x = (K+1)^2
Eigen::RowVector3d design_row(int K) {
    const double x = (K + 1.0) * (K + 1.0);
    return {x, -1.0 / x, 1.0};
}
}  // namespace

void PhysicalParams::validate() const {
    if (!(radius_fm > 0.0)) throw std::invalid_argument("PhysicalParams: R > 0 required");
    if (!(lambda_qcd_mev > 0.0))
        throw std::invalid_argument("PhysicalParams: Lambda_QCD > 0 required");
    if (n_c < 1) throw std::invalid_argument("PhysicalParams: N_c >= 1 required");
}

double energy_squared_gev2(int K, const PhysicalParams& p) {
    if (K < 0) throw std::invalid_argument("energy_squared: K >= 0");
    const double k1 = (K + 1.0) * (K + 1.0);
    const double kinetic = std::pow(kHbarC / p.radius_fm, 2) * k1;
    const double coul = std::pow(p.alpha_s_nc() * p.lambda_qcd_mev, 2) / 4.0 / k1;
    return (kinetic - coul) * constants::mev2_to_gev2;
}

double energy_mev(int K, const PhysicalParams& p) {
    if (K < 0) throw std::invalid_argument("energy_mev: K >= 0");
    const double mu = p.mu_q();
    if (!(mu > 0.0)) throw std::invalid_argument("energy_mev: mu_q c^2 > 0 required");
    const double k1 = (K + 1.0) * (K + 1.0);
    return kHbarC * kHbarC * k1 / (2.0 * mu * p.radius_fm * p.radius_fm) -
           mu * std::pow(p.alpha_s_nc(), 2) / (2.0 * k1);
}

double strong_rydberg_mev(const PhysicalParams& p) {
    return 0.5 * p.mu_q() * std::pow(p.alpha_s_nc(), 2);
}

double reduced_compton_fm(const PhysicalParams& p) { return kHbarC / p.mu_q(); }

double bohr_radius_fm(const PhysicalParams& p) {
    return reduced_compton_fm(p) / p.alpha_s_nc();
}

double energy_mev_rydberg_form(int K, const PhysicalParams& p) {
    const double k1 = (K + 1.0) * (K + 1.0);
    const double ratio = bohr_radius_fm(p) / p.radius_fm;
    return strong_rydberg_mev(p) * (-1.0 / k1 + ratio * ratio * k1);
}

LevelDataset load_levels_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_levels_csv: cannot open " + path.string());
    LevelDataset ds;
    ds.source = path.string();
    std::string line;
    bool first_data = true;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) fields.push_back(trim(tok));
        if (fields.size() < 3)
            throw std::runtime_error("load_levels_csv: expected label,mass_mev,K[,sigma_mev]");

        if (first_data) {
            first_data = false;
            // header row: second field is not a number
            char* end = nullptr;
            std::strtod(fields[1].c_str(), &end);
            if (end == fields[1].c_str()) continue;
        }
        LevelRow row;
        row.label = fields[0];
        row.mass_mev = std::stod(fields[1]);
        row.K = std::stoi(fields[2]);
        if (fields.size() >= 4 && !fields[3].empty()) row.sigma_mev = std::stod(fields[3]);
        if (!(row.mass_mev > 0.0))
            throw std::runtime_error("load_levels_csv: non-positive mass in row '" + row.label + "'");
        if (row.K < 0)
            throw std::runtime_error("load_levels_csv: negative K in row '" + row.label + "'");
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

double predicted_m2_gev2(double A, double B, double C, int K) {
    const double x = (K + 1.0) * (K + 1.0);
    return A * x - B / x + C;
}

double predicted_mass_mev(double A, double B, double C, int K) {
    return std::sqrt(predicted_m2_gev2(A, B, C, K)) * 1000.0;
}

FitResult fit_levels(const LevelDataset& data, FitMode mode) {
    const int n = static_cast<int>(data.rows.size());
    if (n < 3) throw std::invalid_argument("fit_levels: at least 3 rows required");

    std::set<int> distinct;
    for (const auto& r : data.rows) distinct.insert(r.K);
    if (distinct.size() < 3)
        throw std::invalid_argument("fit_levels: rank-deficient design, only " +
                                    std::to_string(distinct.size()) +
                                    " distinct K values (need 3)");

    Eigen::MatrixXd X(n, 3);
    Eigen::VectorXd y(n);     // M^2 in GeV^2
    Eigen::VectorXd w(n);     // weights
    bool any_sigma = false, all_sigma = true;
    for (int i = 0; i < n; ++i) {
        const auto& row = data.rows[i];
        X.row(i) = design_row(row.K);
        const double m_gev = row.mass_mev / 1000.0;
        y[i] = m_gev * m_gev;
        if (row.sigma_mev > 0.0) {
            any_sigma = true;
            // sigma on M^2 from sigma on M: dM^2 = 2 M dM
            const double s2 = 2.0 * m_gev * (row.sigma_mev / 1000.0);
            w[i] = 1.0 / (s2 * s2);
        } else {
            all_sigma = false;
            w[i] = 1.0;
        }
    }
    if (any_sigma && !all_sigma)
        throw std::invalid_argument("fit_levels: sigma must be given for all rows or none");
    if (!any_sigma) w.setOnes();

    FitResult fit;
    fit.mode = mode;

    if (mode == FitMode::Joint) {
        const Eigen::Matrix3d ntl = X.transpose() * w.asDiagonal() * X;
        const Eigen::Vector3d rhs = X.transpose() * w.asDiagonal() * y;
        Eigen::FullPivLU<Eigen::Matrix3d> lu(ntl);
        if (!lu.isInvertible())
            throw std::invalid_argument("fit_levels: singular normal equations");
        const Eigen::Vector3d beta = lu.solve(rhs);
        fit.A = beta[0];
        fit.B = beta[1];
        fit.C = beta[2];
    } else {
        // stage 1: all-pairs differences kill C; 2x2 normal equations for (A, B)
        Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
        Eigen::Vector2d rhs2 = Eigen::Vector2d::Zero();
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const Eigen::RowVector3d d = X.row(i) - X.row(j);
                const Eigen::Vector2d g(d[0], d[1]);
                m += g * g.transpose();
                rhs2 += g * (y[i] - y[j]);
            }
        }
        Eigen::FullPivLU<Eigen::Matrix2d> lu(m);
        if (!lu.isInvertible())
            throw std::invalid_argument("fit_levels: singular difference design");
        const Eigen::Vector2d ab = lu.solve(rhs2);
        fit.A = ab[0];
        fit.B = ab[1];
        // stage 2: weighted mean offset
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            num += w[i] * (y[i] - fit.A * X(i, 0) - fit.B * X(i, 1));
            den += w[i];
        }
        fit.C = num / den;
    }

    Eigen::Vector3d beta(fit.A, fit.B, fit.C);
    fit.residuals = y - X * beta;

    // covariance from the joint design; unit-weight fits scale by reduced chi-square
    const Eigen::Matrix3d ntl = X.transpose() * w.asDiagonal() * X;
    Eigen::FullPivLU<Eigen::Matrix3d> lu(ntl);
    Eigen::Matrix3d cov = lu.inverse();
    if (!any_sigma) {
        const double rss = fit.residuals.squaredNorm();
        cov *= (n > 3) ? rss / (n - 3) : 0.0;
    }
    fit.covariance = cov;
    return fit;
}

LevelDataset synthetic_levels(double A, double B, double C, int k_max, double noise_frac,
                              std::uint64_t seed) {
    if (k_max < 0) throw std::invalid_argument("synthetic_levels: k_max >= 0");
    LevelDataset ds;
    ds.source = "synthetic";
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int K = 0; K <= k_max; ++K) {
        double m2 = predicted_m2_gev2(A, B, C, K);
        if (noise_frac > 0.0) m2 *= 1.0 + noise_frac * gauss(rng);
        if (!(m2 > 0.0))
            throw std::runtime_error("synthetic_levels: non-positive squared mass at K=" +
                                     std::to_string(K));
        LevelRow row;
        row.label = "synthetic_K" + std::to_string(K);
        row.mass_mev = std::sqrt(m2) * 1000.0;
        row.K = K;
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

}  // namespace s3pot
