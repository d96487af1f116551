// Reference computations for the tests. None of these route through the
// library's channel builders or block formulas.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using Mat = Eigen::MatrixXcd;

inline double entropy(const std::vector<double>& p) {
    double h = 0.0;
    for (const double x : p)
        if (x > 1e-15) h -= x * std::log2(x);
    return h;
}

inline double matrix_entropy(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();
    return entropy(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

/// Sorted probability vector of dimension d with entries drawn uniformly and normalized.
inline std::vector<double> random_mu(std::mt19937_64& rng, int d) {
    std::uniform_real_distribution<double> u(0.01, 1.0);
    std::vector<double> mu(static_cast<std::size_t>(d));
    double sum = 0.0;
    for (double& x : mu) sum += (x = u(rng));
    for (double& x : mu) x /= sum;
    std::sort(mu.begin(), mu.end());
    return mu;
}

/// Roots of 1 = sum_i mu_i / (x - mu_i / d) by bisection, ascending. Assumes
/// distinct entries; these are the eigenvalues of diag(mu/d) + sqrt(mu) sqrt(mu)^T.
inline std::vector<double> secular_roots(const std::vector<double>& mu) {
    const int d = static_cast<int>(mu.size());
    const auto f = [&](double x) {
        double s = 1.0;
        for (const double m : mu) s -= m / (x - m / d);
        return s;
    };
    std::vector<double> roots;
    for (int i = 0; i < d; ++i) {
        // f runs from -inf just right of mu_i/d up to +inf (or 1) at the next pole.
        double lo = mu[static_cast<std::size_t>(i)] / d;
        double hi = i + 1 < d ? mu[static_cast<std::size_t>(i) + 1] / d : lo + 1.0 + 1e-9;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            (f(mid) < 0.0 ? lo : hi) = mid;
        }
        roots.push_back(0.5 * (lo + hi));
    }
    return roots;
}

// Kraus operators written out directly.
inline std::vector<Mat> platypus_kraus(const std::vector<double>& mu) {
    const int d = static_cast<int>(mu.size());
    std::vector<Mat> ks;
    for (int e = 0; e < d; ++e) {
        Mat k = Mat::Zero(d + 1, d + 1);
        k(e, 0) = std::sqrt(mu[static_cast<std::size_t>(e)]);
        k(d, e + 1) = 1.0;
        ks.push_back(k);
    }
    return ks;
}

inline std::vector<Mat> erasure_kraus(double lambda, int d) {
    std::vector<Mat> ks;
    Mat k0 = Mat::Zero(d + 1, d);
    for (int i = 0; i < d; ++i) k0(i, i) = std::sqrt(1.0 - lambda);
    ks.push_back(k0);
    for (int i = 0; i < d; ++i) {
        Mat k = Mat::Zero(d + 1, d);
        k(d, i) = std::sqrt(lambda);
        ks.push_back(k);
    }
    return ks;
}

inline std::vector<Mat> mad_kraus(double gamma, int d) {
    std::vector<Mat> ks;
    Mat k0 = Mat::Zero(d, d);
    k0(0, 0) = 1.0;
    for (int j = 1; j < d; ++j) k0(j, j) = std::sqrt(1.0 - gamma);
    ks.push_back(k0);
    for (int j = 1; j < d; ++j) {
        Mat k = Mat::Zero(d, d);
        k(0, j) = std::sqrt(gamma);
        ks.push_back(k);
    }
    return ks;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// S(N(rho)) - S(N^c(rho)) with N^c built entrywise as Tr[K_e rho K_f^dagger].
inline double coherent_information(const std::vector<Mat>& kraus, const Mat& rho) {
    const Eigen::Index n = static_cast<Eigen::Index>(kraus.size());
    Mat out = Mat::Zero(kraus.front().rows(), kraus.front().rows());
    Mat env(n, n);
    for (Eigen::Index e = 0; e < n; ++e) {
        const Mat kr = kraus[static_cast<std::size_t>(e)] * rho;
        out += kr * kraus[static_cast<std::size_t>(e)].adjoint();
        for (Eigen::Index f = 0; f < n; ++f) env(e, f) = (kr * kraus[static_cast<std::size_t>(f)].adjoint()).trace();
    }
    return matrix_entropy(out) - matrix_entropy(env);
}

/// 1/2 |0><0| (x) I/d + 1/2 |psi><psi| with psi = sum_i sqrt(mu_{i-1}) |i, i-1>.
inline Mat joint_state(const std::vector<double>& mu) {
    const int d = static_cast<int>(mu.size());
    const Eigen::Index dim = static_cast<Eigen::Index>(d + 1) * d;
    Mat rho = Mat::Zero(dim, dim);
    for (int k = 0; k < d; ++k) rho(k, k) = 0.5 / d;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    for (int i = 1; i <= d; ++i) psi(i * d + i - 1) = std::sqrt(mu[static_cast<std::size_t>(i) - 1]);
    return rho + 0.5 * psi * psi.adjoint();
}

/// Joint coherent information with companion Kraus operators `second`.
inline double joint_ic(const std::vector<double>& mu, const std::vector<Mat>& second) {
    std::vector<Mat> joint;
    for (const Mat& a : platypus_kraus(mu))
        for (const Mat& b : second) joint.push_back(kron(a, b));
    return coherent_information(joint, joint_state(mu));
}

/// Brute-force max over u of S((1-u) mu, u) - S((1-u) mu + u |last>).
inline double q1_platypus_grid(const std::vector<double>& mu, int n, double* argmax = nullptr) {
    double best = -1.0;
    for (int k = 0; k <= n; ++k) {
        const double u = static_cast<double>(k) / n;
        std::vector<double> out;
        std::vector<double> env;
        for (const double m : mu) {
            out.push_back((1 - u) * m);
            env.push_back((1 - u) * m);
        }
        out.push_back(u);
        env.back() += u;
        const double v = entropy(out) - entropy(env);
        if (v > best) {
            best = v;
            if (argmax) *argmax = u;
        }
    }
    return best;
}

}  // namespace oracle
