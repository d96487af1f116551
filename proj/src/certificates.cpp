#include "qcap/certificates.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qcap {

std::string_view to_string(BoundKind k) {
    switch (k) {
        case BoundKind::transposition: return "transposition";
        case BoundKind::beta: return "beta";
    }
    return "unknown";
}

const CertificateCheck* CertificateReport::find(std::string_view name) const {
    for (const CertificateCheck& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kTraceTolerance = 1e-12;

void add_psd_check(CertificateReport& report, std::string name, const Matrix& m, double tol) {
    const PsdResult r = psd_check(m, tol);
    if (r.psd && r.min_eigenvalue < 0.0) {
        std::ostringstream msg;
        msg << name << ": eigenvalue " << r.min_eigenvalue << " within tolerance, treated as zero";
        report.warnings.push_back(msg.str());
    }
    report.checks.push_back({std::move(name), r.min_eigenvalue, r.psd});
}

void add_scalar_check(CertificateReport& report, std::string name, double margin, double tol) {
    report.checks.push_back({std::move(name), margin, margin >= -tol});
}

void finalize(CertificateReport& report) {
    report.certified = !report.checks.empty();
    for (const CertificateCheck& c : report.checks) report.certified = report.certified && c.pass;
}

void require_square(const Matrix& m, Eigen::Index dim, const char* what) {
    if (m.rows() != dim || m.cols() != dim) {
        std::ostringstream msg;
        msg << what << " must be " << dim << "x" << dim << ", got " << m.rows() << "x" << m.cols();
        throw std::invalid_argument(msg.str());
    }
}

double reduced_norm(const Matrix& m_ab, int da, int db) {
    return hermitian_spectrum(partial_trace(m_ab, da, db, Subsystem::A)).max();
}

// Index of |a, b> in a (d+1) (x) (d+1) operator.
struct PairIndex {
    int d;
    Eigen::Index operator()(int a, int b) const { return static_cast<Eigen::Index>(a) * (d + 1) + b; }
};

double sqrt_mu(const ProbabilityVector& mu, int i) { return std::sqrt(mu[i]); }

// s_i = (mu_{i-1}^2 / mu_max)^{1/4}, i = 1..d.
std::vector<double> transposition_weights(const ProbabilityVector& mu) {
    std::vector<double> s(static_cast<std::size_t>(mu.dim()));
    for (int i = 1; i <= mu.dim(); ++i)
        s[static_cast<std::size_t>(i - 1)] = std::pow(mu[i - 1] * mu[i - 1] / mu.max(), 0.25);
    return s;
}

}  // namespace

double transposition_bound(const ProbabilityVector& mu) { return std::log2(1.0 + std::sqrt(mu.max())); }

CertificateReport verify_transposition_feasible_point(const QuantumChannel& n, const Matrix& y_ab,
                                                      const Matrix& z_ab, double tol) {
    const int da = n.input_dim();
    const int db = n.output_dim();
    const Eigen::Index dim = static_cast<Eigen::Index>(da) * db;
    require_square(y_ab, dim, "Y_ab");
    require_square(z_ab, dim, "Z_ab");

    const Matrix tj = partial_transpose_b(choi(n), da, db);
    Matrix block(2 * dim, 2 * dim);
    block.topLeftCorner(dim, dim) = y_ab;
    block.topRightCorner(dim, dim) = -tj;
    block.bottomLeftCorner(dim, dim) = -tj.adjoint();
    block.bottomRightCorner(dim, dim) = z_ab;

    CertificateReport report;
    report.bound = BoundKind::transposition;
    add_psd_check(report, "Y_ab psd", y_ab, tol);
    add_psd_check(report, "Z_ab psd", z_ab, tol);
    add_psd_check(report, "block psd", block, tol);
    report.bound_value = std::log2(0.5 * (reduced_norm(y_ab, da, db) + reduced_norm(z_ab, da, db)));
    report.matrices = {{"Y_ab", y_ab}, {"Z_ab", z_ab}, {"T_b(J)", tj}};
    finalize(report);
    return report;
}

CertificateReport verify_beta_feasible_point(const QuantumChannel& n, const Matrix& r_ab, const Matrix& s_b,
                                             double tol) {
    const int da = n.input_dim();
    const int db = n.output_dim();
    const Eigen::Index dim = static_cast<Eigen::Index>(da) * db;
    require_square(r_ab, dim, "R_ab");
    require_square(s_b, db, "S_b");

    const Matrix tj = partial_transpose_b(choi(n), da, db);
    const Matrix tr = partial_transpose_b(r_ab, da, db);
    const Matrix is = tensor_product(Matrix::Identity(da, da), s_b);

    CertificateReport report;
    report.bound = BoundKind::beta;
    add_psd_check(report, "R + T_b(J) psd", r_ab + tj, tol);
    add_psd_check(report, "R - T_b(J) psd", r_ab - tj, tol);
    add_psd_check(report, "I (x) S + T_b(R) psd", is + tr, tol);
    add_psd_check(report, "I (x) S - T_b(R) psd", is - tr, tol);
    const double trace_s = s_b.trace().real();
    if (!(trace_s > 0.0)) throw std::invalid_argument("beta certificate needs Tr S_b > 0");
    report.bound_value = std::log2(trace_s);
    report.matrices = {{"R_ab", r_ab}, {"S_b", s_b}, {"T_b(J)", tj}};
    finalize(report);
    return report;
}

Matrix transposition_feasible_point(const ProbabilityVector& mu) {
    const int d = mu.dim();
    const PairIndex at{d};
    const Eigen::Index dim = static_cast<Eigen::Index>(d + 1) * (d + 1);
    Matrix y = Matrix::Zero(dim, dim);
    for (int j = 0; j < d; ++j) y(at(0, j), at(0, j)) += mu[j];
    for (int i = 1; i <= d; ++i) y(at(i, d), at(i, d)) += 1.0;
    y(at(0, d), at(0, d)) += std::sqrt(mu.max());
    const std::vector<double> s = transposition_weights(mu);
    Vector psi = Vector::Zero(dim);
    for (int i = 1; i <= d; ++i) psi(at(i, i - 1)) = s[static_cast<std::size_t>(i - 1)];
    y += psi * psi.adjoint();
    return y;
}

CertificateReport verify_transposition_certificate(const ProbabilityVector& mu, double tol) {
    const int d = mu.dim();
    const Matrix y = transposition_feasible_point(mu);
    CertificateReport report = verify_transposition_feasible_point(platypus(mu), y, y, tol);

    const double s = std::sqrt(mu.max());
    const double closed_form = 1.0 + s;
    const double norm = reduced_norm(y, d + 1, d + 1);
    report.checks.push_back({"||Y_a|| = 1 + sqrt(mu_max)", kNormTolerance - std::abs(norm - closed_form),
                             std::abs(norm - closed_form) <= kNormTolerance});

    const std::vector<double> w = transposition_weights(mu);
    double overlap = 0.0;
    double weight = 0.0;
    for (int i = 1; i <= d; ++i) {
        overlap += sqrt_mu(mu, i - 1) * w[static_cast<std::size_t>(i - 1)];
        weight += w[static_cast<std::size_t>(i - 1)] * w[static_cast<std::size_t>(i - 1)];
    }
    add_scalar_check(report, "condition: overlap^2 / weight^2 <= s", s - overlap * overlap / (weight * weight), tol);

    double lower = std::numeric_limits<double>::infinity();
    double projection = 0.0;
    for (int j = 1; j <= d; ++j) {
        const double sj = w[static_cast<std::size_t>(j - 1)];
        lower = std::min(lower, sj - sqrt_mu(mu, j - 1) / std::sqrt(s));
        projection = std::max(projection, std::abs(sj * overlap / weight - sqrt_mu(mu, j - 1)));
    }
    add_scalar_check(report, "condition: sqrt(mu_{i-1}) / sqrt(s) <= s_i", lower, tol);
    add_scalar_check(report, "condition: projection identity", -projection, tol);
    finalize(report);
    return report;
}

Matrix beta_feasible_r(const ProbabilityVector& mu) {
    const int d = mu.dim();
    const PairIndex at{d};
    const Eigen::Index dim = static_cast<Eigen::Index>(d + 1) * (d + 1);
    Matrix r = Matrix::Zero(dim, dim);
    for (int j = 0; j < d; ++j) r(at(0, j), at(0, j)) += mu[j];
    for (int i = 0; i <= d; ++i) r(at(i, d), at(i, d)) += 1.0;
    Vector psi = Vector::Zero(dim);
    for (int i = 1; i <= d; ++i) psi(at(i, i - 1)) = sqrt_mu(mu, i - 1);
    r += psi * psi.adjoint();
    return r;
}

Matrix beta_feasible_s(const ProbabilityVector& mu) {
    const int d = mu.dim();
    Matrix s = Matrix::Zero(d + 1, d + 1);
    for (int j = 0; j < d; ++j) s(j, j) = mu[j];
    s(d, d) = 1.0;
    return s;
}

CertificateReport verify_beta_certificate(const ProbabilityVector& mu, double tol) {
    const Matrix s = beta_feasible_s(mu);
    CertificateReport report = verify_beta_feasible_point(platypus(mu), beta_feasible_r(mu), s, tol);
    const double trace_s = s.trace().real();
    report.checks.push_back({"Tr S_b = 2", kTraceTolerance - std::abs(trace_s - 2.0),
                             std::abs(trace_s - 2.0) <= kTraceTolerance});
    finalize(report);
    return report;
}

CapacitySummary capacity_summary(const ProbabilityVector& mu, double tol) {
    CapacitySummary out;
    const auto entries = mu.entries();
    out.mu.assign(entries.begin(), entries.end());

    const CapacityResult q1 = q1_platypus(mu, tol);
    out.q1 = q1.value;
    out.u_star = q1.argmax.value_or(0.0);
    out.q_upper = transposition_bound(mu);
    out.transposition_certified = verify_transposition_certificate(mu, tol).certified;

    const QuantumChannel n = platypus(mu);
    out.private_information = private_information(n, platypus_private_ensemble(mu));
    const CertificateReport beta = verify_beta_certificate(mu, tol);
    out.beta_certified = beta.certified;
    out.p_c_certified = beta.certified && std::abs(out.private_information - 1.0) <= tol &&
                        std::abs(beta.bound_value - 1.0) <= tol;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.p = out.p_c_certified ? 1.0 : nan;
    out.c = out.p_c_certified ? 1.0 : nan;

    const StationarityReport ce = assisted_capacity_stationarity(mu);
    out.ce = ce.value;
    out.ce_stationary = ce.stationary;
    return out;
}

}  // namespace qcap
