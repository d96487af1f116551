#include "qcap/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qcap {

namespace {

constexpr double kProbabilitySumTolerance = 1e-12;
constexpr double kStatePsdTolerance = 1e-10;
constexpr double kStateTraceTolerance = 1e-12;

void check_unit_interval(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream msg;
        msg << name << " must lie in [0, 1], got " << x;
        throw std::invalid_argument(msg.str());
    }
}

void check_dim(int d, const char* what) {
    if (d < 1) {
        std::ostringstream msg;
        msg << what << ": dimension must be positive, got " << d;
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("probability vector must be nonempty");
    for (const double x : entries_) check_unit_interval(x, "probability entry");
    const double sum = std::accumulate(entries_.begin(), entries_.end(), 0.0);
    if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "probability vector sums to " << sum << ", not 1";
        throw std::invalid_argument(msg.str());
    }
    std::sort(entries_.begin(), entries_.end());
}

ProbabilityVector ProbabilityVector::normalized(std::vector<double> raw, double max_defect) {
    if (raw.empty()) throw std::invalid_argument("probability vector must be nonempty");
    for (const double x : raw) {
        if (!(x >= 0.0)) {
            std::ostringstream msg;
            msg << "probability entry must be nonnegative, got " << x;
            throw std::invalid_argument(msg.str());
        }
    }
    const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
    if (std::abs(sum - 1.0) > max_defect) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "probability vector sums to " << sum << ", off by more than " << max_defect;
        throw std::invalid_argument(msg.str());
    }
    for (double& x : raw) x /= sum;
    return ProbabilityVector(std::move(raw));
}

ProbabilityVector ProbabilityVector::uniform(int d) {
    check_dim(d, "uniform distribution");
    return ProbabilityVector(std::vector<double>(static_cast<std::size_t>(d), 1.0 / d));
}

DensityMatrix::DensityMatrix(Matrix m) {
    const PsdResult psd = psd_check(m, kStatePsdTolerance);
    if (!psd.psd) {
        std::ostringstream msg;
        msg << "density matrix is not PSD: min eigenvalue " << psd.min_eigenvalue;
        throw std::invalid_argument(msg.str());
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > kStateTraceTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "density matrix has trace " << tr;
        throw std::invalid_argument(msg.str());
    }
    m_ = (m + m.adjoint()) * 0.5;
}

DensityMatrix DensityMatrix::trusted(Matrix m) { return DensityMatrix(std::move(m), Unchecked{}); }

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    check_dim(dim, "maximally mixed state");
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim), Unchecked{});
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probabilities) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(probabilities.size()),
                            static_cast<Eigen::Index>(probabilities.size()));
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = probabilities[i];
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const Vector& ket) {
    const double norm = ket.norm();
    if (norm == 0.0) throw std::invalid_argument("pure state from a zero vector");
    const Vector v = ket / norm;
    return DensityMatrix(v * v.adjoint(), Unchecked{});
}

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus, std::string family, Params params)
    : kraus_(std::move(kraus)), family_(std::move(family)), params_(std::move(params)) {
    if (kraus_.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
    output_dim_ = static_cast<int>(kraus_.front().rows());
    input_dim_ = static_cast<int>(kraus_.front().cols());
    if (input_dim_ == 0 || output_dim_ == 0) throw std::invalid_argument("Kraus operators must be nonempty");
    for (const Matrix& k : kraus_) {
        if (k.rows() != output_dim_ || k.cols() != input_dim_) {
            throw std::invalid_argument("Kraus operators must share one shape");
        }
    }
    const double defect = trace_preservation_defect();
    if (defect > kTracePreservationTolerance) {
        std::ostringstream msg;
        msg << "channel is not trace preserving: max |sum K^dagger K - I| = " << defect;
        throw std::invalid_argument(msg.str());
    }
}

double QuantumChannel::trace_preservation_defect() const {
    Matrix sum = Matrix::Zero(input_dim_, input_dim_);
    for (const Matrix& k : kraus_) sum.noalias() += k.adjoint() * k;
    return (sum - Matrix::Identity(input_dim_, input_dim_)).cwiseAbs().maxCoeff();
}

Matrix QuantumChannel::isometry() const {
    const int de = env_dim();
    Matrix v = Matrix::Zero(static_cast<Eigen::Index>(output_dim_) * de, input_dim_);
    for (int e = 0; e < de; ++e)
        for (int b = 0; b < output_dim_; ++b) v.row(b * de + e) = kraus_[static_cast<std::size_t>(e)].row(b);
    return v;
}

QuantumChannel platypus(const ProbabilityVector& mu) {
    const int d = mu.dim();
    std::vector<Matrix> kraus;
    kraus.reserve(static_cast<std::size_t>(d));
    for (int e = 0; e < d; ++e) {
        Matrix k = Matrix::Zero(d + 1, d + 1);
        k(e, 0) = std::sqrt(mu[e]);
        k(d, e + 1) = 1.0;
        kraus.push_back(std::move(k));
    }
    const auto entries = mu.entries();
    return QuantumChannel(std::move(kraus), "platypus", {{"mu", {entries.begin(), entries.end()}}});
}

QuantumChannel erasure(double lambda, int d) {
    check_unit_interval(lambda, "erasure probability");
    check_dim(d, "erasure");
    std::vector<Matrix> kraus;
    Matrix keep = Matrix::Zero(d + 1, d);
    keep.topRows(d) = Matrix::Identity(d, d) * std::sqrt(1.0 - lambda);
    kraus.push_back(std::move(keep));
    for (int i = 0; i < d; ++i) {
        Matrix k = Matrix::Zero(d + 1, d);
        k(d, i) = std::sqrt(lambda);
        kraus.push_back(std::move(k));
    }
    return QuantumChannel(std::move(kraus), "erasure",
                          {{"lambda", {lambda}}, {"d", {static_cast<double>(d)}}});
}

QuantumChannel mad(double gamma, int d) {
    check_unit_interval(gamma, "damping rate");
    check_dim(d, "amplitude damping");
    std::vector<Matrix> kraus;
    Matrix k0 = Matrix::Identity(d, d) * std::sqrt(1.0 - gamma);
    k0(0, 0) = 1.0;
    kraus.push_back(std::move(k0));
    for (int j = 1; j < d; ++j) {
        Matrix k = Matrix::Zero(d, d);
        k(0, j) = std::sqrt(gamma);
        kraus.push_back(std::move(k));
    }
    return QuantumChannel(std::move(kraus), "mad", {{"gamma", {gamma}}, {"d", {static_cast<double>(d)}}});
}

QuantumChannel identity_channel(int d) {
    check_dim(d, "identity channel");
    return QuantumChannel({Matrix::Identity(d, d)}, "identity", {{"d", {static_cast<double>(d)}}});
}

QuantumChannel complement(const QuantumChannel& n) {
    const int de = n.env_dim();
    std::vector<Matrix> kraus;
    kraus.reserve(static_cast<std::size_t>(n.output_dim()));
    for (int b = 0; b < n.output_dim(); ++b) {
        Matrix f(de, n.input_dim());
        for (int e = 0; e < de; ++e) f.row(e) = n.kraus()[static_cast<std::size_t>(e)].row(b);
        kraus.push_back(std::move(f));
    }
    QuantumChannel::Params params = n.params();
    return QuantumChannel(std::move(kraus), "complement(" + n.family() + ")", std::move(params));
}

Matrix apply_operator(const QuantumChannel& n, const Matrix& x) {
    if (x.rows() != n.input_dim() || x.cols() != n.input_dim()) {
        std::ostringstream msg;
        msg << "channel input dimension " << n.input_dim() << " does not match a " << x.rows() << "x"
            << x.cols() << " operator";
        throw std::invalid_argument(msg.str());
    }
    Matrix out = Matrix::Zero(n.output_dim(), n.output_dim());
    for (const Matrix& k : n.kraus()) out.noalias() += k * x * k.adjoint();
    return out;
}

DensityMatrix apply(const QuantumChannel& n, const DensityMatrix& rho) {
    Matrix out = apply_operator(n, rho.matrix());
    out = (out + out.adjoint()) * 0.5;
    return DensityMatrix::trusted(std::move(out));
}

Matrix choi(const QuantumChannel& n) {
    const int da = n.input_dim();
    const int db = n.output_dim();
    // J = W W^dagger where column e of W holds K_e|a> stacked over a.
    Matrix w(static_cast<Eigen::Index>(da) * db, n.env_dim());
    for (int e = 0; e < n.env_dim(); ++e)
        for (int a = 0; a < da; ++a) w.col(e).segment(a * db, db) = n.kraus()[static_cast<std::size_t>(e)].col(a);
    return w * w.adjoint();
}

QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first) {
    if (second.input_dim() != first.output_dim()) {
        std::ostringstream msg;
        msg << "compose: output dimension " << first.output_dim() << " does not feed input dimension "
            << second.input_dim();
        throw std::invalid_argument(msg.str());
    }
    std::vector<Matrix> kraus;
    kraus.reserve(second.kraus().size() * first.kraus().size());
    for (const Matrix& k2 : second.kraus())
        for (const Matrix& k1 : first.kraus()) kraus.push_back(k2 * k1);
    return QuantumChannel(std::move(kraus), second.family() + "o" + first.family());
}

QuantumChannel tensor(const QuantumChannel& first, const QuantumChannel& second) {
    std::vector<Matrix> kraus;
    kraus.reserve(first.kraus().size() * second.kraus().size());
    for (const Matrix& k1 : first.kraus())
        for (const Matrix& k2 : second.kraus()) kraus.push_back(tensor_product(k1, k2));
    return QuantumChannel(std::move(kraus), first.family() + "x" + second.family());
}

}  // namespace qcap
