#include "qcap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qcap {

Spectrum Spectrum::from_values(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    Spectrum s;
    s.total = std::accumulate(values.begin(), values.end(), 0.0);
    s.values = std::move(values);
    return s;
}

double Spectrum::min() const {
    if (values.empty()) throw std::logic_error("min() of empty spectrum");
    return values.front();
}

double Spectrum::max() const {
    if (values.empty()) throw std::logic_error("max() of empty spectrum");
    return values.back();
}

double hermiticity_defect(const Matrix& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("hermiticity_defect: matrix is not square");
    if (h.size() == 0) return 0.0;
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

Matrix symmetrized(const Matrix& h) {
    if (h.rows() != h.cols()) {
        std::ostringstream msg;
        msg << "expected a square matrix, got " << h.rows() << "x" << h.cols();
        throw std::invalid_argument(msg.str());
    }
    if (h.size() == 0) return h;
    const double defect = hermiticity_defect(h);
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if (defect > kHermiticityTolerance * scale) {
        std::ostringstream msg;
        msg << "matrix is not Hermitian: max |H - H^dagger| = " << defect << " exceeds "
            << kHermiticityTolerance * scale;
        throw std::invalid_argument(msg.str());
    }
    return (h + h.adjoint()) * 0.5;
}

bool is_real(const Matrix& h) { return h.size() == 0 || h.imag().cwiseAbs().maxCoeff() == 0.0; }

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

Spectrum hermitian_spectrum(const Matrix& h) {
    const Matrix sym = symmetrized(h);
    if (sym.size() == 0) return Spectrum{};
    if (is_real(sym)) {
        const Eigen::MatrixXd re = sym.real();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(re, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
        return Spectrum::from_values(to_std(es.eigenvalues()));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
    return Spectrum::from_values(to_std(es.eigenvalues()));
}

Eigensystem hermitian_eigensystem(const Matrix& h) {
    const Matrix sym = symmetrized(h);
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
    return {Spectrum::from_values(to_std(es.eigenvalues())), es.eigenvectors()};
}

double von_neumann_entropy(std::span<const double> values) {
    double s = 0.0;
    for (const double x : values) {
        if (x < -kNegativityTolerance) {
            std::ostringstream msg;
            msg << "entropy of a spectrum with negative value " << x;
            throw std::domain_error(msg.str());
        }
        if (x < kEigenvalueClamp) continue;
        s -= x * std::log2(x);
    }
    return s;
}

double matrix_entropy(const Matrix& h) { return von_neumann_entropy(hermitian_spectrum(h)); }

PsdResult psd_check(const Matrix& h, double tol) {
    const Spectrum s = hermitian_spectrum(h);
    if (s.values.empty()) return {true, 0.0};
    return {s.min() >= -tol, s.min()};
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

namespace {

void check_bipartite(const Matrix& m, int dim_a, int dim_b, const char* what) {
    if (dim_a <= 0 || dim_b <= 0 || m.rows() != m.cols() ||
        m.rows() != static_cast<Eigen::Index>(dim_a) * dim_b) {
        std::ostringstream msg;
        msg << what << ": dimensions " << dim_a << "x" << dim_b << " do not match a " << m.rows() << "x"
            << m.cols() << " operator";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, Subsystem keep) {
    check_bipartite(m, dim_a, dim_b, "partial_trace");
    if (keep == Subsystem::A) {
        Matrix out = Matrix::Zero(dim_a, dim_a);
        for (int i = 0; i < dim_a; ++i)
            for (int j = 0; j < dim_a; ++j)
                out(i, j) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
        return out;
    }
    Matrix out = Matrix::Zero(dim_b, dim_b);
    for (int i = 0; i < dim_a; ++i) out += m.block(i * dim_b, i * dim_b, dim_b, dim_b);
    return out;
}

Matrix partial_transpose_b(const Matrix& m, int dim_a, int dim_b) {
    check_bipartite(m, dim_a, dim_b, "partial_transpose_b");
    Matrix out(m.rows(), m.cols());
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_a; ++j)
            out.block(i * dim_b, j * dim_b, dim_b, dim_b) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).transpose();
    return out;
}

Matrix matrix_unit(int dim, int i, int j) {
    Matrix out = Matrix::Zero(dim, dim);
    out(i, j) = 1.0;
    return out;
}

Vector basis_ket(int dim, int i) {
    Vector v = Vector::Zero(dim);
    v(i) = 1.0;
    return v;
}

double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

}  // namespace qcap
