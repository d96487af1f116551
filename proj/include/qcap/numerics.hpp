// Dense complex Hermitian linear algebra, entropy and PSD primitives.
//
// Everything in qcap is built on these few functions. Matrices are plain
// Eigen::MatrixXcd values; hermiticity is validated where a spectral
// decomposition is requested rather than carried in the type.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qcap {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Hermiticity defects up to this size are symmetrized away; larger ones are rejected.
inline constexpr double kHermiticityTolerance = 1e-9;
/// Eigenvalues below this are treated as exact zeros before taking entropies.
inline constexpr double kEigenvalueClamp = 1e-12;
/// Values more negative than this make an entropy evaluation fail.
inline constexpr double kNegativityTolerance = 1e-10;

/// Eigenvalues of a Hermitian operator, ascending, together with their sum.
struct Spectrum {
    std::vector<double> values;
    double total = 0.0;

    static Spectrum from_values(std::vector<double> values);

    std::size_t size() const { return values.size(); }
    double min() const;
    double max() const;
};

/// Largest |H_ij - conj(H_ji)|.
double hermiticity_defect(const Matrix& h);

/// All eigenvalues of `h`, ascending.
///
/// Rejects inputs whose hermiticity defect exceeds 1e-9 relative to
/// max(1, max|h_ij|); smaller defects are removed by (H + H^dagger)/2.
/// A purely real input goes through the real symmetric solver.
Spectrum hermitian_spectrum(const Matrix& h);

/// Eigenvalues and orthonormal eigenvectors (columns), ascending.
struct Eigensystem {
    Spectrum spectrum;
    Matrix vectors;
};
Eigensystem hermitian_eigensystem(const Matrix& h);

/// -sum x log2 x over the raw (possibly unnormalized) values, with 0 log 0 = 0.
///
/// Values in [-1e-10, 1e-12) count as zero; anything more negative throws.
double von_neumann_entropy(std::span<const double> values);
inline double von_neumann_entropy(const Spectrum& s) { return von_neumann_entropy(s.values); }

/// Entropy of a Hermitian operator's spectrum.
double matrix_entropy(const Matrix& h);

struct PsdResult {
    bool psd = false;
    double min_eigenvalue = 0.0;
};

/// psd is true iff the smallest eigenvalue is >= -tol.
PsdResult psd_check(const Matrix& h, double tol);

Matrix tensor_product(const Matrix& a, const Matrix& b);

enum class Subsystem { A, B };

/// Partial trace of an operator on A (x) B, keeping `keep`.
Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, Subsystem keep);

/// (I_a (x) T)(M): transposes the B factor.
Matrix partial_transpose_b(const Matrix& m, int dim_a, int dim_b);

/// |i><j| in dimension dim.
Matrix matrix_unit(int dim, int i, int j);

/// Computational basis vector |i> in dimension dim.
Vector basis_ket(int dim, int i);

/// Largest singular value.
double operator_norm(const Matrix& m);

}  // namespace qcap
