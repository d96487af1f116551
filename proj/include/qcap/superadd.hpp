// Joint coherent information of O_mu (x) E_{lambda,d} and O_mu (x) A_gamma at
// the entangled input state, and certified super-additivity gaps.
//
// Exact values come from closed-form eigenvalue blocks of the two output
// states plus one d x d Hermitian eigensolve (matrix B for erasure, matrix A
// for amplitude damping). A dense route that applies the full tensor-product
// channel is kept as an independent check for small d.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcap/capacities.hpp"
#include "qcap/channels.hpp"

namespace qcap {

enum class Family { erasure, mad };
enum class GapPath { exact_spectra, closed_form_bound, dense };

std::string_view to_string(Family f);
std::string_view to_string(GapPath p);
Family parse_family(std::string_view s);
GapPath parse_gap_path(std::string_view s);

/// Largest d for which the dense route is attempted.
inline constexpr int kDenseMaxDim = 8;

/// rho = 1/2 |0><0| (x) I/d + 1/2 |psi><psi|, psi = sum_i sqrt(mu_{i-1}) |i>|i-1>.
DensityMatrix joint_input_state(const ProbabilityVector& mu);

/// Output and complement spectra of one joint evaluation.
struct JointSpectra {
    Spectrum output;
    Spectrum complement;
    double ic() const;
};

// ---- erasure companion -------------------------------------------------

/// (lambda/2) (diag(mu_i / d) + sqrt(mu) sqrt(mu)^T).
Matrix matrix_B(const ProbabilityVector& mu, double lambda);
Spectrum matrix_B_spectrum(const ProbabilityVector& mu, double lambda);

/// Characteristic polynomial of diag(mu/d) + sqrt(mu) sqrt(mu)^T evaluated at
/// x, divided by the same expression evaluated on absolute values (0 when
/// that is 0). Stays small at multiple roots, unlike a plain ratio.
double characteristic_residual(const ProbabilityVector& mu, double x);

/// Weyl interlacing of xi = eig(diag(mu/d) + sqrt(mu) sqrt(mu)^T):
/// mu_i/d <= xi_i <= mu_{i+1}/d for i <= d-2 and
/// mu_{d-1}/d <= xi_{d-1} <= mu_{d-1}/d + 1.
struct InterlacingReport {
    bool holds = false;
    double worst_violation = 0.0;   ///< largest amount any bound is exceeded by
    double max_residual = 0.0;      ///< largest characteristic_residual
    std::vector<double> xi;         ///< unscaled, ascending
};
InterlacingReport check_weyl_interlacing(const ProbabilityVector& mu, double tol = 1e-12);

JointSpectra erasure_joint_spectra(const ProbabilityVector& mu, double lambda);
double ic_joint_erasure_exact(const ProbabilityVector& mu, double lambda);

/// (1 - lambda) + (d - (2d - mu_max) lambda) / (2d) * log2 d.
double ic_joint_erasure_lower(const ProbabilityVector& mu, double lambda);

// ---- amplitude damping companion ---------------------------------------

/// d x d block of the complement output on span{|jj>}.
Matrix matrix_A(const ProbabilityVector& mu, double gamma);
Spectrum matrix_A_spectrum(const ProbabilityVector& mu, double gamma);

/// For uniform mu: {gamma/(2d^2)} x (d-2) and
/// x_pm = (2d + (d^2 - 2d + 2) gamma +- d sqrt(d^2 gamma^2 - 4 gamma + 4)) / (4 d^2).
Spectrum uniform_matrix_A_spectrum(int d, double gamma);

JointSpectra mad_joint_spectra(const ProbabilityVector& mu, double gamma);
double ic_joint_mad_exact(const ProbabilityVector& mu, double gamma);

/// Replaces S(A) by S(B1) + S(B2) where A = B1 + B2, B1 the rank-one part
/// with eigenvalue (gamma (1 - mu_0) + mu_0)/2 and B2 the diagonal
/// ((1 + (d-1)(1-gamma)) mu_0, gamma mu_1, ..., gamma mu_{d-1}) / (2d).
double ic_joint_mad_lower(const ProbabilityVector& mu, double gamma);

// ---- dense oracle --------------------------------------------------------

/// I_c of the joint input state through the explicit tensor-product channel.
double ic_joint_dense(Family family, const ProbabilityVector& mu, double parameter);

// ---- gaps ----------------------------------------------------------------

struct GapReport {
    Family family = Family::erasure;
    int d = 0;
    std::vector<double> mu;
    double parameter = 0.0;
    double ic_exact = 0.0;  ///< NaN when the path skipped it
    double ic_lower = 0.0;
    double q_single = 0.0;  ///< exact capacity of the companion channel
    double q1_platypus = 0.0;
    double q_upper_platypus = 0.0;
    double gap_q = 0.0;
    double gap_q1 = 0.0;
    bool superadd_q = false;
    bool superadd_q1 = false;
    GapPath path = GapPath::exact_spectra;

    /// max(ic_exact, ic_lower), ignoring a skipped ic_exact.
    double ic_best() const;
};

/// Single-channel platypus quantities shared by every point of one mu.
struct PlatypusBaseline {
    double q1 = 0.0;
    double q_upper = 0.0;
    static PlatypusBaseline of(const ProbabilityVector& mu, double tol = 1e-9);
};

/// Verdicts are one-sided: true means certified, false means "not certified".
GapReport gap(Family family, const ProbabilityVector& mu, double parameter, GapPath path, double tol = 1e-9);
GapReport gap(Family family, const ProbabilityVector& mu, double parameter, GapPath path,
              const PlatypusBaseline& baseline, double tol = 1e-9);

// ---- region scans ---------------------------------------------------------

/// Builds mu of dimension d with a prescribed maximum entry.
struct FillRule {
    std::string name;
    std::function<ProbabilityVector(int d, double mu_max)> build;
};

/// Remaining mass spread uniformly over the other d-1 entries; needs mu_max >= 1/d.
FillRule uniform_remainder_fill();

struct BoundaryRow {
    Family family = Family::erasure;
    int d = 0;
    double mu_max = 0.0;
    std::optional<double> param_min_q;
    std::optional<double> param_max_q;
    std::optional<double> param_min_q1;
    std::optional<double> param_max_q1;
};

struct RegionTable {
    std::vector<GapReport> points;  ///< mu_max major, parameter minor
    std::vector<BoundaryRow> boundaries;
    std::string fill_rule;
};

struct ScanOptions {
    GapPath path = GapPath::exact_spectra;
    double tol = 1e-9;
    double refine_tol = 1e-4;
    int workers = 1;
};

/// Evaluates gap() over mu_max_grid x parameter_grid and locates the region
/// boundaries. Boundaries are refined by bisection between adjacent grid
/// points and always report a parameter known to be super-additive.
/// Throws if a row's super-additive grid points do not form one interval.
RegionTable region_scan(Family family, int d, const std::vector<double>& mu_max_grid,
                        const std::vector<double>& parameter_grid, const FillRule& fill, const ScanOptions& options);

}  // namespace qcap
