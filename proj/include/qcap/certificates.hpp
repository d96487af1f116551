// Closed-form capacity bounds for the generalized platypus channel and
// verification of explicit SDP feasible points that certify them.
//
// Nothing here solves an SDP. A certificate is a concrete feasible point
// (Y_ab, Z_ab) for the transposition bound or (R_ab, S_b) for the beta bound;
// verification is a set of dense eigensolves. Operators on A (x) B use the
// same ordering as choi(): input factor first.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcap/capacities.hpp"
#include "qcap/channels.hpp"

namespace qcap {

inline constexpr double kDefaultCertificateTolerance = 1e-9;

enum class BoundKind { transposition, beta };
std::string_view to_string(BoundKind k);

/// One verified condition. For PSD checks `margin` is the minimum eigenvalue;
/// for scalar conditions it is the signed slack (negative means violated).
struct CertificateCheck {
    std::string name;
    double margin = 0.0;
    bool pass = false;
};

struct NamedMatrix {
    std::string name;
    Matrix value;
};

struct CertificateReport {
    BoundKind bound = BoundKind::transposition;
    double bound_value = 0.0;  ///< bits
    std::vector<CertificateCheck> checks;
    bool certified = false;    ///< every check passed
    std::vector<std::string> warnings;
    std::vector<NamedMatrix> matrices;  ///< the feasible point, for dumps

    const CertificateCheck* find(std::string_view name) const;
};

/// log2(1 + sqrt(max_i mu_i)).
double transposition_bound(const ProbabilityVector& mu);

/// Checks Y, Z >= 0 and [[Y, -T_b(J)], [-T_b(J)^dagger, Z]] >= 0 by a direct
/// eigensolve of the block matrix. Bound is log2 of (||Y_a|| + ||Z_a||) / 2.
CertificateReport verify_transposition_feasible_point(const QuantumChannel& n, const Matrix& y_ab,
                                                      const Matrix& z_ab, double tol = kDefaultCertificateTolerance);

/// Checks R +- T_b(J) >= 0 and I_a (x) S_b +- T_b(R) >= 0. Bound is log2 Tr S_b.
CertificateReport verify_beta_feasible_point(const QuantumChannel& n, const Matrix& r_ab, const Matrix& s_b,
                                             double tol = kDefaultCertificateTolerance);

/// Y_ab = Z_ab = sum_j mu_j [0,j] + sum_i [i,d] + s [0,d] + |psi><psi| with
/// s = sqrt(mu_max) and psi = sum_i (mu_{i-1}^2 / mu_max)^{1/4} |i, i-1>.
Matrix transposition_feasible_point(const ProbabilityVector& mu);

/// Verifies the explicit point above, plus ||Y_a|| = 1 + sqrt(mu_max) within
/// 1e-12 and the three scalar conditions the point was chosen to satisfy.
CertificateReport verify_transposition_certificate(const ProbabilityVector& mu,
                                                   double tol = kDefaultCertificateTolerance);

/// R_ab = sum_j mu_j [0,j] + sum_{i=0}^{d} [i,d] + [psi], psi = sum_i sqrt(mu_{i-1}) |i, i-1>.
Matrix beta_feasible_r(const ProbabilityVector& mu);
/// S_b = sum_j mu_j [j] + [d]; trace 2.
Matrix beta_feasible_s(const ProbabilityVector& mu);

CertificateReport verify_beta_certificate(const ProbabilityVector& mu, double tol = kDefaultCertificateTolerance);

struct CapacitySummary {
    std::vector<double> mu;
    double q1 = 0.0;
    double u_star = 0.0;
    double q_upper = 0.0;
    bool transposition_certified = false;
    double private_information = 0.0;  ///< I_p at the two-state ensemble
    double p = 0.0;
    double c = 0.0;
    bool beta_certified = false;
    bool p_c_certified = false;  ///< beta certificate passed and I_p = 1 within tol
    double ce = 0.0;             ///< mutual information at the assisted state
    bool ce_stationary = false;
};

CapacitySummary capacity_summary(const ProbabilityVector& mu, double tol = kDefaultCertificateTolerance);

}  // namespace qcap
