// Entropic information quantities and single-channel capacity formulas.

#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "qcap/channels.hpp"

namespace qcap {

/// Weighted collection of states {p_i, rho_i}.
class Ensemble {
public:
    /// Requires a common dimension, p_i >= 0 and sum p_i = 1 within 1e-12.
    explicit Ensemble(std::vector<std::pair<double, DensityMatrix>> members);

    const std::vector<std::pair<double, DensityMatrix>>& members() const { return members_; }
    DensityMatrix average() const;

private:
    std::vector<std::pair<double, DensityMatrix>> members_;
};

enum class Method { closed_form, scan_1d, certificate };
std::string_view to_string(Method m);

struct CapacityResult {
    double value = 0.0;
    std::optional<double> argmax;
    Method method = Method::closed_form;
};

/// S(N(rho)) - S(N^c(rho)) in bits.
double coherent_information(const QuantumChannel& n, const DensityMatrix& rho);

/// I_c(sum p rho, N) - sum p I_c(rho, N).
double private_information(const QuantumChannel& n, const Ensemble& ensemble);

/// S(N(sum p rho)) - sum p S(N(rho)).
double holevo(const QuantumChannel& n, const Ensemble& ensemble);

/// S(rho) + I_c(rho, N).
double mutual_information(const QuantumChannel& n, const DensityMatrix& rho);

struct Maximum {
    double value = 0.0;
    double argmax = 0.0;
};

/// Grid scan of [0, 1] followed by golden-section refinement around the best
/// grid point. Ties resolve toward the smaller argument.
Maximum maximize_unit_interval(const std::function<double(double)>& f, double tol, int grid_points = 1001);

/// I_c(rho(u), O_mu) with rho(u) = (1-u)|0><0| + u|d><d|, from the diagonal output spectra.
double platypus_diagonal_ic(const ProbabilityVector& mu, double u);

/// Q^(1) of the generalized platypus channel, maximized over rho(u).
CapacityResult q1_platypus(const ProbabilityVector& mu, double tol = 1e-9);

/// max{(1 - 2 lambda) log2 d, 0}.
CapacityResult q_erasure(double lambda, int d);

/// I_c(sigma(u), A_gamma) for sigma(u) = diag(u, (1-u)/(d-1), ...).
double mad_diagonal_ic(double gamma, int d, std::span<const double> diagonal);

enum class MadSearch {
    sigma_family,  ///< diag(u, (1-u)/(d-1), ...), sufficient by covariance
    full_simplex,  ///< every diagonal input; cross-check only, d <= 4
};

/// Q = Q^(1) of the multilevel amplitude damping channel; 0 for gamma >= 1/2.
CapacityResult q_mad(double gamma, int d, double tol = 1e-9, MadSearch search = MadSearch::sigma_family);

/// The two-state ensemble {1/2: |0><0|, 1/2: sum_i mu_{i-1}|i><i|} reaching I_p = chi = 1.
Ensemble platypus_private_ensemble(const ProbabilityVector& mu);

/// (|0><0| + sum_i mu_{i-1}|i><i|) / 2, where the mutual information reaches 2.
DensityMatrix platypus_assisted_state(const ProbabilityVector& mu);

/// Local optimality probe for the entanglement-assisted state.
struct StationarityReport {
    double value = 0.0;           ///< mutual information at the candidate
    double max_increase = 0.0;    ///< largest I(perturbed) - I(candidate) seen
    int directions = 0;
    bool stationary = false;      ///< max_increase <= tol
};

/// Perturbs the candidate toward basis states, the maximally mixed state and a
/// seeded set of pure states with step eps. Mutual information is concave in
/// rho, so no increase in any direction is evidence of the global maximum.
StationarityReport assisted_capacity_stationarity(const ProbabilityVector& mu, double eps = 1e-3,
                                                  double tol = 1e-12);

}  // namespace qcap
