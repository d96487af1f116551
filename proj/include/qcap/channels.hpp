// Channel families and generic CPTP-map manipulation.
//
// A channel is held as an ordered Kraus list K_e : C^{dA} -> C^{dB}. The
// Stinespring isometry is V = sum_e K_e (x) |e>, i.e. output index b and
// environment index e combine as b * dE + e. The canonical complement has
// matrix elements Tr(K_i rho K_j^dagger).

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "qcap/numerics.hpp"

namespace qcap {

/// Distribution mu defining a generalized platypus channel, stored ascending.
class ProbabilityVector {
public:
    /// Validates entries in [0, 1] summing to 1 within 1e-12, then sorts.
    explicit ProbabilityVector(std::vector<double> entries);

    /// Rescales `raw` to unit sum if it is off by at most `max_defect`.
    static ProbabilityVector normalized(std::vector<double> raw, double max_defect);
    static ProbabilityVector uniform(int d);

    int dim() const { return static_cast<int>(entries_.size()); }
    double operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
    double max() const { return entries_.back(); }
    double min() const { return entries_.front(); }
    std::span<const double> entries() const { return entries_; }

private:
    std::vector<double> entries_;
};

/// Hermitian, PSD, unit-trace operator.
class DensityMatrix {
public:
    /// Validates PSD within 1e-10 and trace 1 within 1e-12.
    explicit DensityMatrix(Matrix m);

    /// Wraps an operator known to be a state (e.g. a CPTP image) without an eigensolve.
    static DensityMatrix trusted(Matrix m);

    static DensityMatrix maximally_mixed(int dim);
    static DensityMatrix diagonal(std::span<const double> probabilities);
    static DensityMatrix pure(const Vector& ket);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }

private:
    struct Unchecked {};
    DensityMatrix(Matrix m, Unchecked) : m_(std::move(m)) {}
    Matrix m_;
};

/// CPTP map as a Kraus collection plus provenance used for serialization.
class QuantumChannel {
public:
    using Params = std::map<std::string, std::vector<double>>;

    /// Validates equal shapes and sum K^dagger K = I within 1e-10.
    explicit QuantumChannel(std::vector<Matrix> kraus, std::string family = "custom", Params params = {});

    int input_dim() const { return input_dim_; }
    int output_dim() const { return output_dim_; }
    int env_dim() const { return static_cast<int>(kraus_.size()); }
    const std::vector<Matrix>& kraus() const { return kraus_; }
    const std::string& family() const { return family_; }
    const Params& params() const { return params_; }

    /// max |sum K^dagger K - I|.
    double trace_preservation_defect() const;

    /// Stinespring isometry V : C^{dA} -> C^{dB} (x) C^{dE}.
    Matrix isometry() const;

private:
    std::vector<Matrix> kraus_;
    int input_dim_ = 0;
    int output_dim_ = 0;
    std::string family_;
    Params params_;
};

inline constexpr double kTracePreservationTolerance = 1e-10;

/// Generalized platypus channel: V|0> = sum_j sqrt(mu_j)|j>|j>, V|i> = |d>|i-1>.
QuantumChannel platypus(const ProbabilityVector& mu);

/// rho -> (1 - lambda) rho (+) lambda |e><e| with flag |e> = |d>.
QuantumChannel erasure(double lambda, int d);

/// Every excited level |j> decays to |0> with probability gamma.
QuantumChannel mad(double gamma, int d);

QuantumChannel identity_channel(int d);

/// Canonical complement, environment dimension = dB of the input channel.
QuantumChannel complement(const QuantumChannel& n);

/// (I (x) N)(|Phi><Phi|) with |Phi> = sum_i |ii>, input factor first.
Matrix choi(const QuantumChannel& n);

DensityMatrix apply(const QuantumChannel& n, const DensityMatrix& rho);

/// Applies the channel to an arbitrary operator (needed for off-diagonal units).
Matrix apply_operator(const QuantumChannel& n, const Matrix& x);

/// second o first, Kraus products taken pairwise.
QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first);

/// first (x) second, Kraus index of `first` major.
QuantumChannel tensor(const QuantumChannel& first, const QuantumChannel& second);

}  // namespace qcap
