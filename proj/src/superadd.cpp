#include "qcap/superadd.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "qcap/certificates.hpp"

namespace qcap {

std::string_view to_string(Family f) {
    switch (f) {
        case Family::erasure: return "erasure";
        case Family::mad: return "mad";
    }
    return "unknown";
}

std::string_view to_string(GapPath p) {
    switch (p) {
        case GapPath::exact_spectra: return "exact_spectra";
        case GapPath::closed_form_bound: return "closed_form_bound";
        case GapPath::dense: return "dense";
    }
    return "unknown";
}

Family parse_family(std::string_view s) {
    if (s == "erasure") return Family::erasure;
    if (s == "mad") return Family::mad;
    throw std::invalid_argument("unknown channel family '" + std::string(s) + "' (expected erasure or mad)");
}

GapPath parse_gap_path(std::string_view s) {
    if (s == "exact_spectra" || s == "exact") return GapPath::exact_spectra;
    if (s == "closed_form_bound" || s == "lower") return GapPath::closed_form_bound;
    if (s == "dense") return GapPath::dense;
    throw std::invalid_argument("unknown path '" + std::string(s) +
                                "' (expected exact_spectra, closed_form_bound or dense)");
}

namespace {

constexpr double kSpectrumSumTolerance = 1e-9;

void check_parameter(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream msg;
        msg << name << " must lie in [0, 1], got " << x;
        throw std::invalid_argument(msg.str());
    }
}

void check_mad_dim(int d) {
    if (d < 2) throw std::invalid_argument("the amplitude damping companion needs d >= 2");
}

void append(std::vector<double>& v, double value, int count) {
    for (int k = 0; k < count; ++k) v.push_back(value);
}

Spectrum checked_state_spectrum(std::vector<double> values, const char* what) {
    Spectrum s = Spectrum::from_values(std::move(values));
    if (std::abs(s.total - 1.0) > kSpectrumSumTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << " spectrum sums to " << s.total;
        throw std::logic_error(msg.str());
    }
    return s;
}

// xi = eig(diag(mu/d) + sqrt(mu) sqrt(mu)^T), the matrix B without its lambda/2.
Matrix unscaled_B(const ProbabilityVector& mu) {
    const int d = mu.dim();
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = std::sqrt(mu[i] * mu[j]);
    for (int i = 0; i < d; ++i) m(i, i) += mu[i] / d;
    return m;
}

}  // namespace

double JointSpectra::ic() const { return von_neumann_entropy(output) - von_neumann_entropy(complement); }

DensityMatrix joint_input_state(const ProbabilityVector& mu) {
    const int d = mu.dim();
    const Eigen::Index dim = static_cast<Eigen::Index>(d + 1) * d;
    Matrix rho = Matrix::Zero(dim, dim);
    for (int k = 0; k < d; ++k) rho(k, k) = 0.5 / d;
    Vector psi = Vector::Zero(dim);
    for (int i = 1; i <= d; ++i) psi(static_cast<Eigen::Index>(i) * d + (i - 1)) = std::sqrt(mu[i - 1]);
    rho += 0.5 * psi * psi.adjoint();
    return DensityMatrix(std::move(rho));
}

Matrix matrix_B(const ProbabilityVector& mu, double lambda) {
    check_parameter(lambda, "erasure probability");
    return 0.5 * lambda * unscaled_B(mu);
}

Spectrum matrix_B_spectrum(const ProbabilityVector& mu, double lambda) {
    return hermitian_spectrum(matrix_B(mu, lambda));
}

double characteristic_residual(const ProbabilityVector& mu, double x) {
    // p(x) = sum_i mu_i (x - mu_i/d - 1) prod_{j != i} (x - mu_j/d), compared
    // with the same sum evaluated on absolute values.
    const int d = mu.dim();
    long double value = 0.0L;
    long double magnitude = 0.0L;
    for (int i = 0; i < d; ++i) {
        long double term = static_cast<long double>(mu[i]) * (x - mu[i] / d - 1.0L);
        long double bound = static_cast<long double>(mu[i]) * (std::abs(x) + mu[i] / d + 1.0L);
        for (int j = 0; j < d; ++j) {
            if (j == i) continue;
            term *= static_cast<long double>(x) - mu[j] / static_cast<long double>(d);
            bound *= std::abs(static_cast<long double>(x)) + mu[j] / static_cast<long double>(d);
        }
        value += term;
        magnitude += bound;
    }
    if (magnitude == 0.0L) return 0.0;
    return static_cast<double>(std::abs(value) / magnitude);
}

InterlacingReport check_weyl_interlacing(const ProbabilityVector& mu, double tol) {
    const int d = mu.dim();
    InterlacingReport report;
    report.xi = hermitian_spectrum(unscaled_B(mu)).values;
    const auto violation = [&](double lower, double x, double upper) {
        return std::max({0.0, lower - x, x - upper});
    };
    for (int i = 0; i + 1 < d; ++i) {
        report.worst_violation =
            std::max(report.worst_violation, violation(mu[i] / d, report.xi[static_cast<std::size_t>(i)], mu[i + 1] / d));
    }
    const double top = mu[d - 1] / d;
    report.worst_violation = std::max(report.worst_violation, violation(top, report.xi.back(), top + 1.0));
    for (const double x : report.xi) report.max_residual = std::max(report.max_residual, characteristic_residual(mu, x));
    report.holds = report.worst_violation <= tol;
    return report;
}

JointSpectra erasure_joint_spectra(const ProbabilityVector& mu, double lambda) {
    check_parameter(lambda, "erasure probability");
    const int d = mu.dim();
    std::vector<double> out;
    std::vector<double> env;
    out.reserve(static_cast<std::size_t>(d) * (d + 2) + 1);
    env.reserve(static_cast<std::size_t>(d) * (d + 1));
    for (int i = 0; i < d; ++i) {
        append(out, mu[i] * (1.0 - lambda) / (2.0 * d), d);
        out.push_back(mu[i] * lambda / 2.0);
        out.push_back(mu[i] * (1.0 - lambda) / 2.0);
        append(env, lambda * mu[i] / (2.0 * d), d - 1);
        env.push_back((1.0 - lambda) * mu[i]);
    }
    out.push_back(lambda / 2.0);
    const Spectrum b = matrix_B_spectrum(mu, lambda);
    env.insert(env.end(), b.values.begin(), b.values.end());
    return {checked_state_spectrum(std::move(out), "erasure joint output"),
            checked_state_spectrum(std::move(env), "erasure joint complement")};
}

double ic_joint_erasure_exact(const ProbabilityVector& mu, double lambda) {
    return erasure_joint_spectra(mu, lambda).ic();
}

double ic_joint_erasure_lower(const ProbabilityVector& mu, double lambda) {
    check_parameter(lambda, "erasure probability");
    const double d = mu.dim();
    return (1.0 - lambda) + (d - (2.0 * d - mu.max()) * lambda) / (2.0 * d) * std::log2(d);
}

Matrix matrix_A(const ProbabilityVector& mu, double gamma) {
    check_parameter(gamma, "damping rate");
    const int d = mu.dim();
    check_mad_dim(d);
    Matrix a(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double root = std::sqrt(mu[i] * mu[j]);
            if (i == j) {
                a(i, i) = i == 0 ? ((d + 1) + (d - 1) * (1.0 - gamma)) * mu[0] / (2.0 * d)
                                 : (d + 1) * gamma * mu[i] / (2.0 * d);
            } else if (i == 0 || j == 0) {
                a(i, j) = root * std::sqrt(gamma) / 2.0;
            } else {
                a(i, j) = gamma * root / 2.0;
            }
        }
    }
    return a;
}

Spectrum matrix_A_spectrum(const ProbabilityVector& mu, double gamma) {
    return hermitian_spectrum(matrix_A(mu, gamma));
}

Spectrum uniform_matrix_A_spectrum(int d, double gamma) {
    check_parameter(gamma, "damping rate");
    check_mad_dim(d);
    const double dd = d;
    std::vector<double> values(static_cast<std::size_t>(d - 2), gamma / (2.0 * dd * dd));
    const double root = dd * std::sqrt(dd * dd * gamma * gamma - 4.0 * gamma + 4.0);
    const double base = 2.0 * dd + (dd * dd - 2.0 * dd + 2.0) * gamma;
    values.push_back((base + root) / (4.0 * dd * dd));
    values.push_back((base - root) / (4.0 * dd * dd));
    return Spectrum::from_values(std::move(values));
}

namespace {

std::vector<double> mad_output_values(const ProbabilityVector& mu, double gamma) {
    const int d = mu.dim();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(d) * (d + 1));
    for (int j = 0; j < d; ++j) {
        out.push_back(mu[j] * (1.0 + (d - 1) * gamma) / (2.0 * d));
        append(out, mu[j] * (1.0 - gamma) / (2.0 * d), d - 1);
    }
    out.push_back((mu[0] + gamma * (1.0 - mu[0])) / 2.0);
    for (int i = 1; i < d; ++i) out.push_back((1.0 - gamma) * mu[i] / 2.0);
    return out;
}

// Complement eigenvalues outside span{|jj>}.
std::vector<double> mad_complement_block_values(const ProbabilityVector& mu, double gamma) {
    const int d = mu.dim();
    std::vector<double> env;
    env.reserve(static_cast<std::size_t>(d) * d);
    append(env, mu[0] * gamma / (2.0 * d), d - 1);
    for (int j = 1; j < d; ++j) {
        env.push_back(mu[j] * (1.0 + (2 * d - 1) * (1.0 - gamma)) / (2.0 * d));
        append(env, gamma * mu[j] / (2.0 * d), d - 2);
    }
    return env;
}

}  // namespace

JointSpectra mad_joint_spectra(const ProbabilityVector& mu, double gamma) {
    check_parameter(gamma, "damping rate");
    check_mad_dim(mu.dim());
    std::vector<double> env = mad_complement_block_values(mu, gamma);
    const Spectrum a = matrix_A_spectrum(mu, gamma);
    env.insert(env.end(), a.values.begin(), a.values.end());
    return {checked_state_spectrum(mad_output_values(mu, gamma), "mad joint output"),
            checked_state_spectrum(std::move(env), "mad joint complement")};
}

double ic_joint_mad_exact(const ProbabilityVector& mu, double gamma) { return mad_joint_spectra(mu, gamma).ic(); }

double ic_joint_mad_lower(const ProbabilityVector& mu, double gamma) {
    check_parameter(gamma, "damping rate");
    const int d = mu.dim();
    check_mad_dim(d);
    std::vector<double> blocks = mad_complement_block_values(mu, gamma);
    const double rank_one = (gamma * (1.0 - mu[0]) + mu[0]) / 2.0;
    blocks.push_back(rank_one);
    blocks.push_back((1.0 + (d - 1) * (1.0 - gamma)) * mu[0] / (2.0 * d));
    for (int j = 1; j < d; ++j) blocks.push_back(gamma * mu[j] / (2.0 * d));
    const Spectrum bound = checked_state_spectrum(std::move(blocks), "mad majorization bound");
    return von_neumann_entropy(mad_output_values(mu, gamma)) - von_neumann_entropy(bound);
}

double ic_joint_dense(Family family, const ProbabilityVector& mu, double parameter) {
    const int d = mu.dim();
    if (d > kDenseMaxDim) {
        std::ostringstream msg;
        msg << "dense joint evaluation is limited to d <= " << kDenseMaxDim << ", got " << d;
        throw std::invalid_argument(msg.str());
    }
    const QuantumChannel companion = family == Family::erasure ? erasure(parameter, d) : mad(parameter, d);
    return coherent_information(tensor(platypus(mu), companion), joint_input_state(mu));
}

double GapReport::ic_best() const { return std::isnan(ic_exact) ? ic_lower : std::max(ic_exact, ic_lower); }

PlatypusBaseline PlatypusBaseline::of(const ProbabilityVector& mu, double tol) {
    return {q1_platypus(mu, tol).value, transposition_bound(mu)};
}

GapReport gap(Family family, const ProbabilityVector& mu, double parameter, GapPath path, double tol) {
    return gap(family, mu, parameter, path, PlatypusBaseline::of(mu, tol), tol);
}

GapReport gap(Family family, const ProbabilityVector& mu, double parameter, GapPath path,
              const PlatypusBaseline& baseline, double tol) {
    const int d = mu.dim();
    check_parameter(parameter, family == Family::erasure ? "erasure probability" : "damping rate");
    if (family == Family::mad) check_mad_dim(d);

    GapReport r;
    r.family = family;
    r.d = d;
    r.mu.assign(mu.entries().begin(), mu.entries().end());
    r.parameter = parameter;
    r.q1_platypus = baseline.q1;
    r.q_upper_platypus = baseline.q_upper;

    if (family == Family::erasure) {
        r.q_single = q_erasure(parameter, d).value;
        r.ic_lower = ic_joint_erasure_lower(mu, parameter);
    } else {
        r.q_single = q_mad(parameter, d, tol).value;
        r.ic_lower = ic_joint_mad_lower(mu, parameter);
    }

    r.path = path == GapPath::dense && d > kDenseMaxDim ? GapPath::exact_spectra : path;
    switch (r.path) {
        case GapPath::exact_spectra:
            r.ic_exact = family == Family::erasure ? ic_joint_erasure_exact(mu, parameter)
                                                   : ic_joint_mad_exact(mu, parameter);
            break;
        case GapPath::dense: r.ic_exact = ic_joint_dense(family, mu, parameter); break;
        case GapPath::closed_form_bound: r.ic_exact = std::numeric_limits<double>::quiet_NaN(); break;
    }

    const double ic = r.ic_best();
    r.gap_q = ic - r.q_single - r.q_upper_platypus;
    r.gap_q1 = ic - r.q_single - r.q1_platypus;
    r.superadd_q = r.gap_q > 0.0;
    r.superadd_q1 = r.gap_q1 > 0.0;
    return r;
}

FillRule uniform_remainder_fill() {
    return {"uniform_remainder", [](int d, double mu_max) {
                if (d < 1) throw std::invalid_argument("fill rule needs d >= 1");
                if (!(mu_max <= 1.0) || mu_max < 1.0 / d - 1e-12) {
                    std::ostringstream msg;
                    msg << "mu_max = " << mu_max << " is infeasible for d = " << d << " (needs 1/d <= mu_max <= 1)";
                    throw std::invalid_argument(msg.str());
                }
                if (d == 1) return ProbabilityVector({1.0});
                const double top = std::max(mu_max, 1.0 / d);
                std::vector<double> entries(static_cast<std::size_t>(d - 1), (1.0 - top) / (d - 1));
                entries.push_back(top);
                return ProbabilityVector::normalized(std::move(entries), 1e-12);
            }};
}

namespace {

template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), count);
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count && !failed; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

void check_grid(const std::vector<double>& grid, const char* name) {
    if (grid.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument(std::string(name) + " grid is not increasing");
    }
}

// Boundary of one verdict along a row, or nothing when no point qualifies.
std::pair<std::optional<double>, std::optional<double>> row_boundary(
    const std::vector<double>& grid, const std::vector<bool>& inside, const std::function<bool(double)>& test,
    double refine_tol, const std::string& label) {
    const auto first = std::find(inside.begin(), inside.end(), true);
    if (first == inside.end()) return {std::nullopt, std::nullopt};
    const auto last_rev = std::find(inside.rbegin(), inside.rend(), true);
    const std::size_t lo_idx = static_cast<std::size_t>(first - inside.begin());
    const std::size_t hi_idx = inside.size() - 1 - static_cast<std::size_t>(last_rev - inside.rbegin());
    for (std::size_t i = lo_idx; i <= hi_idx; ++i) {
        if (!inside[i]) {
            std::ostringstream msg;
            msg << label << ": super-additive grid points do not form an interval (gap at parameter " << grid[i]
                << "); boundary refinement needs a single region";
            throw std::runtime_error(msg.str());
        }
    }
    // `in` is known inside, `out` known outside; returns a point inside within refine_tol of the edge.
    const auto refine = [&](double in, double out) {
        while (std::abs(in - out) > refine_tol) {
            const double mid = 0.5 * (in + out);
            (test(mid) ? in : out) = mid;
        }
        return in;
    };
    const double lo = lo_idx == 0 ? grid.front() : refine(grid[lo_idx], grid[lo_idx - 1]);
    const double hi = hi_idx + 1 == grid.size() ? grid.back() : refine(grid[hi_idx], grid[hi_idx + 1]);
    return {lo, hi};
}

}  // namespace

RegionTable region_scan(Family family, int d, const std::vector<double>& mu_max_grid,
                        const std::vector<double>& parameter_grid, const FillRule& fill, const ScanOptions& options) {
    check_grid(mu_max_grid, "mu_max");
    check_grid(parameter_grid, "parameter");
    if (parameter_grid.front() < 0.0 || parameter_grid.back() > 1.0) {
        throw std::invalid_argument("parameter grid must lie in [0, 1]");
    }
    if (family == Family::mad) check_mad_dim(d);

    const std::size_t rows = mu_max_grid.size();
    const std::size_t cols = parameter_grid.size();
    std::vector<ProbabilityVector> mus;
    mus.reserve(rows);
    for (const double m : mu_max_grid) mus.push_back(fill.build(d, m));

    std::vector<PlatypusBaseline> baselines(rows);
    parallel_for(rows, options.workers, [&](std::size_t r) { baselines[r] = PlatypusBaseline::of(mus[r], options.tol); });

    RegionTable table;
    table.fill_rule = fill.name;
    table.points.resize(rows * cols);
    parallel_for(rows * cols, options.workers, [&](std::size_t k) {
        const std::size_t r = k / cols;
        const std::size_t c = k % cols;
        table.points[k] = gap(family, mus[r], parameter_grid[c], options.path, baselines[r], options.tol);
    });

    table.boundaries.resize(rows);
    parallel_for(rows, options.workers, [&](std::size_t r) {
        std::vector<bool> in_q(cols);
        std::vector<bool> in_q1(cols);
        for (std::size_t c = 0; c < cols; ++c) {
            in_q[c] = table.points[r * cols + c].superadd_q;
            in_q1[c] = table.points[r * cols + c].superadd_q1;
        }
        const auto eval = [&](double p) { return gap(family, mus[r], p, options.path, baselines[r], options.tol); };
        std::ostringstream label;
        label << to_string(family) << " d=" << d << " mu_max=" << mu_max_grid[r];
        BoundaryRow row;
        row.family = family;
        row.d = d;
        row.mu_max = mu_max_grid[r];
        std::tie(row.param_min_q, row.param_max_q) = row_boundary(
            parameter_grid, in_q, [&](double p) { return eval(p).superadd_q; }, options.refine_tol, label.str() + " (Q)");
        std::tie(row.param_min_q1, row.param_max_q1) =
            row_boundary(parameter_grid, in_q1, [&](double p) { return eval(p).superadd_q1; }, options.refine_tol,
                         label.str() + " (Q1)");
        table.boundaries[r] = row;
    });
    return table;
}

}  // namespace qcap
