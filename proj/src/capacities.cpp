#include "qcap/capacities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qcap {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::scan_1d: return "scan_1d";
        case Method::certificate: return "certificate";
    }
    return "unknown";
}

Ensemble::Ensemble(std::vector<std::pair<double, DensityMatrix>> members) : members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("ensemble must be nonempty");
    const int dim = members_.front().second.dim();
    double total = 0.0;
    for (const auto& [p, rho] : members_) {
        if (!(p >= 0.0)) throw std::invalid_argument("ensemble weights must be nonnegative");
        if (rho.dim() != dim) throw std::invalid_argument("ensemble states must share one dimension");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "ensemble weights sum to " << total;
        throw std::invalid_argument(msg.str());
    }
}

DensityMatrix Ensemble::average() const {
    const int dim = members_.front().second.dim();
    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto& [p, rho] : members_) sum += p * rho.matrix();
    return DensityMatrix::trusted(std::move(sum));
}

double coherent_information(const QuantumChannel& n, const DensityMatrix& rho) {
    const DensityMatrix out = apply(n, rho);
    const DensityMatrix env = apply(complement(n), rho);
    return matrix_entropy(out.matrix()) - matrix_entropy(env.matrix());
}

double private_information(const QuantumChannel& n, const Ensemble& ensemble) {
    // Build the complement once; every member reuses it.
    const QuantumChannel nc = complement(n);
    const auto ic = [&](const DensityMatrix& rho) {
        return matrix_entropy(apply(n, rho).matrix()) - matrix_entropy(apply(nc, rho).matrix());
    };
    double value = ic(ensemble.average());
    for (const auto& [p, rho] : ensemble.members()) value -= p * ic(rho);
    return value;
}

double holevo(const QuantumChannel& n, const Ensemble& ensemble) {
    double value = matrix_entropy(apply(n, ensemble.average()).matrix());
    for (const auto& [p, rho] : ensemble.members()) value -= p * matrix_entropy(apply(n, rho).matrix());
    return value;
}

double mutual_information(const QuantumChannel& n, const DensityMatrix& rho) {
    return matrix_entropy(rho.matrix()) + coherent_information(n, rho);
}

Maximum maximize_unit_interval(const std::function<double(double)>& f, double tol, int grid_points) {
    if (grid_points < 2) throw std::invalid_argument("maximize_unit_interval needs at least two grid points");
    if (!(tol > 0.0)) throw std::invalid_argument("maximize_unit_interval needs tol > 0");
    const int n = grid_points - 1;
    const auto grid = [n](int k) { return static_cast<double>(k) / n; };

    Maximum best{f(0.0), 0.0};
    int best_k = 0;
    for (int k = 1; k <= n; ++k) {
        const double v = f(grid(k));
        if (v > best.value) {
            best = {v, grid(k)};
            best_k = k;
        }
    }

    double lo = grid(std::max(best_k - 1, 0));
    double hi = grid(std::min(best_k + 1, n));
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    const double u = 0.5 * (lo + hi);
    const double v = f(u);
    if (v > best.value) best = {v, u};
    return best;
}

double platypus_diagonal_ic(const ProbabilityVector& mu, double u) {
    const int d = mu.dim();
    std::vector<double> out(static_cast<std::size_t>(d) + 1);
    std::vector<double> env(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        out[static_cast<std::size_t>(j)] = (1.0 - u) * mu[j];
        env[static_cast<std::size_t>(j)] = (1.0 - u) * mu[j];
    }
    out.back() = u;
    env.back() += u;
    return von_neumann_entropy(out) - von_neumann_entropy(env);
}

CapacityResult q1_platypus(const ProbabilityVector& mu, double tol) {
    const Maximum m = maximize_unit_interval([&](double u) { return platypus_diagonal_ic(mu, u); }, tol);
    return {m.value, m.argmax, Method::scan_1d};
}

CapacityResult q_erasure(double lambda, int d) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("erasure probability must lie in [0, 1]");
    if (d < 1) throw std::invalid_argument("erasure dimension must be positive");
    return {std::max((1.0 - 2.0 * lambda) * std::log2(static_cast<double>(d)), 0.0), std::nullopt,
            Method::closed_form};
}

double mad_diagonal_ic(double gamma, int d, std::span<const double> diagonal) {
    if (static_cast<int>(diagonal.size()) != d) throw std::invalid_argument("mad_diagonal_ic: wrong input length");
    const double p0 = diagonal[0];
    const double excited = std::accumulate(diagonal.begin() + 1, diagonal.end(), 0.0);
    std::vector<double> out(static_cast<std::size_t>(d));
    std::vector<double> env(static_cast<std::size_t>(d));
    out[0] = p0 + gamma * excited;
    env[0] = p0 + (1.0 - gamma) * excited;
    for (int j = 1; j < d; ++j) {
        out[static_cast<std::size_t>(j)] = (1.0 - gamma) * diagonal[static_cast<std::size_t>(j)];
        env[static_cast<std::size_t>(j)] = gamma * diagonal[static_cast<std::size_t>(j)];
    }
    return von_neumann_entropy(out) - von_neumann_entropy(env);
}

namespace {

// Grid over the probability simplex followed by a pairwise mass-transfer
// pattern search. Only meant for small d.
Maximum maximize_over_simplex(const std::function<double(std::span<const double>)>& f, int d, double tol) {
    const int steps = d <= 2 ? 2000 : d == 3 ? 200 : 60;
    std::vector<double> p(static_cast<std::size_t>(d));
    std::vector<double> best_p(p.size());
    double best = -std::numeric_limits<double>::infinity();

    std::vector<int> counts(static_cast<std::size_t>(d), 0);
    const std::function<void(int, int)> enumerate = [&](int pos, int remaining) {
        if (pos == d - 1) {
            counts[static_cast<std::size_t>(pos)] = remaining;
            for (int i = 0; i < d; ++i)
                p[static_cast<std::size_t>(i)] = static_cast<double>(counts[static_cast<std::size_t>(i)]) / steps;
            const double v = f(p);
            if (v > best) {
                best = v;
                best_p = p;
            }
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[static_cast<std::size_t>(pos)] = c;
            enumerate(pos + 1, remaining - c);
        }
    };
    enumerate(0, steps);

    double step = 1.0 / steps;
    while (step > tol) {
        bool improved = false;
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                if (i == j) continue;
                const double move = std::min(step, best_p[static_cast<std::size_t>(j)]);
                if (move <= 0.0) continue;
                p = best_p;
                p[static_cast<std::size_t>(i)] += move;
                p[static_cast<std::size_t>(j)] -= move;
                const double v = f(p);
                if (v > best) {
                    best = v;
                    best_p = p;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return {best, best_p[0]};
}

}  // namespace

CapacityResult q_mad(double gamma, int d, double tol, MadSearch search) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("damping rate must lie in [0, 1]");
    if (d < 2) throw std::invalid_argument("amplitude damping capacity needs d >= 2");
    if (gamma >= 0.5) return {0.0, std::nullopt, Method::closed_form};

    if (search == MadSearch::full_simplex) {
        if (d > 4) throw std::invalid_argument("full simplex search is limited to d <= 4");
        const Maximum m =
            maximize_over_simplex([&](std::span<const double> p) { return mad_diagonal_ic(gamma, d, p); }, d, tol);
        return {std::max(m.value, 0.0), m.argmax, Method::scan_1d};
    }

    std::vector<double> diag(static_cast<std::size_t>(d));
    const auto objective = [&](double u) {
        diag[0] = u;
        std::fill(diag.begin() + 1, diag.end(), (1.0 - u) / (d - 1));
        return mad_diagonal_ic(gamma, d, diag);
    };
    const Maximum m = maximize_unit_interval(objective, tol);
    return {std::max(m.value, 0.0), m.argmax, Method::scan_1d};
}

Ensemble platypus_private_ensemble(const ProbabilityVector& mu) {
    const int d = mu.dim();
    std::vector<double> zero(static_cast<std::size_t>(d) + 1, 0.0);
    zero[0] = 1.0;
    std::vector<double> spread(static_cast<std::size_t>(d) + 1, 0.0);
    for (int i = 1; i <= d; ++i) spread[static_cast<std::size_t>(i)] = mu[i - 1];
    std::vector<std::pair<double, DensityMatrix>> members;
    members.emplace_back(0.5, DensityMatrix::diagonal(zero));
    members.emplace_back(0.5, DensityMatrix::diagonal(spread));
    return Ensemble(std::move(members));
}

DensityMatrix platypus_assisted_state(const ProbabilityVector& mu) {
    return platypus_private_ensemble(mu).average();
}

StationarityReport assisted_capacity_stationarity(const ProbabilityVector& mu, double eps, double tol) {
    const QuantumChannel n = platypus(mu);
    const DensityMatrix candidate = platypus_assisted_state(mu);
    const int dim = candidate.dim();

    std::vector<Matrix> targets;
    for (int i = 0; i < dim; ++i) targets.push_back(matrix_unit(dim, i, i));
    targets.push_back(Matrix::Identity(dim, dim) / static_cast<double>(dim));
    std::mt19937_64 rng(20240917);
    std::normal_distribution<double> normal;
    for (int k = 0; k < 2 * dim; ++k) {
        Vector v(dim);
        for (int i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
        v.normalize();
        targets.push_back(v * v.adjoint());
    }

    StationarityReport report;
    report.value = mutual_information(n, candidate);
    report.max_increase = -std::numeric_limits<double>::infinity();
    for (const Matrix& t : targets) {
        const DensityMatrix moved = DensityMatrix::trusted((1.0 - eps) * candidate.matrix() + eps * t);
        report.max_increase = std::max(report.max_increase, mutual_information(n, moved) - report.value);
        ++report.directions;
    }
    report.stationary = report.max_increase <= tol;
    return report;
}

}  // namespace qcap
