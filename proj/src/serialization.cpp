#include "qcap/serialization.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcap {

namespace {

Json number_or_null(double x) { return std::isnan(x) ? Json(nullptr) : Json(x); }

double number_or_nan(const Json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("JSON document lacks \"") + key + "\"");
    return j.at(key);
}

BoundKind parse_bound(const std::string& s) {
    if (s == "transposition") return BoundKind::transposition;
    if (s == "beta") return BoundKind::beta;
    throw std::invalid_argument("unknown bound '" + s + "' (expected transposition or beta)");
}

const Matrix& named(const std::vector<NamedMatrix>& list, const char* name) {
    for (const NamedMatrix& m : list)
        if (m.name == name) return m.value;
    throw std::invalid_argument(std::string("certificate lacks matrix ") + name);
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a nonempty list of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.front().size());
    if (cols == 0) throw std::invalid_argument("matrix rows must be nonempty");
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw std::invalid_argument("matrix rows must all have the same length");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            const Json& z = row[static_cast<std::size_t>(k)];
            if (!z.is_array() || z.size() != 2) throw std::invalid_argument("matrix entries must be [re, im] pairs");
            m(i, k) = Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    return m;
}

Json channel_to_json(const QuantumChannel& n) {
    Json kraus = Json::array();
    for (const Matrix& k : n.kraus()) kraus.push_back(matrix_to_json(k));
    return {{"family", n.family()},
            {"params", n.params()},
            {"dA", n.input_dim()},
            {"dB", n.output_dim()},
            {"dE", n.env_dim()},
            {"basis_order", "computational"},
            {"kraus", std::move(kraus)}};
}

QuantumChannel channel_from_json(const Json& j) {
    std::vector<Matrix> kraus;
    for (const Json& k : require(j, "kraus")) kraus.push_back(matrix_from_json(k));
    QuantumChannel::Params params;
    if (j.contains("params")) params = j.at("params").get<QuantumChannel::Params>();
    const std::string family = j.value("family", std::string("custom"));
    QuantumChannel n(std::move(kraus), family, std::move(params));
    const auto expect = [&](const char* key, int value) {
        if (j.contains(key) && j.at(key).get<int>() != value) {
            std::ostringstream msg;
            msg << "channel document declares " << key << " = " << j.at(key).get<int>() << " but Kraus operators give "
                << value;
            throw std::invalid_argument(msg.str());
        }
    };
    expect("dA", n.input_dim());
    expect("dB", n.output_dim());
    expect("dE", n.env_dim());
    return n;
}

Json certificate_to_json(const CertificateReport& report, bool with_matrices) {
    Json checks = Json::array();
    for (const CertificateCheck& c : report.checks) {
        checks.push_back({{"name", c.name}, {"margin", c.margin}, {"pass", c.pass}});
    }
    Json j = {{"bound", std::string(to_string(report.bound))},
              {"bound_value", number_or_null(report.bound_value)},
              {"certified", report.certified},
              {"checks", std::move(checks)},
              {"warnings", report.warnings}};
    if (with_matrices) {
        Json matrices = Json::object();
        for (const NamedMatrix& m : report.matrices) matrices[m.name] = matrix_to_json(m.value);
        j["matrices"] = std::move(matrices);
    }
    return j;
}

CertificateReport certificate_from_json(const Json& j) {
    CertificateReport report;
    report.bound = parse_bound(require(j, "bound").get<std::string>());
    report.bound_value = number_or_nan(require(j, "bound_value"));
    report.certified = j.value("certified", false);
    if (j.contains("checks")) {
        for (const Json& c : j.at("checks")) {
            report.checks.push_back({c.at("name").get<std::string>(), number_or_nan(c.at("margin")), c.at("pass").get<bool>()});
        }
    }
    if (j.contains("warnings")) report.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (j.contains("matrices")) {
        for (const auto& [name, m] : j.at("matrices").items()) report.matrices.push_back({name, matrix_from_json(m)});
    }
    return report;
}

CertificateReport verify_external_certificate(const QuantumChannel& n, const Json& certificate, double tol) {
    const CertificateReport stored = certificate_from_json(certificate);
    if (stored.bound == BoundKind::transposition) {
        return verify_transposition_feasible_point(n, named(stored.matrices, "Y_ab"), named(stored.matrices, "Z_ab"), tol);
    }
    return verify_beta_feasible_point(n, named(stored.matrices, "R_ab"), named(stored.matrices, "S_b"), tol);
}

Json summary_to_json(const CapacitySummary& s) {
    return {{"mu", s.mu},
            {"q1", s.q1},
            {"u_star", s.u_star},
            {"q_upper", s.q_upper},
            {"transposition_certified", s.transposition_certified},
            {"beta_certified", s.beta_certified},
            {"p", number_or_null(s.p)},
            {"c", number_or_null(s.c)},
            {"ce", s.ce},
            {"ce_stationary", s.ce_stationary}};
}

Json gap_to_json(const GapReport& g) {
    return {{"family", std::string(to_string(g.family))},
            {"d", g.d},
            {"mu", g.mu},
            {"param", g.parameter},
            {"ic_exact", number_or_null(g.ic_exact)},
            {"ic_lower", g.ic_lower},
            {"q_single", g.q_single},
            {"q1_platypus", g.q1_platypus},
            {"q_upper", g.q_upper_platypus},
            {"gap_q", g.gap_q},
            {"gap_q1", g.gap_q1},
            {"superadd_q", g.superadd_q},
            {"superadd_q1", g.superadd_q1},
            {"path", std::string(to_string(g.path))}};
}

}  // namespace qcap
