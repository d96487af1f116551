#include "qcap/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "qcap/capacities.hpp"
#include "qcap/certificates.hpp"
#include "qcap/serialization.hpp"

namespace qcap::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view text) {
    const std::string_view t = trim(text);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || end != t.data() + t.size() || !std::isfinite(value)) {
        throw std::invalid_argument("cannot parse number '" + std::string(text) + "'");
    }
    return value;
}

int parse_int(std::string_view text) {
    const std::string_view t = trim(text);
    int value = 0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || end != t.data() + t.size()) {
        throw std::invalid_argument("cannot parse integer '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

int single_dim(const RunConfig& config) {
    if (config.d.empty()) throw std::invalid_argument("--d is required");
    const std::vector<int> dims = parse_dims(config.d);
    if (dims.size() != 1) throw std::invalid_argument("this command takes a single --d");
    return dims.front();
}

double single_param(const RunConfig& config) {
    if (config.param.empty()) throw std::invalid_argument("--param (or --lambda / --gamma) is required");
    return parse_double(config.param);
}

void emit(const RunConfig& config, const Json& j, std::ostream& out) {
    if (config.out.empty()) {
        out << j.dump(2) << '\n';
        return;
    }
    std::ofstream file(config.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + config.out);
    file << j.dump(2) << '\n';
    if (!file) throw std::runtime_error("failed writing " + config.out);
}

Json read_json(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot read " + path);
    return Json::parse(file);
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    file << contents;
    if (!file) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

double default_tolerance() {
    const char* env = std::getenv("QCAP_TOL");
    if (env == nullptr || *env == '\0') return 1e-9;
    const double tol = parse_double(env);
    if (!(tol > 0.0)) throw std::invalid_argument("QCAP_TOL must be positive");
    return tol;
}

ProbabilityVector parse_mu(std::string_view text) {
    std::vector<double> values;
    for (const std::string_view part : split(text, ',')) values.push_back(parse_double(part));
    return ProbabilityVector::normalized(std::move(values), kMuNormalizationSlack);
}

std::vector<double> parse_grid(std::string_view text) {
    std::vector<double> grid;
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw std::invalid_argument("grid must look like start:stop:step");
        const double a = parse_double(parts[0]);
        const double b = parse_double(parts[1]);
        const double step = parse_double(parts[2]);
        if (!(step > 0.0) || !(b >= a)) throw std::invalid_argument("grid needs stop >= start and step > 0");
        const long n = std::lround((b - a) / step);
        if (std::abs(a + n * step - b) > 1e-9 * std::max(1.0, std::abs(b))) {
            throw std::invalid_argument("grid step does not divide stop - start");
        }
        for (long k = 0; k <= n; ++k) grid.push_back(n == 0 ? a : a + (b - a) * static_cast<double>(k) / n);
    } else {
        for (const std::string_view part : split(text, ',')) grid.push_back(parse_double(part));
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("grid must be strictly increasing");
    }
    return grid;
}

std::vector<int> parse_dims(std::string_view text) {
    std::vector<int> dims;
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 2) throw std::invalid_argument("dimension range must look like first:last");
        const int a = parse_int(parts[0]);
        const int b = parse_int(parts[1]);
        if (b < a) throw std::invalid_argument("dimension range is empty");
        for (int d = a; d <= b; ++d) dims.push_back(d);
    } else {
        for (const std::string_view part : split(text, ',')) dims.push_back(parse_int(part));
    }
    for (const int d : dims)
        if (d < 1) throw std::invalid_argument("dimensions must be positive");
    return dims;
}

FillRule parse_fill_rule(std::string_view name) {
    if (name == "uniform" || name == "uniform_remainder") return uniform_remainder_fill();
    throw std::invalid_argument("unknown fill rule '" + std::string(name) + "' (expected uniform)");
}

ProbabilityVector resolve_mu(const RunConfig& config) {
    if (!config.mu.empty()) return parse_mu(config.mu);
    if (config.d.empty() || config.mu_max.empty()) {
        throw std::invalid_argument("give --mu, or --d together with --mu-max");
    }
    const int d = single_dim(config);
    const double mu_max = config.mu_max == "uniform" ? 1.0 / d : parse_double(config.mu_max);
    return parse_fill_rule(config.fill).build(d, mu_max);
}

std::string format_number(double x) {
    if (std::isnan(x)) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_points_csv(std::ostream& os, const std::vector<GapReport>& points) {
    os << kPointsHeader << '\n';
    for (const GapReport& p : points) {
        const double mu_max = p.mu.empty() ? std::numeric_limits<double>::quiet_NaN() : p.mu.back();
        os << to_string(p.family) << ',' << p.d << ',' << format_number(mu_max) << ',' << format_number(p.parameter)
           << ',' << format_number(p.ic_exact) << ',' << format_number(p.ic_lower) << ','
           << format_number(p.q_single) << ',' << format_number(p.q1_platypus) << ','
           << format_number(p.q_upper_platypus) << ',' << format_number(p.gap_q) << ',' << format_number(p.gap_q1)
           << ',' << (p.superadd_q ? 1 : 0) << ',' << (p.superadd_q1 ? 1 : 0) << ',' << to_string(p.path) << '\n';
    }
}

void write_boundaries_csv(std::ostream& os, const std::vector<BoundaryRow>& rows) {
    const auto cell = [](const std::optional<double>& x) { return x ? format_number(*x) : std::string(); };
    os << kBoundariesHeader << '\n';
    for (const BoundaryRow& r : rows) {
        os << to_string(r.family) << ',' << r.d << ',' << format_number(r.mu_max) << ',' << cell(r.param_min_q) << ','
           << cell(r.param_max_q) << ',' << cell(r.param_min_q1) << ',' << cell(r.param_max_q1) << '\n';
    }
}

RegionTable scan_tables(const RunConfig& config) {
    const Family family = parse_family(config.target);
    if (config.d.empty()) throw std::invalid_argument("--d is required");
    if (config.mu_max.empty()) throw std::invalid_argument("--mu-max is required");
    if (config.param.empty()) throw std::invalid_argument("--param (or --lambda / --gamma) is required");
    const std::vector<int> dims = parse_dims(config.d);
    const std::vector<double> params = parse_grid(config.param);
    const FillRule fill = parse_fill_rule(config.fill);
    ScanOptions options;
    options.path = config.path;
    options.tol = config.tol;
    options.refine_tol = config.refine_tol;
    options.workers = config.workers;

    RegionTable all;
    all.fill_rule = fill.name;
    for (const int d : dims) {
        const std::vector<double> mu_max =
            config.mu_max == "uniform" ? std::vector<double>{1.0 / d} : parse_grid(config.mu_max);
        RegionTable t = region_scan(family, d, mu_max, params, fill, options);
        all.points.insert(all.points.end(), t.points.begin(), t.points.end());
        all.boundaries.insert(all.boundaries.end(), t.boundaries.begin(), t.boundaries.end());
    }
    return all;
}

int cmd_summary(const RunConfig& config, std::ostream& out) {
    emit(config, summary_to_json(capacity_summary(resolve_mu(config), config.tol)), out);
    return 0;
}

int cmd_certify(const RunConfig& config, std::ostream& out) {
    CertificateReport report;
    if (!config.certificate_file.empty() || !config.channel_file.empty()) {
        if (config.certificate_file.empty() || config.channel_file.empty()) {
            throw std::invalid_argument("--channel and --certificate must be given together");
        }
        const QuantumChannel n = channel_from_json(read_json(config.channel_file));
        Json cert = read_json(config.certificate_file);
        if (cert.value("bound", std::string()) != config.target) {
            throw std::invalid_argument("certificate file is not a " + config.target + " certificate");
        }
        report = verify_external_certificate(n, cert, config.tol);
    } else {
        const ProbabilityVector mu = resolve_mu(config);
        report = config.target == "transposition" ? verify_transposition_certificate(mu, config.tol)
                                                  : verify_beta_certificate(mu, config.tol);
    }
    if (!config.dump.empty()) {
        std::ofstream file(config.dump, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write " + config.dump);
        file << certificate_to_json(report, true).dump(2) << '\n';
    }
    emit(config, certificate_to_json(report, false), out);
    return 0;
}

int cmd_q1(const RunConfig& config, std::ostream& out) {
    Json j = {{"family", config.target}};
    CapacityResult r;
    if (config.target == "platypus") {
        const ProbabilityVector mu = resolve_mu(config);
        r = q1_platypus(mu, config.tol);
        j["mu"] = std::vector<double>(mu.entries().begin(), mu.entries().end());
    } else {
        const int d = single_dim(config);
        const double p = single_param(config);
        r = config.target == "mad" ? q_mad(p, d, config.tol) : q_erasure(p, d);
        j["d"] = d;
        j["param"] = p;
    }
    j["value"] = r.value;
    j["argmax"] = r.argmax ? Json(*r.argmax) : Json(nullptr);
    j["method"] = std::string(to_string(r.method));
    emit(config, j, out);
    return 0;
}

int cmd_gap(const RunConfig& config, std::ostream& out) {
    const GapReport g =
        gap(parse_family(config.target), resolve_mu(config), single_param(config), config.path, config.tol);
    emit(config, gap_to_json(g), out);
    return 0;
}

int cmd_scan(const RunConfig& config, std::ostream& out) {
    if (config.out.empty()) throw std::invalid_argument("scan needs --out DIR");
    const RegionTable table = scan_tables(config);

    std::ostringstream points;
    std::ostringstream boundaries;
    write_points_csv(points, table.points);
    write_boundaries_csv(boundaries, table.boundaries);
    // Worker count is left out so the metadata is identical across reruns.
    const Json meta = {{"family", config.target},
                       {"d", config.d},
                       {"mu_max", config.mu_max},
                       {"param", config.param},
                       {"fill_rule", table.fill_rule},
                       {"path", std::string(to_string(config.path))},
                       {"tol", config.tol},
                       {"refine_tol", config.refine_tol},
                       {"points", "points.csv"},
                       {"boundaries", "boundaries.csv"}};

    const std::filesystem::path dir(config.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    write_file(dir / "points.csv", points.str());
    write_file(dir / "boundaries.csv", boundaries.str());
    write_file(dir / "scan.json", meta.dump(2) + "\n");
    out << "wrote " << table.points.size() << " points and " << table.boundaries.size() << " boundary rows to "
        << dir.string() << '\n';
    return 0;
}

int cmd_channel(const RunConfig& config, std::ostream& out) {
    if (config.target == "platypus") {
        emit(config, channel_to_json(platypus(resolve_mu(config))), out);
    } else {
        const int d = single_dim(config);
        const double p = single_param(config);
        emit(config, channel_to_json(config.target == "erasure" ? erasure(p, d) : mad(p, d)), out);
    }
    return 0;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    std::string path_name = "exact_spectra";
    std::optional<double> tol_flag;

    CLI::App app{"Capacity bounds and super-additivity scans for the platypus channel family"};
    app.require_subcommand(1);

    const auto add_mu = [&](CLI::App* sub) {
        sub->add_option("--mu", config.mu, "comma-separated probability vector");
        sub->add_option("--d", config.d, "dimension (scan: first:last or a comma list)");
        sub->add_option("--mu-max", config.mu_max, "largest entry of mu, or 'uniform'");
        sub->add_option("--fill", config.fill, "fill rule for the remaining entries")->capture_default_str();
    };
    const auto add_param = [&](CLI::App* sub) {
        sub->add_option("--param,--lambda,--gamma", config.param, "companion channel parameter");
    };
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tol", tol_flag, "numerical tolerance (default: QCAP_TOL or 1e-9)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", config.out, "output file (scan: output directory)");
    };
    const auto add_target = [&](CLI::App* sub, std::vector<std::string> choices) {
        sub->add_option("target", config.target)->required()->check(CLI::IsMember(std::move(choices)));
    };

    CLI::App* summary = app.add_subcommand("summary", "single-channel capacity summary as JSON");
    add_mu(summary);
    add_common(summary);

    CLI::App* certify = app.add_subcommand("certify", "verify a transposition or beta certificate");
    add_target(certify, {"transposition", "beta"});
    add_mu(certify);
    add_common(certify);
    certify->add_option("--dump", config.dump, "write the full certificate with matrices to this file");
    certify->add_option("--channel", config.channel_file, "channel JSON for an external certificate");
    certify->add_option("--certificate", config.certificate_file, "external certificate JSON");

    CLI::App* q1 = app.add_subcommand("q1", "single-letter coherent information");
    add_target(q1, {"platypus", "mad", "erasure"});
    add_mu(q1);
    add_param(q1);
    add_common(q1);

    CLI::App* gap_cmd = app.add_subcommand("gap", "super-additivity gap at one point");
    add_target(gap_cmd, {"erasure", "mad"});
    add_mu(gap_cmd);
    add_param(gap_cmd);
    add_common(gap_cmd);
    gap_cmd->add_option("--path", path_name, "exact_spectra, closed_form_bound or dense")->capture_default_str();

    CLI::App* scan = app.add_subcommand("scan", "region scan written as CSV");
    add_target(scan, {"erasure", "mad"});
    add_mu(scan);
    add_param(scan);
    add_common(scan);
    scan->add_option("--path", path_name, "exact_spectra, closed_form_bound or dense")->capture_default_str();
    scan->add_option("--workers", config.workers, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    scan->add_option("--refine-tol", config.refine_tol, "bisection width for region boundaries")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    CLI::App* channel = app.add_subcommand("channel", "dump a channel's Kraus operators as JSON");
    add_target(channel, {"platypus", "erasure", "mad"});
    add_mu(channel);
    add_param(channel);
    add_common(channel);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        config.command = app.get_subcommands().front()->get_name();
        config.tol = tol_flag ? *tol_flag : default_tolerance();
        config.path = parse_gap_path(path_name);
        if (config.command == "summary") return cmd_summary(config, out);
        if (config.command == "certify") return cmd_certify(config, out);
        if (config.command == "q1") return cmd_q1(config, out);
        if (config.command == "gap") return cmd_gap(config, out);
        if (config.command == "scan") return cmd_scan(config, out);
        return cmd_channel(config, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qcap::cli
