// Command-line front end. Everything is callable in-process; tools/qcap.cpp
// only forwards argv to run().

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qcap/channels.hpp"
#include "qcap/superadd.hpp"

namespace qcap::cli {

/// Largest |sum(mu) - 1| accepted before renormalizing.
inline constexpr double kMuNormalizationSlack = 1e-6;

struct RunConfig {
    std::string command;
    std::string target;
    std::string mu;               ///< comma list; takes precedence over d / mu_max
    std::string d;                ///< "N", "a:b" or comma list (scan)
    std::string mu_max;           ///< number, grid, or "uniform"
    std::string fill = "uniform";
    std::string param;            ///< lambda or gamma; number or grid (scan)
    double tol = 1e-9;
    GapPath path = GapPath::exact_spectra;
    double refine_tol = 1e-4;
    int workers = 1;
    std::string out;              ///< file for JSON output, directory for scan
    std::string dump;
    std::string channel_file;
    std::string certificate_file;
};

/// 1e-9 unless QCAP_TOL holds a positive number.
double default_tolerance();

ProbabilityVector parse_mu(std::string_view text);
/// "a:b:step" (endpoints included, points computed by index) or a comma list.
std::vector<double> parse_grid(std::string_view text);
/// "a:b" inclusive range or a comma list.
std::vector<int> parse_dims(std::string_view text);
FillRule parse_fill_rule(std::string_view name);

/// mu from --mu, or from --d, --mu-max and --fill.
ProbabilityVector resolve_mu(const RunConfig& config);

/// %.12g; NaN becomes an empty cell.
std::string format_number(double x);

inline constexpr std::string_view kPointsHeader =
    "family,d,mu_max,param,ic_exact,ic_lower,q_single,q1_platypus,q_upper,gap_q,gap_q1,superadd_q,superadd_q1,path";
inline constexpr std::string_view kBoundariesHeader =
    "family,d,mu_max,param_min_q,param_max_q,param_min_q1,param_max_q1";

void write_points_csv(std::ostream& os, const std::vector<GapReport>& points);
void write_boundaries_csv(std::ostream& os, const std::vector<BoundaryRow>& rows);

/// One region_scan per dimension, concatenated in dimension order.
RegionTable scan_tables(const RunConfig& config);

int cmd_summary(const RunConfig& config, std::ostream& out);
int cmd_certify(const RunConfig& config, std::ostream& out);
int cmd_q1(const RunConfig& config, std::ostream& out);
int cmd_gap(const RunConfig& config, std::ostream& out);
/// Writes points.csv, boundaries.csv and scan.json into config.out.
int cmd_scan(const RunConfig& config, std::ostream& out);
int cmd_channel(const RunConfig& config, std::ostream& out);

/// Parses argv and dispatches. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcap::cli
