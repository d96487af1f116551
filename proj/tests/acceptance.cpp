// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcap/capacities.hpp"
#include "qcap/certificates.hpp"
#include "qcap/cli.hpp"
#include "qcap/superadd.hpp"

using namespace qcap;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail << "first failure: " << what << "; ";
            pass = false;
        }
    }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", seconds_since(t0));
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " [" << timing << "] "
              << o.detail.str() << std::endl;
    if (!o.pass) ++failures;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// The 100 draws shared by criteria 1 and 2; every d in 2..30 appears.
std::vector<ProbabilityVector> draws() {
    std::mt19937_64 rng(20240601);
    std::vector<ProbabilityVector> out;
    for (int k = 0; k < 100; ++k) out.emplace_back(oracle::random_mu(rng, 2 + k % 29));
    return out;
}

std::vector<double> grid(double a, double b, int n) {
    std::vector<double> g;
    for (int k = 0; k <= n; ++k) g.push_back(a + (b - a) * k / n);
    return g;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

int main() {
    const std::vector<ProbabilityVector> mus = draws();

    report(1, "private info 1, mutual info 2, beta certificate for 100 random mu, d in 2..30", [&](Outcome& o) {
        double worst_p = 0.0;
        double worst_i = 0.0;
        double worst_eig = INFINITY;
        double worst_tr = 0.0;
        for (const ProbabilityVector& mu : mus) {
            const QuantumChannel n = platypus(mu);
            const double p = private_information(n, platypus_private_ensemble(mu));
            const double i = mutual_information(n, platypus_assisted_state(mu));
            const CertificateReport b = verify_beta_certificate(mu, 1e-9);
            worst_p = std::max(worst_p, std::abs(p - 1.0));
            worst_i = std::max(worst_i, std::abs(i - 2.0));
            for (const CertificateCheck& c : b.checks)
                if (c.name.find("psd") != std::string::npos) worst_eig = std::min(worst_eig, c.margin);
            const double tr = beta_feasible_s(mu).trace().real();
            worst_tr = std::max(worst_tr, std::abs(tr - 2.0));
            o.require(b.certified, "beta certificate rejected at d=" + std::to_string(mu.dim()));
            o.require(std::abs(b.bound_value - 1.0) <= 1e-12, "beta bound not 1");
        }
        o.require(worst_p <= 1e-9, "|P - 1| = " + fmt(worst_p));
        o.require(worst_i <= 1e-9, "|I - 2| = " + fmt(worst_i));
        o.require(worst_eig >= -1e-9, "min eigenvalue " + fmt(worst_eig));
        o.require(worst_tr <= 1e-12, "|Tr S - 2| = " + fmt(worst_tr));
        o.detail << "max|P-1|=" << fmt(worst_p) << " max|I-2|=" << fmt(worst_i) << " min eig=" << fmt(worst_eig)
                 << " max|TrS-2|=" << fmt(worst_tr);
    });

    report(2, "transposition certificate for the same mu, q1 <= bound, bound 0.5 at mu_max = 3-2sqrt2", [&](Outcome& o) {
        double worst_norm = 0.0;
        double worst_slack = -INFINITY;
        for (const ProbabilityVector& mu : mus) {
            const CertificateReport r = verify_transposition_certificate(mu, 1e-9);
            o.require(r.certified, "transposition certificate rejected at d=" + std::to_string(mu.dim()));
            const Matrix y = transposition_feasible_point(mu);
            const double norm = hermitian_spectrum(partial_trace(y, mu.dim() + 1, mu.dim() + 1, Subsystem::A)).max();
            worst_norm = std::max(worst_norm, std::abs(norm - (1.0 + std::sqrt(mu.max()))));
            o.require(std::abs(r.bound_value - std::log2(1.0 + std::sqrt(mu.max()))) <= 1e-12, "bound value");
            worst_slack = std::max(worst_slack, q1_platypus(mu).value - r.bound_value);
        }
        o.require(worst_norm <= 1e-12, "||Y_a|| off by " + fmt(worst_norm));
        o.require(worst_slack <= 1e-9, "q1 exceeds bound by " + fmt(worst_slack));
        const double m = 3.0 - 2.0 * std::sqrt(2.0);
        std::vector<double> v(6, (1.0 - m) / 5);
        v.back() = m;
        const double b = transposition_bound(ProbabilityVector::normalized(v, 1e-12));
        o.require(std::abs(b - 0.5) <= 1e-12, "bound at 3-2sqrt2 is " + fmt(b));
        o.detail << "max|norm-closed form|=" << fmt(worst_norm) << " max(q1-bound)=" << fmt(worst_slack)
                 << " bound(3-2sqrt2)=" << fmt(b);
    });

    report(3, "erasure d=10, uniform mu, lambda=1/2, lower-bound path", [&](Outcome& o) {
        const auto t0 = Clock::now();
        const GapReport g = gap(Family::erasure, ProbabilityVector::uniform(10), 0.5, GapPath::closed_form_bound);
        const double t = seconds_since(t0);
        o.require(std::abs(g.ic_lower - 0.5083) <= 1e-3, "ic_lower " + fmt(g.ic_lower));
        o.require(g.q_single == 0.0, "q_erasure " + fmt(g.q_single));
        o.require(std::abs(g.q_upper_platypus - std::log2(1 + std::sqrt(0.1))) <= 1e-12, "q_upper closed form");
        o.require(std::abs(g.q_upper_platypus - 0.3964) <= 1e-3, "q_upper " + fmt(g.q_upper_platypus));
        o.require(std::abs(g.gap_q - 0.112) <= 1e-3 && g.gap_q > 0, "gap_q " + fmt(g.gap_q));
        o.require(g.superadd_q, "superadd_q false");
        o.require(t < 1.0, "runtime " + fmt(t) + "s");
        o.detail << "ic_lower=" << fmt(g.ic_lower) << " q_upper=" << fmt(g.q_upper_platypus) << " gap_q=" << fmt(g.gap_q);
    });

    report(4, "mad uniform mu, d=2..6, gamma step 0.005, exact path: d_min^Q=5, d_min^Q1=2", [&](Outcome& o) {
        const auto t0 = Clock::now();
        int first_q = 0;
        int first_q1 = 0;
        std::ostringstream regions;
        for (int d = 2; d <= 6; ++d) {
            const RegionTable t =
                region_scan(Family::mad, d, {1.0 / d}, grid(0.0, 1.0, 200), uniform_remainder_fill(), ScanOptions{});
            const BoundaryRow& row = t.boundaries.front();
            if (!first_q && row.param_min_q) first_q = d;
            if (!first_q1 && row.param_min_q1) first_q1 = d;
            if (row.param_min_q) regions << " d" << d << ":Q[" << fmt(*row.param_min_q) << "," << fmt(*row.param_max_q) << "]";
        }
        const double t = seconds_since(t0);
        o.require(first_q == 5, "d_min^Q = " + std::to_string(first_q));
        o.require(first_q1 == 2, "d_min^Q1 = " + std::to_string(first_q1));
        o.require(t < 120.0, "runtime " + fmt(t) + "s");
        o.detail << "d_min^Q=" << first_q << " d_min^Q1=" << first_q1 << regions.str();
    });

    report(5, "uniform matrix A spectrum vs closed form, d in {2,5,10}, gamma in {0.1,0.5,0.9}", [&](Outcome& o) {
        double worst = 0.0;
        for (const int d : {2, 5, 10}) {
            for (const double gamma : {0.1, 0.5, 0.9}) {
                const Spectrum a = matrix_A_spectrum(ProbabilityVector::uniform(d), gamma);
                // Closed form written out here rather than taken from the library.
                std::vector<double> ref(static_cast<std::size_t>(d - 2), gamma / (2.0 * d * d));
                const double root = d * std::sqrt(d * d * gamma * gamma - 4 * gamma + 4);
                const double base = 2.0 * d + (d * d - 2.0 * d + 2) * gamma;
                ref.push_back((base + root) / (4.0 * d * d));
                ref.push_back((base - root) / (4.0 * d * d));
                std::sort(ref.begin(), ref.end());
                o.require(a.size() == ref.size(), "spectrum size");
                for (std::size_t i = 0; i < ref.size() && i < a.size(); ++i)
                    worst = std::max(worst, std::abs(a.values[i] - ref[i]));
            }
        }
        o.require(worst <= 1e-10, "max deviation " + fmt(worst));
        o.detail << "max deviation=" << fmt(worst);
    });

    report(6, "blockwise vs dense I_c (20 draws per family, d<=8), characteristic residual, Weyl interlacing",
           [&](Outcome& o) {
               std::mt19937_64 rng(20240602);
               std::uniform_int_distribution<int> dim(2, 8);
               std::uniform_real_distribution<double> unit(0.0, 1.0);
               double worst_ic = 0.0;
               double worst_res = 0.0;
               double worst_weyl = 0.0;
               for (const Family f : {Family::erasure, Family::mad}) {
                   for (int k = 0; k < 20; ++k) {
                       const ProbabilityVector mu(oracle::random_mu(rng, dim(rng)));
                       const double p = unit(rng);
                       const double block = f == Family::erasure ? ic_joint_erasure_exact(mu, p) : ic_joint_mad_exact(mu, p);
                       worst_ic = std::max(worst_ic, std::abs(block - ic_joint_dense(f, mu, p)));
                       const InterlacingReport w = check_weyl_interlacing(mu);
                       worst_res = std::max(worst_res, w.max_residual);
                       worst_weyl = std::max(worst_weyl, w.worst_violation);
                       o.require(w.holds, "interlacing violated by " + fmt(w.worst_violation));
                   }
               }
               o.require(worst_ic <= 1e-8, "max |block - dense| = " + fmt(worst_ic));
               o.require(worst_res <= 1e-8, "max residual = " + fmt(worst_res));
               o.detail << "max|block-dense|=" << fmt(worst_ic) << " max residual=" << fmt(worst_res)
                        << " max interlacing violation=" << fmt(worst_weyl);
           });

    report(7, "Q region inside Q1 region, lower-path region inside exact-path region, Q1 at lambda=1/2 for mu_max<0.28",
           [&](Outcome& o) {
               const FillRule fill = uniform_remainder_fill();
               std::size_t points = 0;
               std::size_t closed_form_above_exact = 0;
               const auto compare = [&](Family f, int d, const std::vector<double>& mu_max, const std::vector<double>& params) {
                   ScanOptions exact;
                   ScanOptions lower;
                   lower.path = GapPath::closed_form_bound;
                   const RegionTable te = region_scan(f, d, mu_max, params, fill, exact);
                   const RegionTable tl = region_scan(f, d, mu_max, params, fill, lower);
                   for (std::size_t i = 0; i < te.points.size(); ++i) {
                       const GapReport& e = te.points[i];
                       const GapReport& l = tl.points[i];
                       o.require(!e.superadd_q || e.superadd_q1, "Q point outside Q1 (exact)");
                       o.require(!l.superadd_q || l.superadd_q1, "Q point outside Q1 (lower)");
                       o.require(!l.superadd_q || e.superadd_q, "lower-path Q point missing from exact path");
                       o.require(!l.superadd_q1 || e.superadd_q1, "lower-path Q1 point missing from exact path");
                       if (e.ic_lower > e.ic_exact + 1e-12) ++closed_form_above_exact;
                       ++points;
                   }
                   for (const RegionTable* t : {&te, &tl}) {
                       for (const BoundaryRow& r : t->boundaries) {
                           if (!r.param_min_q) continue;
                           o.require(r.param_min_q1 && *r.param_min_q1 <= *r.param_min_q && *r.param_max_q <= *r.param_max_q1,
                                     "Q boundary outside Q1 boundary at d=" + std::to_string(d));
                       }
                   }
               };
               compare(Family::erasure, 10, grid(0.1, 0.3, 20), grid(0.0, 1.0, 100));
               for (int d = 2; d <= 6; ++d) compare(Family::mad, d, {1.0 / d}, grid(0.0, 1.0, 200));
               compare(Family::mad, 6, grid(1.0 / 6, 0.4, 10), grid(0.0, 1.0, 100));

               // Q1 at lambda = 1/2 on the lower-bound path for feasible mu_max < 0.28.
               std::ostringstream dims;
               for (const int d : {3, 10, 50}) {
                   std::size_t here = 0;
                   for (double m = 1.0 / d; m < 0.28; m += 0.0025) {
                       const GapReport g = gap(Family::erasure, fill.build(d, m), 0.5, GapPath::closed_form_bound);
                       o.require(g.superadd_q1, "Q1 not certified at d=" + std::to_string(d) + " mu_max=" + fmt(m) +
                                                    " gap_q1=" + fmt(g.gap_q1));
                       ++here;
                   }
                   dims << " d" << d << ":" << here << (here == 0 ? "(no feasible mu_max<0.28)" : "");
               }
               o.detail << points << " scan points, lambda=1/2 checks" << dims.str()
                        << "; closed form above exact (>1e-12) at " << closed_form_above_exact << " points";
           });

    report(8, "byte-identical scan CSVs across reruns and worker counts", [&](Outcome& o) {
        const auto root = std::filesystem::temp_directory_path() / "qcap_acceptance_determinism";
        std::filesystem::remove_all(root);
        const auto run = [&](const std::vector<std::string>& args, const std::string& name, int workers) {
            std::vector<std::string> full{"qcap"};
            full.insert(full.end(), args.begin(), args.end());
            full.insert(full.end(), {"--out", (root / name).string(), "--workers", std::to_string(workers)});
            std::vector<const char*> argv;
            for (const std::string& a : full) argv.push_back(a.c_str());
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
            o.require(code == 0, "scan failed: " + err.str());
        };
        const std::vector<std::vector<std::string>> configs{
            {"scan", "erasure", "--d", "10", "--mu-max", "0.1:0.3:0.01", "--lambda", "0:1:0.01"},
            {"scan", "mad", "--d", "2:6", "--mu-max", "uniform", "--gamma", "0:1:0.005"}};
        std::size_t compared = 0;
        for (std::size_t c = 0; c < configs.size(); ++c) {
            const std::string tag = "c" + std::to_string(c);
            run(configs[c], tag + "_w1", 1);
            run(configs[c], tag + "_w1_again", 1);
            run(configs[c], tag + "_w4", 4);
            for (const char* file : {"points.csv", "boundaries.csv"}) {
                const std::string ref = slurp(root / (tag + "_w1") / file);
                o.require(!ref.empty(), std::string("empty ") + file);
                o.require(ref == slurp(root / (tag + "_w1_again") / file), std::string("rerun differs: ") + file);
                o.require(ref == slurp(root / (tag + "_w4") / file), std::string("worker count changes ") + file);
                ++compared;
            }
        }
        std::filesystem::remove_all(root);
        o.detail << compared << " file pairs compared";
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
