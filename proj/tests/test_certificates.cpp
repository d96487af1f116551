#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qcap/certificates.hpp"

using namespace qcap;

TEST(TranspositionBound, ClosedForm) {
    EXPECT_NEAR(transposition_bound(ProbabilityVector({1.0})), 1.0, 1e-15);
    const double m = 3.0 - 2.0 * std::sqrt(2.0);
    std::vector<double> six(6, (1.0 - m) / 5);
    six.back() = m;
    const ProbabilityVector mu = ProbabilityVector::normalized(six, 1e-12);
    ASSERT_DOUBLE_EQ(mu.max(), m);
    EXPECT_NEAR(transposition_bound(mu), 0.5, 1e-12);
    EXPECT_NEAR(transposition_bound(ProbabilityVector({0.5, 0.5})), std::log2(1.0 + std::sqrt(0.5)), 1e-15);
}

TEST(TranspositionCertificate, CertifiesRandomMu) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 15; ++trial) {
        const ProbabilityVector mu(oracle::random_mu(rng, 1 + trial % 7));
        const CertificateReport r = verify_transposition_certificate(mu);
        EXPECT_TRUE(r.certified);
        EXPECT_NEAR(r.bound_value, transposition_bound(mu), 1e-12);
        const CertificateCheck* norm = r.find("||Y_a|| = 1 + sqrt(mu_max)");
        ASSERT_NE(norm, nullptr);
        EXPECT_TRUE(norm->pass);
        for (const char* name : {"Y_ab psd", "Z_ab psd", "block psd"}) {
            ASSERT_NE(r.find(name), nullptr);
            EXPECT_GE(r.find(name)->margin, -1e-9);
        }
        EXPECT_LE(q1_platypus(mu).value, r.bound_value + 1e-9);
    }
}

TEST(TranspositionCertificate, ScalarConditionsAreTight) {
    const ProbabilityVector mu({0.15, 0.25, 0.6});
    const CertificateReport r = verify_transposition_certificate(mu);
    for (const char* name : {"condition: overlap^2 / weight^2 <= s", "condition: sqrt(mu_{i-1}) / sqrt(s) <= s_i",
                             "condition: projection identity"}) {
        const CertificateCheck* c = r.find(name);
        ASSERT_NE(c, nullptr) << name;
        EXPECT_TRUE(c->pass) << name;
    }
    // The first condition holds with equality for the chosen weights.
    EXPECT_NEAR(r.find("condition: overlap^2 / weight^2 <= s")->margin, 0.0, 1e-12);
}

TEST(TranspositionCertificate, ShrunkenPointIsRejected) {
    const ProbabilityVector mu({0.3, 0.7});
    const Matrix y = 0.9 * transposition_feasible_point(mu);
    const CertificateReport r = verify_transposition_feasible_point(platypus(mu), y, y);
    EXPECT_FALSE(r.certified);
    EXPECT_FALSE(r.find("block psd")->pass);
    EXPECT_LT(r.find("block psd")->margin, -1e-3);
}

TEST(TranspositionCertificate, ShapeMismatchThrows) {
    const ProbabilityVector mu({0.3, 0.7});
    EXPECT_THROW(verify_transposition_feasible_point(platypus(mu), Matrix::Identity(4, 4), Matrix::Identity(4, 4)),
                 std::invalid_argument);
}

TEST(TranspositionCertificate, IdentityChannelGivesLogDimension) {
    // Y = Z = I is feasible for id_d since T_b(J) is the swap; the bound is log2 d.
    const int d = 3;
    const Matrix y = Matrix::Identity(d * d, d * d);
    const CertificateReport r = verify_transposition_feasible_point(identity_channel(d), y, y);
    EXPECT_TRUE(r.certified);
    EXPECT_NEAR(r.bound_value, std::log2(3.0), 1e-12);
}

TEST(BetaCertificate, CertifiesRandomMu) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 15; ++trial) {
        const ProbabilityVector mu(oracle::random_mu(rng, 1 + trial % 7));
        const CertificateReport r = verify_beta_certificate(mu);
        EXPECT_TRUE(r.certified);
        EXPECT_NEAR(r.bound_value, 1.0, 1e-12);
        ASSERT_NE(r.find("Tr S_b = 2"), nullptr);
        for (const char* name : {"R + T_b(J) psd", "R - T_b(J) psd", "I (x) S + T_b(R) psd", "I (x) S - T_b(R) psd"}) {
            ASSERT_NE(r.find(name), nullptr) << name;
            EXPECT_GE(r.find(name)->margin, -1e-10) << name;
        }
    }
}

TEST(BetaCertificate, DroppingTheCornerTermBreaksFeasibility) {
    const ProbabilityVector mu({0.2, 0.3, 0.5});
    Matrix r = beta_feasible_r(mu);
    r(3, 3) = 0.0;  // |0,d><0,d|
    const CertificateReport rep = verify_beta_feasible_point(platypus(mu), r, beta_feasible_s(mu));
    EXPECT_FALSE(rep.certified);
}

TEST(BetaCertificate, WarnsInsideToleranceBand) {
    const ProbabilityVector mu({0.2, 0.3, 0.5});
    Matrix r = beta_feasible_r(mu);
    r -= 1e-11 * Matrix::Identity(r.rows(), r.cols());
    const CertificateReport nudged = verify_beta_feasible_point(platypus(mu), r, beta_feasible_s(mu), 1e-9);
    EXPECT_TRUE(nudged.certified);
    EXPECT_FALSE(nudged.warnings.empty());
}

TEST(Summary, TwoLevelUniform) {
    const CapacitySummary s = capacity_summary(ProbabilityVector({0.5, 0.5}));
    EXPECT_NEAR(s.q1, 0.69424, 1e-5);
    EXPECT_NEAR(s.u_star, 1.0 / std::sqrt(5.0), 1e-6);
    EXPECT_NEAR(s.q_upper, std::log2(1.0 + std::sqrt(0.5)), 1e-12);
    EXPECT_TRUE(s.transposition_certified);
    EXPECT_TRUE(s.beta_certified);
    EXPECT_TRUE(s.p_c_certified);
    EXPECT_EQ(s.p, 1.0);
    EXPECT_EQ(s.c, 1.0);
    EXPECT_NEAR(s.ce, 2.0, 1e-10);
    EXPECT_TRUE(s.ce_stationary);
}

TEST(Summary, PointMass) {
    const CapacitySummary s = capacity_summary(ProbabilityVector({1.0}));
    EXPECT_NEAR(s.q1, 1.0, 1e-12);
    EXPECT_NEAR(s.q_upper, 1.0, 1e-15);
}
