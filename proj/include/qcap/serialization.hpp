// JSON dumps of channels and certificates.
//
// A complex matrix is a list of rows, each row a list of [re, im] pairs.
// Channel documents carry {family, params, dA, dB, dE, basis_order, kraus}.
// Certificate documents mirror CertificateReport and add the raw matrices.

#pragma once

#include <nlohmann/json.hpp>

#include "qcap/certificates.hpp"
#include "qcap/channels.hpp"
#include "qcap/superadd.hpp"

namespace qcap {

using Json = nlohmann::json;

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json channel_to_json(const QuantumChannel& n);
/// Validates shapes and trace preservation through the QuantumChannel constructor.
QuantumChannel channel_from_json(const Json& j);

Json certificate_to_json(const CertificateReport& report, bool with_matrices = true);
CertificateReport certificate_from_json(const Json& j);

/// Re-verifies a certificate document against a channel. The document names
/// its bound ("transposition" or "beta") and supplies Y_ab and Z_ab, or R_ab
/// and S_b, under "matrices". Stored verdicts in the document are ignored.
CertificateReport verify_external_certificate(const QuantumChannel& n, const Json& certificate, double tol);

Json summary_to_json(const CapacitySummary& s);
Json gap_to_json(const GapReport& g);

}  // namespace qcap
