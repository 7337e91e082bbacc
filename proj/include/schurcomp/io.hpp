#pragma once

#include <string>

#include <json.hpp>

#include "schurcomp/completion.hpp"
#include "schurcomp/feasibility.hpp"
#include "schurcomp/jframe.hpp"
#include "schurcomp/spectral.hpp"
#include "schurcomp/verify.hpp"

// JSON encodings used by the CLI and the Python module. Objects keep a fixed
// field order so identical inputs serialize to identical bytes.

namespace schurcomp::io {

using Json = nlohmann::ordered_json;

/// {"rows": n, "cols": m, "data": [[re, im], ...]} in row-major order.
Json to_json(const ComplexMatrix& m);
/// Throws kParse for missing fields, wrong-length data or malformed entries.
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const ComplexVector& v);
Json to_json(Complex z);

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view s);

Json to_json(const FeasibilityVerdict& v);
Json to_json(const InfeasibilityWitness& w);
Json to_json(const EpsilonSchedule& s);
Json to_json(const CompletionCertificate& c);
CompletionCertificate certificate_from_json(const Json& j);
Json to_json(const SpectrumPrediction& p);
Json to_json(const SpectrumComparison& c);
Json to_json(const RootLocus& locus);
Json to_json(const JFrameReport& r);
Json to_json(const JFrameFamily& f);
JFrameFamily family_from_json(const Json& j);
Json to_json(const IdentityReport& r);

/// Reads and parses a JSON file; kParse on I/O or syntax errors.
Json read_json_file(const std::string& path);
ComplexMatrix read_matrix_file(const std::string& path);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace schurcomp::io
