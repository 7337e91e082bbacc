#include <gtest/gtest.h>

#include "schurcomp/io.hpp"
#include "test_support.hpp"

using namespace schurcomp;
using namespace schurcomp::testing;
using schurcomp::io::Json;

namespace {

void expect_parse_error(const Json& j) {
  try {
    io::matrix_from_json(j);
    FAIL() << j.dump();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}

}  // namespace

TEST(MatrixJson, RoundTripIsExact) {
  Rng rng(1);
  const ComplexMatrix m = random_complex(3, 2, rng);
  const Json j = io::to_json(m);
  EXPECT_EQ(j["rows"], 3);
  EXPECT_EQ(j["cols"], 2);
  EXPECT_EQ(j["data"].size(), 6u);
  EXPECT_EQ(io::matrix_from_json(Json::parse(io::dump(j))), m);
}

TEST(MatrixJson, RowMajorLayout) {
  const Json j = Json::parse(R"({"rows": 2, "cols": 2, "data": [[1,0],[2,0.5],[3,0],[4,0]]})");
  const ComplexMatrix m = io::matrix_from_json(j);
  EXPECT_EQ(m(0, 1), Complex(2, 0.5));
  EXPECT_EQ(m(1, 0), Complex(3, 0));
}

TEST(MatrixJson, RejectsMalformed) {
  expect_parse_error(Json::parse(R"({"rows": 2, "cols": 2, "data": [[1,0],[2,0],[3,0]]})"));
  expect_parse_error(Json::parse(R"({"rows": 1, "cols": 1, "data": [[1]]})"));
  expect_parse_error(Json::parse(R"({"rows": 1, "cols": 1, "data": [["x", 0]]})"));
  expect_parse_error(Json::parse(R"({"rows": -1, "cols": 1, "data": []})"));
  expect_parse_error(Json::parse(R"({"cols": 1, "data": []})"));
  expect_parse_error(Json::parse(R"([1, 2])"));
}

TEST(Mode, Strings) {
  EXPECT_EQ(io::mode_from_string("definite"), Mode::kDefinite);
  EXPECT_EQ(io::mode_from_string(io::to_string(Mode::kSemidefinite)), Mode::kSemidefinite);
  EXPECT_THROW(io::mode_from_string("strict"), Error);
}

TEST(CertificateJson, RoundTripReproducesResults) {
  const auto spectra = analyze_blocks(diag({3, 1}), diag({-2, 5}));
  const auto cert = build_k(spectra, default_epsilons(spectra, 1.0, Mode::kDefinite));
  const Json j = io::to_json(cert);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"n", "m", "k", "r", "p", "zero_tol", "schedule", "A",
                                            "D", "E", "K", "S", "schur"}));
  const auto back = io::certificate_from_json(Json::parse(io::dump(j)));
  EXPECT_EQ(back.s, cert.s);
  EXPECT_EQ(back.k, cert.k);
  EXPECT_EQ(back.schedule.epsilons, cert.schedule.epsilons);
  EXPECT_EQ(io::dump(io::to_json(back)), io::dump(j));
  const auto spectra2 = analyze_blocks(back.a, back.d, back.zero_tol);
  EXPECT_EQ(io::dump(io::to_json(predict_spectrum(back, spectra2))),
            io::dump(io::to_json(predict_spectrum(cert, spectra))));
}

TEST(CertificateJson, InconsistentDimensions) {
  const auto spectra = analyze_blocks(diag({2}), diag({0}));
  Json j = io::to_json(build_k(spectra, {{0.25}, 1.0, Mode::kDefinite}));
  j["n"] = 2;
  EXPECT_THROW(io::certificate_from_json(j), Error);
}

TEST(FamilyJson, RoundTrip) {
  const auto spectra = analyze_blocks(diag({3, 1}), diag({-2, 5}));
  const auto cert = build_k(spectra, default_epsilons(spectra, 1.0, Mode::kDefinite));
  const auto fam = synthesize_jframe(cert);
  const auto back = io::family_from_json(Json::parse(io::dump(io::to_json(fam))));
  ASSERT_EQ(back.vectors.size(), fam.vectors.size());
  for (std::size_t i = 0; i < fam.vectors.size(); ++i) {
    EXPECT_EQ(back.vectors[i], fam.vectors[i]);
    EXPECT_EQ(back.signatures[i], fam.signatures[i]);
  }
}

TEST(ReportJson, DeterministicAndNullForInfinity) {
  const auto spectra = analyze_blocks(diag({1}), diag({2}));
  const auto v = check_feasible(spectra, 1.0, Mode::kDefinite);
  const Json j = io::to_json(v);
  EXPECT_TRUE(j["min_margin"].is_null());
  EXPECT_EQ(io::dump(j), io::dump(io::to_json(check_feasible(spectra, 1.0, Mode::kDefinite))));
  EXPECT_EQ(j.begin().key(), "mode");
}

TEST(Files, MissingFile) {
  try {
    io::read_matrix_file("/nonexistent/path.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}
