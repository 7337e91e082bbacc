#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace schurcomp {

enum class ErrorCode {
  kNotSquare,
  kNotHermitian,
  kDimensionMismatch,
  kBadKappa,
  kInfeasibleInput,
  kScheduleInvalid,
  kNonpositiveLambda,
  kCertificateMismatch,
  kJordanDegenerate,
  kNotDegenerate,
  kGridOutOfRange,
  kBlockInconsistent,
  kANotPositiveDefinite,
  kNotJFrame,
  kContractionSingular,
  kNoConvergence,
  kCardinalityMismatch,
  kSingularA,
  kParse,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to a message and exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace schurcomp
