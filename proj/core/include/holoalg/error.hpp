#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holoalg {

enum class ErrorKind {
  kInvalidArgument,
  kAlgebraMismatch,
  kNotCommutative,
  kNotAssociative,
  kNoUnit,
  kNotAUnit,
  kDecompositionRequired,
  kClusteringAmbiguous,
  kNotMultiplicative,
  kNotUnital,
  kNotDetermined,
  kNonSquare,
  kSamplerFailure,
  kRankDeficient,
  kInvalidRecovered,
  kSingularDerivative,
  kNoConvergence,
  kNotLocalPair,
  kNotNilpotent,
  kOutsideScalarDomain,
  kNotSmooth,
  kQuadratureNoConvergence,
  kNotAdmissible,
  kWindingUnresolved,
  kIndexNotInvertible,
  kSeriesTruncation,
};

std::string_view to_string(ErrorKind kind);

// All library failures surface as this exception; `kind()` identifies the
// violated contract so callers (the CLI in particular) can map it to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace holoalg
