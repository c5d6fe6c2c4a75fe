#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace magspec {

enum class ErrorCode {
  ParseError,
  BadParams,
  DisconnectedGraph,
  BadIndexLength,
  AlphaOutOfRange,
  InconsistentEmbedding,
  TreeCountExceedsCap,
  OpenPath,
  FluxImageNotFullLattice,
  NotMinimal,
  DimensionMismatch,
  FluxMismatch,
  NoIndependentSubset,
  NotHermitian,
  GridTooCoarse,
  BadMultipliers,
  LocalizationViolated,
  MeasureBoundViolated,
  SandwichViolated,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace magspec
