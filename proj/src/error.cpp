#include "magspec/error.hpp"

namespace magspec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::BadIndexLength: return "BadIndexLength";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::InconsistentEmbedding: return "InconsistentEmbedding";
    case ErrorCode::TreeCountExceedsCap: return "TreeCountExceedsCap";
    case ErrorCode::OpenPath: return "OpenPath";
    case ErrorCode::FluxImageNotFullLattice: return "FluxImageNotFullLattice";
    case ErrorCode::NotMinimal: return "NotMinimal";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FluxMismatch: return "FluxMismatch";
    case ErrorCode::NoIndependentSubset: return "NoIndependentSubset";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::BadMultipliers: return "BadMultipliers";
    case ErrorCode::LocalizationViolated: return "LocalizationViolated";
    case ErrorCode::MeasureBoundViolated: return "MeasureBoundViolated";
    case ErrorCode::SandwichViolated: return "SandwichViolated";
  }
  return "Unknown";
}

}  // namespace magspec
