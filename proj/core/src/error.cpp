#include "lgseq/error.hpp"

namespace lgseq {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NonFiniteCoordinate: return "NonFiniteCoordinate";
    case ErrorCode::BinOutOfRange: return "BinOutOfRange";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::InconsistentAdjacency: return "InconsistentAdjacency";
    case ErrorCode::TooManyEdges: return "TooManyEdges";
    case ErrorCode::TooManyKeypoints: return "TooManyKeypoints";
    case ErrorCode::CloneAmbiguity: return "CloneAmbiguity";
    case ErrorCode::InvalidDag: return "InvalidDag";
    case ErrorCode::TruncatedSextet: return "TruncatedSextet";
    case ErrorCode::BadSlotToken: return "BadSlotToken";
    case ErrorCode::ConOutOfRange: return "ConOutOfRange";
    case ErrorCode::CloneTargetMissing: return "CloneTargetMissing";
    case ErrorCode::CloneCreatesCycle: return "CloneCreatesCycle";
    case ErrorCode::DuplicateKeypoint: return "DuplicateKeypoint";
    case ErrorCode::LinealWithoutPrevious: return "LinealWithoutPrevious";
    case ErrorCode::MissingEos: return "MissingEos";
    case ErrorCode::SequenceTooLong: return "SequenceTooLong";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::AllMaskedZero: return "AllMaskedZero";
    case ErrorCode::IllegalToken: return "IllegalToken";
    case ErrorCode::DecoderFinished: return "DecoderFinished";
    case ErrorCode::ProviderExhausted: return "ProviderExhausted";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonDistributionRow: return "NonDistributionRow";
    case ErrorCode::SpecInfeasible: return "SpecInfeasible";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

ErrorClass error_class(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IoError:
      return ErrorClass::Io;
    case ErrorCode::TooManyEdges:
    case ErrorCode::TooManyKeypoints:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::SequenceTooLong:
      return ErrorClass::Budget;
    default:
      return ErrorClass::Validation;
  }
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

}  // namespace lgseq
