#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lgseq {

/// Every failure the library reports. The enumerator name is the stable,
/// user-visible error name (see error_name()).
enum class ErrorCode {
  // configuration / input values
  InvalidConfig,
  NonFiniteCoordinate,
  BinOutOfRange,
  InvalidGraph,
  // graph_model
  CycleDetected,
  InconsistentAdjacency,
  // vocab_codec
  TooManyEdges,
  TooManyKeypoints,
  CloneAmbiguity,
  InvalidDag,
  TruncatedSextet,
  BadSlotToken,
  ConOutOfRange,
  CloneTargetMissing,
  CloneCreatesCycle,
  DuplicateKeypoint,
  LinealWithoutPrevious,
  MissingEos,
  SequenceTooLong,
  BudgetExceeded,
  // decode_engine
  AllMaskedZero,
  IllegalToken,
  DecoderFinished,
  ProviderExhausted,
  LengthMismatch,
  NonDistributionRow,
  // generator
  SpecInfeasible,
  // file formats
  IoError,
  ParseError,
};

/// Coarse grouping used by the CLI exit-code scheme.
enum class ErrorClass { Io, Validation, Budget };

std::string_view error_name(ErrorCode code) noexcept;
ErrorClass error_class(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace lgseq
