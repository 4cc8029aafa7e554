#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lgseq/codec.hpp"
#include "lgseq/keypoint_registry.hpp"
#include "lgseq/rng.hpp"
#include "lgseq/tokprob.hpp"
#include "lgseq/vocab.hpp"

namespace lgseq {

enum class Phase { Prompt, Edges, Done };

/// Position in the sequence grammar. A plain value: step() returns a new one.
struct DecoderState {
  Phase phase = Phase::Edges;
  int slot = 0;              // 0..5 within the current sextet
  std::size_t sextets = 0;   // completed sextets
  std::size_t prompt_pos = 0;  // tokens consumed in the prompt phase
  bool prompt_padding = false;
  std::array<Token, 6> pending{};
  KeypointRegistry registry;
  std::vector<Token> tokens;  // everything consumed so far

  /// Starts at the beginning of the edge region.
  static DecoderState edges() { return {}; }
  /// Starts at START, before the keypoint prompt.
  static DecoderState prompt() {
    DecoderState s;
    s.phase = Phase::Prompt;
    return s;
  }
};

/// Sorted token ids allowed at the next position.
struct StepMask {
  std::vector<Token> allowed;

  bool contains(Token t) const;
  bool empty() const { return allowed.empty(); }
};

/// Grammar projection of the sextet language onto the next position.
///
/// Edge region: slot 0 takes an x bin or EOS (only EOS once max_edges
/// sextets exist); slot 1 a y bin; slot 2 a class; slot 3 the con index;
/// slots 4-5 control bins. A bin already holding a keypoint can only be
/// realized as a Clone, and only if some keypoint could be its parent without
/// closing a cycle; bins that cannot continue legally are masked out before
/// they are chosen, so every state has a nonempty mask.
StepMask next_mask(const DecoderState& state, const CodecConfig& cfg);

/// Consumes one token. Throws IllegalToken when it is outside next_mask, or
/// DecoderFinished in the Done phase.
DecoderState advance(DecoderState state, Token token, const CodecConfig& cfg);

enum class DecodeMode { Greedy, Sample };

struct StepResult {
  Token token;
  DecoderState state;
};

/// Masks `probs`, renormalizes, and picks a token: argmax with ties to the
/// lowest id, or a draw from `rng`. Throws LengthMismatch (probs not vocab
/// sized), NonDistributionRow (negative / non-finite entries), AllMaskedZero.
StepResult step(const DecoderState& state, std::span<const float> probs, DecodeMode mode, Rng& rng,
                const CodecConfig& cfg);

/// Source of one distribution per decoding step.
class ProbabilityProvider {
 public:
  virtual ~ProbabilityProvider() = default;
  virtual std::span<const float> next(const DecoderState& state) = 0;
};

/// Serves the rows of a table in order; throws ProviderExhausted past the end.
class TableProvider final : public ProbabilityProvider {
 public:
  explicit TableProvider(const ProbTable& table) : table_(table) {}
  std::span<const float> next(const DecoderState& state) override;

 private:
  const ProbTable& table_;
  std::size_t row_ = 0;
};

class CallbackProvider final : public ProbabilityProvider {
 public:
  using Fn = std::function<std::span<const float>(const DecoderState&)>;
  explicit CallbackProvider(Fn fn) : fn_(std::move(fn)) {}
  std::span<const float> next(const DecoderState& state) override { return fn_(state); }

 private:
  Fn fn_;
};

struct RunResult {
  std::vector<Token> tokens;  // padded edge-region token form
  KeyPointDag dag;
};

/// Auto-regressive loop over the edge region until EOS; the result is always
/// strictly decodable.
RunResult run(ProbabilityProvider& provider, const CodecConfig& cfg, DecodeMode mode, Rng& rng);

/// Per-category weights for the sequence likelihood.
struct ClassWeights {
  double coordinate = 1.0;
  double ancestor = 1.0;
  double lineal = 1.0;
  double offshoot = 1.0;
  double clone = 1.0;
  double noise = 1.0;
  double special = 1.0;

  double of(Token t, const Vocabulary& vocab) const;
};

/// Weighted negative log-likelihood of `target` under per-position rows of
/// `table`, skipping PAD targets. Rows are normalized by their sum before the
/// log, which absorbs float32 rounding in stored tables. PAD rows are never
/// read. Throws LengthMismatch, NonDistributionRow (a supervised row that is
/// negative, non-finite, or sums away from 1 by more than 1e-3).
double sequence_nll(std::span<const Token> target, const ProbTable& table,
                    const ClassWeights& weights, const CodecConfig& cfg);

}  // namespace lgseq
