#include "lgseq/decode_engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace lgseq {

namespace {

bool can_add_new(const DecoderState& s, const Vocabulary& vocab) {
  return static_cast<int>(s.registry.size()) < vocab.max_keypoints();
}

/// A bin may start a sextet if it is free (and a new keypoint still fits) or
/// holds a keypoint that some other keypoint can clone into.
bool bin_usable(const DecoderState& s, const Vocabulary& vocab, QuantPoint q) {
  if (const auto k = s.registry.find(q)) return !s.registry.clone_parents(*k).empty();
  return can_add_new(s, vocab);
}

void append_range(std::vector<Token>& out, Token lo, Token hi) {
  for (Token t = lo; t < hi; ++t) out.push_back(t);
}

StepMask prompt_mask(const DecoderState& s, const CodecConfig& cfg, const Vocabulary& vocab) {
  StepMask m;
  const auto region = 2 * static_cast<std::size_t>(cfg.max_prompt_points);
  if (s.prompt_pos == 0) {
    m.allowed.push_back(vocab.start());
  } else if (s.prompt_pos - 1 == region) {
    m.allowed.push_back(vocab.eok());
  } else if (s.prompt_padding) {
    m.allowed.push_back(vocab.pad());
  } else if ((s.prompt_pos - 1) % 2 == 0) {
    append_range(m.allowed, 0, cfg.x_bins);
    m.allowed.push_back(vocab.pad());
  } else {
    append_range(m.allowed, 0, cfg.y_bins);
  }
  return m;
}

StepMask edge_mask(const DecoderState& s, const CodecConfig& cfg, const Vocabulary& vocab) {
  StepMask m;
  auto& out = m.allowed;
  const auto& reg = s.registry;
  switch (s.slot) {
    case 0: {
      if (s.sextets < static_cast<std::size_t>(cfg.max_edges)) {
        if (can_add_new(s, vocab)) {
          // A column is blocked only when every cell in it holds an
          // un-cloneable keypoint.
          std::map<int, std::vector<std::size_t>> by_column;
          for (std::size_t k = 0; k < reg.size(); ++k) by_column[reg.bins(k).xb].push_back(k);
          for (Token x = 0; x < cfg.x_bins; ++x) {
            const auto it = by_column.find(x);
            if (it == by_column.end() || static_cast<int>(it->second.size()) < cfg.y_bins) {
              out.push_back(x);
              continue;
            }
            const bool any_live = std::any_of(it->second.begin(), it->second.end(), [&](auto k) {
              return !reg.clone_parents(k).empty();
            });
            if (any_live) out.push_back(x);
          }
        } else {
          std::vector<bool> live(static_cast<std::size_t>(cfg.x_bins), false);
          for (std::size_t k = 0; k < reg.size(); ++k) {
            if (!reg.clone_parents(k).empty()) live[static_cast<std::size_t>(reg.bins(k).xb)] = true;
          }
          for (Token x = 0; x < cfg.x_bins; ++x) {
            if (live[static_cast<std::size_t>(x)]) out.push_back(x);
          }
        }
      }
      out.push_back(vocab.eos());
      break;
    }
    case 1:
      for (Token y = 0; y < cfg.y_bins; ++y) {
        if (bin_usable(s, vocab, {s.pending[0], y})) out.push_back(y);
      }
      break;
    case 2:
      if (reg.find({s.pending[0], s.pending[1]})) {
        out.push_back(vocab.clone());
      } else {
        out.push_back(vocab.ancestor());
        if (reg.cursor) out.push_back(vocab.lineal());
        if (reg.size() > 0) out.push_back(vocab.offshoot());
      }
      break;
    case 3: {
      const auto cls = vocab.key_class(s.pending[2]);
      if (cls == KeyClass::Ancestor || cls == KeyClass::Lineal) {
        out.push_back(0);
      } else if (cls == KeyClass::Offshoot) {
        append_range(out, 1, static_cast<Token>(reg.size()) + 1);
      } else {
        const auto target = reg.find({s.pending[0], s.pending[1]});
        for (int p : reg.clone_parents(*target)) out.push_back(p);
      }
      break;
    }
    case 4:
      append_range(out, 0, cfg.x_bins);
      break;
    case 5:
      append_range(out, 0, cfg.y_bins);
      break;
    default:
      break;
  }
  return m;
}

void apply_sextet(DecoderState& s, const Vocabulary& vocab) {
  auto& reg = s.registry;
  const QuantPoint bins{s.pending[0], s.pending[1]};
  const auto cls = *vocab.key_class(s.pending[2]);
  const int con = s.pending[3];
  if (cls == KeyClass::Clone) {
    const auto target = *reg.find(bins);
    reg.link(static_cast<std::size_t>(con - 1), target);
    reg.cursor = target;
    return;
  }
  std::optional<std::size_t> parent;
  if (cls == KeyClass::Lineal) parent = reg.cursor;
  if (cls == KeyClass::Offshoot) parent = static_cast<std::size_t>(con - 1);
  const auto id = reg.add(bins);
  if (parent) reg.link(*parent, id);
  reg.cursor = id;
}

}  // namespace

bool StepMask::contains(Token t) const {
  return std::binary_search(allowed.begin(), allowed.end(), t);
}

StepMask next_mask(const DecoderState& state, const CodecConfig& cfg) {
  const Vocabulary vocab(cfg);
  StepMask m;
  if (state.phase == Phase::Prompt) m = prompt_mask(state, cfg, vocab);
  if (state.phase == Phase::Edges) m = edge_mask(state, cfg, vocab);
  std::sort(m.allowed.begin(), m.allowed.end());
  return m;
}

DecoderState advance(DecoderState state, Token token, const CodecConfig& cfg) {
  if (state.phase == Phase::Done) {
    throw Error(ErrorCode::DecoderFinished, "token after EOS");
  }
  if (!next_mask(state, cfg).contains(token)) {
    throw Error(ErrorCode::IllegalToken, "token " + std::to_string(token) + " at position " +
                                             std::to_string(state.tokens.size()));
  }
  const Vocabulary vocab(cfg);
  state.tokens.push_back(token);

  if (state.phase == Phase::Prompt) {
    if (token == vocab.eok()) {
      state.phase = Phase::Edges;
    } else if (token == vocab.pad()) {
      state.prompt_padding = true;
    }
    ++state.prompt_pos;
    return state;
  }

  if (state.slot == 0 && token == vocab.eos()) {
    state.phase = Phase::Done;
    return state;
  }
  state.pending[static_cast<std::size_t>(state.slot)] = token;
  if (++state.slot == 6) {
    apply_sextet(state, vocab);
    state.slot = 0;
    ++state.sextets;
  }
  return state;
}

StepResult step(const DecoderState& state, std::span<const float> probs, DecodeMode mode, Rng& rng,
                const CodecConfig& cfg) {
  const Vocabulary vocab(cfg);
  if (probs.size() != static_cast<std::size_t>(vocab.size())) {
    throw Error(ErrorCode::LengthMismatch, "distribution has " + std::to_string(probs.size()) +
                                               " entries, vocabulary has " +
                                               std::to_string(vocab.size()));
  }
  for (const float p : probs) {
    if (!std::isfinite(p) || p < 0.0f) {
      throw Error(ErrorCode::NonDistributionRow, "negative or non-finite probability");
    }
  }
  const StepMask mask = next_mask(state, cfg);
  double total = 0.0;
  for (const Token t : mask.allowed) total += probs[static_cast<std::size_t>(t)];
  if (!(total > 0.0)) {
    throw Error(ErrorCode::AllMaskedZero,
                "no probability mass on legal tokens at position " + std::to_string(state.tokens.size()));
  }

  Token chosen = mask.allowed.front();
  if (mode == DecodeMode::Greedy) {
    float best = -1.0f;
    for (const Token t : mask.allowed) {
      if (probs[static_cast<std::size_t>(t)] > best) {
        best = probs[static_cast<std::size_t>(t)];
        chosen = t;
      }
    }
  } else {
    const double u = rng.uniform01() * total;
    double acc = 0.0;
    for (const Token t : mask.allowed) {
      const double p = probs[static_cast<std::size_t>(t)];
      if (p <= 0.0) continue;
      chosen = t;
      acc += p;
      if (u < acc) break;
    }
  }
  return {chosen, advance(state, chosen, cfg)};
}

std::span<const float> TableProvider::next(const DecoderState&) {
  if (row_ >= table_.rows) {
    throw Error(ErrorCode::ProviderExhausted,
                "probability table has only " + std::to_string(table_.rows) + " rows");
  }
  return table_.row(row_++);
}

RunResult run(ProbabilityProvider& provider, const CodecConfig& cfg, DecodeMode mode, Rng& rng) {
  DecoderState state = DecoderState::edges();
  while (state.phase != Phase::Done) {
    auto probs = provider.next(state);
    state = step(state, probs, mode, rng, cfg).state;
  }
  RunResult result;
  result.tokens = std::move(state.tokens);
  const auto budget = static_cast<std::size_t>(6 * cfg.max_edges + 1);
  if (result.tokens.size() < budget) result.tokens.resize(budget, Vocabulary(cfg).pad());
  result.dag = decode(result.tokens, cfg);
  return result;
}

double ClassWeights::of(Token t, const Vocabulary& vocab) const {
  if (vocab.is_coord(t)) return coordinate;
  if (t == vocab.ancestor()) return ancestor;
  if (t == vocab.lineal()) return lineal;
  if (t == vocab.offshoot()) return offshoot;
  if (t == vocab.clone()) return clone;
  if (t == vocab.ncls()) return noise;
  return special;
}

double sequence_nll(std::span<const Token> target, const ProbTable& table,
                    const ClassWeights& weights, const CodecConfig& cfg) {
  const Vocabulary vocab(cfg);
  if (table.rows != target.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(table.rows) + " rows for " +
                                               std::to_string(target.size()) + " target tokens");
  }
  if (table.cols != static_cast<std::size_t>(vocab.size())) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(table.cols) +
                                               " columns, vocabulary has " +
                                               std::to_string(vocab.size()));
  }
  double nll = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const Token t = target[i];
    if (t == vocab.pad()) continue;
    if (t < 0 || t >= vocab.size()) {
      throw Error(ErrorCode::BadSlotToken, "target token " + std::to_string(t) + " at " +
                                               std::to_string(i) + " outside vocabulary");
    }
    double sum = 0.0;
    for (const float p : table.row(i)) {
      if (!std::isfinite(p) || p < 0.0f) {
        throw Error(ErrorCode::NonDistributionRow, "row " + std::to_string(i));
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-3) {
      throw Error(ErrorCode::NonDistributionRow,
                  "row " + std::to_string(i) + " sums to " + std::to_string(sum));
    }
    const double p = table.row(i)[static_cast<std::size_t>(t)] / sum;
    nll += weights.of(t, vocab) * -std::log(p);
  }
  // -log(1) is -0.0; report a clean zero.
  return nll == 0.0 ? 0.0 : nll;
}

}  // namespace lgseq
