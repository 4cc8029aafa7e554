#pragma once

#include <cstddef>
#include <vector>

#include "lgseq/codec.hpp"
#include "lgseq/prompt_builder.hpp"
#include "lgseq/rng.hpp"

namespace lgseq {

/// Teacher-forcing pair. target[t] supervises the model output after it has
/// consumed input[0..t], so the edge region of target is the edge region of
/// input shifted left by one, closed with EOS.
///
///   input : START | prompt (2*K_max, PAD-filled) | EOK | real + noise sextets (6*E_max)
///   target: PAD * (2*K_max + 1)                       | real sextets, noise targets, EOS
///
/// A noise target is PAD in five slots and NCLS in the class slot.
struct TrainingPair {
  std::vector<Token> input;
  std::vector<Token> target;
  std::size_t real_sextets = 0;
  std::size_t noise_sextets = 0;
  PromptSet prompt;  // the shuffled prompt actually written, noise points included
};

/// Fills the edge region with uniformly synthesized noise sextets, injects
/// their keypoints into the prompt while room remains, shuffles the prompt,
/// and lays out both sequences. Throws BudgetExceeded when the ground truth
/// has more than max_edges sextets or the prompt more than max_prompt_points.
TrainingPair assemble_training_pair(const EdgeSequence& gt, const PromptSet& prompt,
                                    const CodecConfig& cfg, Rng& rng);

}  // namespace lgseq
