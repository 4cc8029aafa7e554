#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lgseq/config.hpp"
#include "lgseq/vocab.hpp"

// Array-in / array-out entry points for host-language bindings. Nothing here
// holds state; every call is a pure function of its arguments. Failures
// surface as lgseq::Error, whose name() the binding layer re-raises.
namespace lgseq::flat {

std::string_view version() noexcept;

/// Config from keyword pairs, same keys and validation as config files.
CodecConfig config_from_pairs(std::span<const std::pair<std::string, std::string>> pairs);

struct FlatDag {
  std::vector<double> keypoints;  // K x 3, row-major (x, y, z)
  std::vector<std::int64_t> edges;  // E x 2 (src, dst)
  std::vector<double> controls;  // E x 2 (x, y)
};

/// Padded token form of the DAG.
std::vector<Token> encode(const FlatDag& dag, const CodecConfig& cfg);
FlatDag decode(std::span<const Token> tokens, const CodecConfig& cfg);

/// Prompt (unshuffled) as xb,yb pairs. `points` is m x n x 3, `adjacency` m x m,
/// `scores` empty or m entries.
std::vector<std::int32_t> extract_keypoints(std::span<const double> points, std::size_t lanes,
                                            std::size_t points_per_lane,
                                            std::span<const double> adjacency,
                                            std::span<const double> scores, const CodecConfig& cfg);

std::vector<std::int32_t> shuffle_prompt(std::span<const std::int32_t> pairs, std::uint64_t seed);

/// Input and target lines of a training pair; `gt_tokens` is an edge-region
/// token stream, `prompt_pairs` flattened xb,yb.
std::pair<std::vector<Token>, std::vector<Token>> assemble_training_pair(
    std::span<const Token> gt_tokens, std::span<const std::int32_t> prompt_pairs,
    const CodecConfig& cfg, std::uint64_t seed);

/// Allowed ids after replaying `prefix` from the start of the edge region.
std::vector<Token> next_mask(std::span<const Token> prefix, const CodecConfig& cfg);

double sequence_nll(std::span<const Token> target, std::span<const float> probs, std::size_t rows,
                    std::size_t cols, double noise_weight, const CodecConfig& cfg);

}  // namespace lgseq::flat
