#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>

namespace lgseq {

/// Codec-wide configuration. Defaults reproduce the 100 m x 50 m BEV range on a
/// 200 x 100 grid with 100-edge / 100-keypoint budgets (802-token sequences).
struct CodecConfig {
  double x_min = -50.0;
  double x_max = 50.0;
  double y_min = -25.0;
  double y_max = 25.0;
  int x_bins = 200;
  int y_bins = 100;
  /// Sextet budget: the edge region holds 6 * max_edges tokens plus EOS.
  int max_edges = 100;
  /// Prompt budget: the prompt region holds 2 * max_prompt_points tokens plus EOK.
  int max_prompt_points = 100;
  double merge_eps = 0.5;
  double score_threshold = 0.3;
  double adjacency_threshold = 0.5;
  std::uint64_t seed = 0;
  /// Points per centerline produced by dag_to_lanegraph.
  int centerline_points = 10;

  double bin_width_x() const { return (x_max - x_min) / x_bins; }
  double bin_width_y() const { return (y_max - y_min) / y_bins; }

  /// Throws Error(InvalidConfig) naming the first violated constraint.
  void validate() const;
};

/// Applies `key = value` lines (TOML subset: comments with '#', scalars and
/// two-element arrays for x_range / y_range) on top of `base`. Unknown keys,
/// malformed values and duplicate keys throw Error(InvalidConfig). The result
/// is validated.
CodecConfig parse_config(std::string_view text, CodecConfig base = {});

/// Reads and parses a config file. Throws Error(IoError) when unreadable.
CodecConfig load_config(const std::filesystem::path& path, CodecConfig base = {});

}  // namespace lgseq
