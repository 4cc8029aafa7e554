#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace lgseq {

/// Row-major table of per-position token distributions.
struct ProbTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<float> data;

  ProbTable() = default;
  ProbTable(std::size_t r, std::size_t c, float fill = 0.0f) : rows(r), cols(c), data(r * c, fill) {}

  std::span<const float> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  std::span<float> row(std::size_t r) { return {data.data() + r * cols, cols}; }
};

/// "TOKPROB v1 <rows> <cols>\n" followed by rows*cols little-endian float32.
void write_tokprob(std::ostream& out, const ProbTable& table);
ProbTable read_tokprob(std::istream& in);

void write_tokprob_file(const std::filesystem::path& path, const ProbTable& table);
ProbTable read_tokprob_file(const std::filesystem::path& path);

}  // namespace lgseq
