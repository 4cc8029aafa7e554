#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lgseq/config.hpp"
#include "lgseq/graph_io.hpp"
#include "lgseq/graph_model.hpp"

namespace lgseq::cli {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::string out_path;  // empty: stdout
};

/// --config, else $LGSEQ_CONFIG, else defaults; --seed overrides the file.
CodecConfig resolve_config(const CommonOptions& opts);

/// Seed for item i of a batch, derived from the run seed.
std::uint64_t item_seed(std::uint64_t seed, std::size_t index);

/// Runs fn(0..n-1) on up to `jobs` threads. Results keep input order; the
/// lowest-index failure is rethrown after all workers finish.
template <class T>
std::vector<T> parallel_map(std::size_t n, unsigned jobs, const std::function<T(std::size_t)>& fn);

void emit(const CommonOptions& opts, const std::string& content);

/// Every document as a lane graph (DAG documents are sampled into centerlines).
LaneGraph as_lanegraph(const GraphDocument& doc, const CodecConfig& cfg);
/// Every document as a keypoint DAG (lane graphs go through endpoint merging).
KeyPointDag as_dag(const GraphDocument& doc, const CodecConfig& cfg);

std::vector<GraphDocument> read_graphs(const std::string& path);
std::vector<std::string> read_lines(const std::string& path);

/// Joins JSON documents into an array when there is more than one.
std::string json_sequence(const std::vector<std::string>& docs, bool force_array);

std::string format_double(double v);

/// Attaches the batch position to a failure so diagnostics can name it.
class ItemError : public std::exception {
 public:
  ItemError(std::size_t index, std::exception_ptr inner) : index_(index), inner_(std::move(inner)) {}
  std::size_t index() const { return index_; }
  const std::exception_ptr& inner() const { return inner_; }
  const char* what() const noexcept override { return "item failed"; }

 private:
  std::size_t index_;
  std::exception_ptr inner_;
};

}  // namespace lgseq::cli

#include "cli_parallel.inl"
