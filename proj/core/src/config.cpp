#include "lgseq/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "lgseq/error.hpp"

namespace lgseq {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(int line, const std::string& what) {
  throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view v, int line) {
  // std::from_chars for double is available in libstdc++ 11.
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    bad(line, "expected a number, got '" + std::string(v) + "'");
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view v, int line) {
  Int out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    bad(line, "expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

std::pair<double, double> parse_range(std::string_view v, int line) {
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
    bad(line, "expected [min, max]");
  }
  const auto inner = v.substr(1, v.size() - 2);
  const auto comma = inner.find(',');
  if (comma == std::string_view::npos) bad(line, "expected [min, max]");
  return {parse_double(trim(inner.substr(0, comma)), line),
          parse_double(trim(inner.substr(comma + 1)), line)};
}

}  // namespace

void CodecConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
    fail("x_range must be finite with min < max");
  }
  if (!std::isfinite(y_min) || !std::isfinite(y_max) || !(y_min < y_max)) {
    fail("y_range must be finite with min < max");
  }
  if (x_bins < 1 || y_bins < 1) fail("bins must be >= 1");
  if (max_edges < 1) fail("max_edges must be >= 1");
  if (max_prompt_points < 1) fail("max_prompt_points must be >= 1");
  if (!(merge_eps >= 0.0) || !std::isfinite(merge_eps)) fail("merge_eps must be >= 0");
  if (!(score_threshold >= 0.0 && score_threshold <= 1.0)) {
    fail("score_threshold must be in [0, 1]");
  }
  if (!(adjacency_threshold >= 0.0 && adjacency_threshold <= 1.0)) {
    fail("adjacency_threshold must be in [0, 1]");
  }
  if (centerline_points < 2) fail("centerline_points must be >= 2");
}

CodecConfig parse_config(std::string_view text, CodecConfig base) {
  CodecConfig cfg = base;
  std::set<std::string, std::less<>> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) bad(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) bad(line_no, "expected key = value");
    if (!seen.insert(key).second) bad(line_no, "duplicate key '" + key + "'");

    if (key == "x_range") {
      std::tie(cfg.x_min, cfg.x_max) = parse_range(value, line_no);
    } else if (key == "y_range") {
      std::tie(cfg.y_min, cfg.y_max) = parse_range(value, line_no);
    } else if (key == "x_bins") {
      cfg.x_bins = parse_int<int>(value, line_no);
    } else if (key == "y_bins") {
      cfg.y_bins = parse_int<int>(value, line_no);
    } else if (key == "max_edges") {
      cfg.max_edges = parse_int<int>(value, line_no);
    } else if (key == "max_prompt_points") {
      cfg.max_prompt_points = parse_int<int>(value, line_no);
    } else if (key == "merge_eps") {
      cfg.merge_eps = parse_double(value, line_no);
    } else if (key == "score_threshold") {
      cfg.score_threshold = parse_double(value, line_no);
    } else if (key == "adjacency_threshold") {
      cfg.adjacency_threshold = parse_double(value, line_no);
    } else if (key == "seed") {
      cfg.seed = parse_int<std::uint64_t>(value, line_no);
    } else if (key == "centerline_points") {
      cfg.centerline_points = parse_int<int>(value, line_no);
    } else {
      bad(line_no, "unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

CodecConfig load_config(const std::filesystem::path& path, CodecConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), base);
}

}  // namespace lgseq
