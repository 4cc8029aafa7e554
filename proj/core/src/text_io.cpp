#include "lgseq/text_io.hpp"

#include <charconv>

#include "lgseq/error.hpp"

namespace lgseq {

namespace {

template <typename Fn>
void for_each_field(std::string_view line, Fn&& fn) {
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos == line.size()) break;
    const std::size_t end = std::min(line.find(' ', pos), line.size());
    fn(line.substr(pos, end - pos));
    pos = end;
  }
}

int parse_int(std::string_view field) {
  int v = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::string tokens_to_line(std::span<const Token> tokens) {
  std::string out;
  out.reserve(tokens.size() * 4);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(tokens[i]);
  }
  return out;
}

std::vector<Token> tokens_from_line(std::string_view line) {
  std::vector<Token> out;
  for_each_field(line, [&](std::string_view f) { out.push_back(parse_int(f)); });
  return out;
}

std::string prompt_to_line(const PromptSet& prompt) {
  std::string out;
  for (std::size_t i = 0; i < prompt.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(prompt.points[i].xb) + "," + std::to_string(prompt.points[i].yb);
  }
  return out;
}

PromptSet prompt_from_line(std::string_view line) {
  PromptSet out;
  for_each_field(line, [&](std::string_view f) {
    const auto comma = f.find(',');
    if (comma == std::string_view::npos) {
      throw Error(ErrorCode::ParseError, "prompt entries are xb,yb: '" + std::string(f) + "'");
    }
    out.push({parse_int(f.substr(0, comma)), parse_int(f.substr(comma + 1))}, PromptSource::Real);
  });
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

}  // namespace lgseq
