#include "lgseq/tokprob.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "lgseq/error.hpp"

namespace lgseq {

namespace {

constexpr std::size_t kMaxCells = std::size_t{1} << 31;

std::uint32_t to_le(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
  }
}

}  // namespace

void write_tokprob(std::ostream& out, const ProbTable& table) {
  out << "TOKPROB v1 " << table.rows << ' ' << table.cols << '\n';
  for (const float f : table.data) {
    const std::uint32_t le = to_le(std::bit_cast<std::uint32_t>(f));
    char bytes[4];
    std::memcpy(bytes, &le, 4);
    out.write(bytes, 4);
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing probability table");
}

ProbTable read_tokprob(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorCode::ParseError, "missing TOKPROB header");
  std::istringstream hs(header);
  std::string magic, version;
  std::size_t rows = 0, cols = 0;
  if (!(hs >> magic >> version >> rows >> cols) || magic != "TOKPROB" || version != "v1") {
    throw Error(ErrorCode::ParseError, "bad TOKPROB header '" + header + "'");
  }
  std::string rest;
  if (hs >> rest) throw Error(ErrorCode::ParseError, "trailing text in TOKPROB header");
  if (cols != 0 && rows > kMaxCells / cols) {
    throw Error(ErrorCode::ParseError, "TOKPROB table too large");
  }

  ProbTable table(rows, cols);
  for (float& f : table.data) {
    char bytes[4];
    if (!in.read(bytes, 4)) throw Error(ErrorCode::ParseError, "TOKPROB payload truncated");
    std::uint32_t le = 0;
    std::memcpy(&le, bytes, 4);
    f = std::bit_cast<float>(to_le(le));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw Error(ErrorCode::ParseError, "TOKPROB payload longer than header declares");
  }
  return table;
}

void write_tokprob_file(const std::filesystem::path& path, const ProbTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_tokprob(out, table);
}

ProbTable read_tokprob_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  return read_tokprob(in);
}

}  // namespace lgseq
