#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lgseq/prompt_builder.hpp"
#include "lgseq/vocab.hpp"

namespace lgseq {

// Token-sequence file: one sequence per line, space-separated decimal ids, LF.
// Training-pair file: input line, then target line, repeated.
// Prompt file: one prompt per line, space-separated "xb,yb" pairs.

std::string tokens_to_line(std::span<const Token> tokens);
/// Throws Error(ParseError) on anything but space-separated integers.
std::vector<Token> tokens_from_line(std::string_view line);

std::string prompt_to_line(const PromptSet& prompt);
/// Points come back tagged Real; provenance is not part of the file format.
PromptSet prompt_from_line(std::string_view line);

/// Splits on LF, dropping a trailing empty line and any CR before the LF.
std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace lgseq
