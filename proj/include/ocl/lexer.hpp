#pragma once

#include "ocl/token.hpp"

#include <string_view>
#include <vector>

namespace ocl
{

bool is_keyword(std::string_view word);

/// Splits constraint text into tokens. Whitespace and `--` line comments are
/// dropped; the result always ends with an EndOfInput token.
///
/// Throws SyntaxError for characters outside the token alphabet, unterminated
/// strings and out-of-range integer literals.
std::vector<Token> tokenize(std::string_view source);

} // namespace ocl
