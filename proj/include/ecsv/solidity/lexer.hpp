#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ecsv/solidity/ast.hpp"

namespace ecsv::solidity {

enum class TokenKind { Identifier, Number, String, Punct, EndOfInput };

struct Token {
  TokenKind kind = TokenKind::EndOfInput;
  // Identifier/number/punctuation text verbatim; string tokens hold the
  // decoded contents without quotes.
  std::string text;
  Span span;
  std::size_t offset = 0;  // byte offset of the first character
  std::size_t length = 0;  // byte length in the source
};

// Skips whitespace and comments. The result always ends with one EndOfInput
// token positioned at the end of the input. Throws SyntaxError.
std::vector<Token> tokenize(std::string_view source);

}  // namespace ecsv::solidity
