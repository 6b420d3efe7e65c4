#pragma once

#include <string>
#include <vector>

namespace geomom::dsl {

enum class TokenKind {
  number,
  identifier,
  op,      // + - * / ^ = ;
  paren,   // ( )
  comma,
  keyword, // chart coords params normal embed end periodic range
};

struct Token {
  TokenKind kind;
  std::string lexeme;
  std::size_t position = 0; // byte offset into the source
  double value = 0.0;       // parsed value, number tokens only
};

// Lexes the full input. `#` starts a comment running to end of line; newlines
// count as whitespace. Throws ParseError (with byte offset) on any byte
// outside the alphabet.
std::vector<Token> tokenize(const std::string& source);

bool is_reserved_word(const std::string& name); // keywords + pi, e, inf + function names

} // namespace geomom::dsl
