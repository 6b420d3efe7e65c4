#include "dsl/token.hpp"

#include <array>
#include <cctype>
#include <cstdlib>

#include "support/error.hpp"

namespace geomom::dsl {

namespace {

const std::array<const char*, 8> kKeywords = {"chart",  "coords", "params",   "normal",
                                              "embed",  "end",    "periodic", "range"};

bool is_keyword(const std::string& w) {
  for (const char* k : kKeywords)
    if (w == k) return true;
  return false;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_cont(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

} // namespace

bool is_reserved_word(const std::string& name) {
  if (is_keyword(name)) return true;
  static const std::array<const char*, 13> extra = {"pi",  "e",    "inf",  "sin",  "cos",
                                                    "tan", "cot",  "exp",  "log",  "sqrt",
                                                    "sinh", "cosh", "atan2"};
  for (const char* k : extra)
    if (name == k) return true;
  return false;
}

std::vector<Token> tokenize(const std::string& source) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = source.size();
  while (i < n) {
    char c = source[i];
    if (c == '#') { // comment to end of line
      while (i < n && source[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (digit(c) || (c == '.' && i + 1 < n && digit(source[i + 1]))) {
      ++i;
      while (i < n && digit(source[i])) ++i;
      if (i < n && source[i] == '.') {
        ++i;
        while (i < n && digit(source[i])) ++i;
      }
      if (i < n && (source[i] == 'e' || source[i] == 'E')) {
        std::size_t mark = i;
        ++i;
        if (i < n && (source[i] == '+' || source[i] == '-')) ++i;
        if (i < n && digit(source[i])) {
          while (i < n && digit(source[i])) ++i;
        } else {
          i = mark; // "2e" is the number 2 followed by identifier e
        }
      }
      Token t{TokenKind::number, source.substr(start, i - start), start, 0.0};
      t.value = std::strtod(t.lexeme.c_str(), nullptr);
      out.push_back(std::move(t));
      continue;
    }
    if (ident_start(c)) {
      ++i;
      while (i < n && ident_cont(source[i])) ++i;
      std::string word = source.substr(start, i - start);
      out.push_back({is_keyword(word) ? TokenKind::keyword : TokenKind::identifier,
                     std::move(word), start, 0.0});
      continue;
    }
    switch (c) {
      case '+': case '-': case '*': case '/': case '^': case '=': case ';':
        out.push_back({TokenKind::op, std::string(1, c), start, 0.0});
        ++i;
        continue;
      case '(': case ')':
        out.push_back({TokenKind::paren, std::string(1, c), start, 0.0});
        ++i;
        continue;
      case ',':
        out.push_back({TokenKind::comma, ",", start, 0.0});
        ++i;
        continue;
      default:
        throw ParseError("unrecognized character '" + std::string(1, c) + "' at offset " +
                             std::to_string(start),
                         static_cast<long>(start));
    }
  }
  return out;
}

} // namespace geomom::dsl
