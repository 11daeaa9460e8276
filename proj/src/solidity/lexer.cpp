#include "ecsv/solidity/lexer.hpp"

#include <array>
#include <cctype>

namespace ecsv::solidity {

namespace {

constexpr std::array<std::string_view, 19> kMultiCharPunct{
    "**=", ">>=", "<<=", "==", "!=", "<=", ">=", "&&", "||", "=>", "+=",
    "-=",  "*=",  "/=",  "%=", "++", "--", "**", "<<",
};
constexpr std::string_view kSingleCharPunct = "(){}[];,.=<>+-*/%!~^&|?:";

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    Token eof;
    eof.kind = TokenKind::EndOfInput;
    eof.span = {here(), here()};
    eof.offset = src_.size();
    out.push_back(eof);
    return out;
  }

 private:
  SourcePosition here() const { return {line_, column_}; }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 0;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      const char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        const SourcePosition start = here();
        advance();
        advance();
        while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos_ >= src_.size()) {
          throw Error(ErrorCode::SyntaxError, "unterminated block comment", start);
        }
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    Token tok;
    tok.offset = pos_;
    tok.span.start = here();
    const char c = peek();
    if (ident_start(c)) {
      tok.kind = TokenKind::Identifier;
      while (pos_ < src_.size() && ident_char(peek())) advance();
      tok.text = std::string(src_.substr(tok.offset, pos_ - tok.offset));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = TokenKind::Number;
      if (c == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
        advance();
        advance();
        while (pos_ < src_.size() && (std::isxdigit(static_cast<unsigned char>(peek())) || peek() == '_')) advance();
      } else {
        while (pos_ < src_.size()) {
          if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') {
            advance();
          } else if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            advance();
          } else {
            break;
          }
        }
      }
      if (pos_ < src_.size() && ident_char(peek())) {
        throw Error(ErrorCode::SyntaxError, "malformed number literal", tok.span.start);
      }
      tok.text = std::string(src_.substr(tok.offset, pos_ - tok.offset));
    } else if (c == '"' || c == '\'') {
      tok.kind = TokenKind::String;
      tok.text = read_string(c, tok.span.start);
    } else {
      tok.kind = TokenKind::Punct;
      std::size_t len = 0;
      for (auto p : kMultiCharPunct) {
        if (src_.substr(pos_, p.size()) == p) {
          len = p.size();
          break;
        }
      }
      if (len == 0 && kSingleCharPunct.find(c) != std::string_view::npos) len = 1;
      if (len == 0) {
        throw Error(ErrorCode::SyntaxError,
                    std::string("unexpected character '") + c + "'", tok.span.start);
      }
      for (std::size_t i = 0; i < len; ++i) advance();
      tok.text = std::string(src_.substr(tok.offset, len));
    }
    tok.length = pos_ - tok.offset;
    tok.span.end = here();
    return tok;
  }

  std::string read_string(char quote, SourcePosition start) {
    std::string out;
    advance();
    while (true) {
      if (pos_ >= src_.size() || peek() == '\n') {
        throw Error(ErrorCode::SyntaxError, "unterminated string literal", start);
      }
      const char c = peek();
      advance();
      if (c == quote) break;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= src_.size()) throw Error(ErrorCode::SyntaxError, "unterminated string literal", start);
      const char esc = peek();
      advance();
      switch (esc) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case '\\': out += '\\'; break;
        case '"': out += '"'; break;
        case '\'': out += '\''; break;
        default:
          throw Error(ErrorCode::SyntaxError, std::string("unsupported escape '\\") + esc + "'",
                      start);
      }
    }
    return out;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 0;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace ecsv::solidity
