#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "tighthilb/error.hpp"

namespace tighthilb::dsl {

/// 1-based source position.
struct Span {
  std::size_t line = 0;
  std::size_t column = 0;
};

/// An Error located in script source.
class SourceError : public Error {
 public:
  SourceError(ErrorCode code, const std::string& message, Span span)
      : Error(code, std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message),
        span_(span),
        detail_(message) {}

  Span span() const noexcept { return span_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Span span_;
  std::string detail_;
};

enum class TokenKind { Identifier, Integer, Punct, Option, String, Word, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  Span span;

  bool is(std::string_view punct) const { return kind == TokenKind::Punct && text == punct; }
};

class Lexer {
 public:
  explicit Lexer(std::string_view source) : src_(source) {}

  const Token& peek() {
    if (!has_peek_) {
      peeked_ = scan();
      has_peek_ = true;
    }
    return peeked_;
  }

  Token next() {
    Token t = peek();
    has_peek_ = false;
    return t;
  }

  /// A path-like argument: a quoted string or a run of characters up to
  /// whitespace or ';'.
  Token next_word() {
    if (has_peek_) {
      // Rewind so the word is re-scanned in raw mode.
      pos_ = peek_pos_;
      line_ = peek_line_;
      col_ = peek_col_;
      has_peek_ = false;
    }
    skip_space();
    Token t;
    t.span = {line_, col_};
    if (at_end()) {
      t.kind = TokenKind::End;
      return t;
    }
    if (src_[pos_] == '"') return scan_string();
    t.kind = TokenKind::Word;
    while (!at_end() && !std::isspace(static_cast<unsigned char>(src_[pos_])) && src_[pos_] != ';') {
      t.text += advance();
    }
    if (t.text.empty()) throw SourceError(ErrorCode::SyntaxError, "expected a path", t.span);
    return t;
  }

 private:
  bool at_end() const noexcept { return pos_ >= src_.size(); }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (!at_end()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#' || (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/')) {
        while (!at_end() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token scan_string() {
    Token t;
    t.kind = TokenKind::String;
    t.span = {line_, col_};
    advance();
    while (!at_end() && src_[pos_] != '"') {
      if (src_[pos_] == '\n') break;
      t.text += advance();
    }
    if (at_end() || src_[pos_] != '"') throw SourceError(ErrorCode::SyntaxError, "unterminated string", t.span);
    advance();
    return t;
  }

  Token scan() {
    skip_space();
    peek_pos_ = pos_;
    peek_line_ = line_;
    peek_col_ = col_;
    Token t;
    t.span = {line_, col_};
    if (at_end()) return t;
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = TokenKind::Identifier;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        t.text += advance();
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = TokenKind::Integer;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t.text += advance();
      return t;
    }
    if (c == '"') return scan_string();
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
      advance();
      advance();
      t.kind = TokenKind::Option;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '-' ||
                           src_[pos_] == '_')) {
        t.text += advance();
      }
      if (t.text.empty()) throw SourceError(ErrorCode::SyntaxError, "empty option name", t.span);
      return t;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      advance();
      advance();
      t.kind = TokenKind::Punct;
      t.text = "->";
      return t;
    }
    static constexpr std::string_view kPunct = "()[],;=/*^+-:";
    if (kPunct.find(c) != std::string_view::npos) {
      t.kind = TokenKind::Punct;
      t.text = std::string(1, advance());
      return t;
    }
    throw SourceError(ErrorCode::SyntaxError, std::string("unexpected character '") + c + "'", t.span);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token peeked_;
  bool has_peek_ = false;
  std::size_t peek_pos_ = 0, peek_line_ = 1, peek_col_ = 1;
};

}  // namespace tighthilb::dsl
