#pragma once

// Tokenizer shared by the justification-formula and modal-formula parsers.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "jck/error.hpp"

namespace jck::detail {

enum class Tok {
  End,
  Ident,   // letters, digits, '_' ; starts with a letter
  Number,  // decimal digits
  At,
  LBracket,
  RBracket,
  LParen,
  RParen,
  LAngle,
  RAngle,
  Comma,
  Plus,
  Star,
  Bang,
  Tilde,
  Amp,
  Bar,
  Arrow,
  Hash,
};

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  std::size_t pos = 0;
};

class Lexer {
 public:
  Lexer(std::string_view src, std::size_t pos) : src_(src), pos_(pos) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

  bool accept(Tok k) {
    if (current_.kind != k) return false;
    advance();
    return true;
  }

  Token expect(Tok k, const char* what) {
    if (current_.kind != k) fail(std::string("expected ") + what);
    return next();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string got = current_.kind == Tok::End ? "end of input"
                                                : "`" + std::string(current_.text) + "`";
    throw ParseError(current_.pos, msg + ", found " + got);
  }

  /// Offset just past the last consumed token plus trailing whitespace.
  std::size_t resume_position() const { return current_.pos; }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    current_.pos = pos_;
    if (pos_ >= src_.size()) {
      current_.kind = Tok::End;
      current_.text = {};
      return;
    }
    const char c = src_[pos_];
    std::size_t len = 1;
    auto single = [&](Tok k) { current_.kind = k; };
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ + len < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_ + len])) || src_[pos_ + len] == '_'))
        ++len;
      current_.kind = Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ + len < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + len])))
        ++len;
      current_.kind = Tok::Number;
    } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      len = 2;
      current_.kind = Tok::Arrow;
    } else {
      switch (c) {
        case '@': single(Tok::At); break;
        case '[': single(Tok::LBracket); break;
        case ']': single(Tok::RBracket); break;
        case '(': single(Tok::LParen); break;
        case ')': single(Tok::RParen); break;
        case '<': single(Tok::LAngle); break;
        case '>': single(Tok::RAngle); break;
        case ',': single(Tok::Comma); break;
        case '+': single(Tok::Plus); break;
        case '*': single(Tok::Star); break;
        case '!': single(Tok::Bang); break;
        case '~': single(Tok::Tilde); break;
        case '&': single(Tok::Amp); break;
        case '|': single(Tok::Bar); break;
        case '#': single(Tok::Hash); break;
        default:
          throw ParseError(pos_, std::string("unexpected character `") + c + "`");
      }
    }
    current_.text = src_.substr(pos_, len);
    pos_ += len;
  }

  std::string_view src_;
  std::size_t pos_;
  Token current_;
};

/// Parses a decimal run; throws ParseError on overflow.
inline int to_int(const Token& t) {
  long long v = 0;
  for (char c : t.text) {
    v = v * 10 + (c - '0');
    if (v > 1'000'000'000) throw ParseError(t.pos, "index too large");
  }
  return static_cast<int>(v);
}

/// `P12` -> 12, `x3` with prefix "x" -> 3; -1 if `text` is not prefix+digits.
inline int indexed_name(std::string_view text, std::string_view prefix) {
  if (text.size() <= prefix.size() || text.substr(0, prefix.size()) != prefix) return -1;
  long long v = 0;
  for (char c : text.substr(prefix.size())) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return -1;
    v = v * 10 + (c - '0');
    if (v > 1'000'000'000) return -1;
  }
  return static_cast<int>(v);
}

}  // namespace jck::detail
