#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "holembed/stt/error.hpp"

namespace holembed::logics {

// Parse failure with 1-based source position and the token set the parser
// would have accepted.
struct ParseError : Error {
  ParseError(std::string msg, size_t line, size_t col, std::string expected_ = "")
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(col) +
              ": " + msg + (expected_.empty() ? "" : " (expected " + expected_ + ")")),
        line(line), col(col), expected(std::move(expected_)) {}
  size_t line, col;
  std::string expected;
};

enum class Tok {
  Ident,     // lowercase-led identifier
  UIdent,    // uppercase-led identifier
  PropSort,  // $prop
  Tilde, Amp, Pipe, Implies, Iff,
  LParen, RParen, LBrack, RBrack, LAngle, RAngle,
  Bang, Quest, Colon, Comma,
  End
};

struct Token {
  Tok kind;
  std::string text;
  size_t line, col;
};

inline const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::UIdent: return "variable";
    case Tok::PropSort: return "$prop";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Implies: return "'=>'";
    case Tok::Iff: return "'<=>'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::LAngle: return "'<'";
    case Tok::RAngle: return "'>'";
    case Tok::Bang: return "'!'";
    case Tok::Quest: return "'?'";
    case Tok::Colon: return "':'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
  }
  return "?";
}

// Shared tokenizer for the three surface grammars. '<' only introduces a
// diamond when not part of '<=>'.
inline std::vector<Token> lex_formula(const std::string& text) {
  std::vector<Token> out;
  size_t line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string s, size_t l, size_t c) {
    out.push_back(Token{k, std::move(s), l, c});
  };
  while (i < text.size()) {
    char c = text[i];
    size_t l = line, cl = col;
    auto advance = [&](size_t n) {
      for (size_t k = 0; k < n; ++k) {
        if (text[i + k] == '\n') { ++line; col = 1; } else ++col;
      }
      i += n;
    };
    if (c == '#') { // comment to end of line
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) { advance(1); continue; }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        advance(1);
      std::string s = text.substr(start, i - start);
      Tok k = std::isupper(static_cast<unsigned char>(s[0])) ? Tok::UIdent : Tok::Ident;
      push(k, std::move(s), l, cl);
      continue;
    }
    if (c == '$') {
      if (text.compare(i, 5, "$prop") == 0) { advance(5); push(Tok::PropSort, "$prop", l, cl); continue; }
      throw ParseError("unknown '$' token", l, cl);
    }
    if (c == '<') {
      if (text.compare(i, 3, "<=>") == 0) { advance(3); push(Tok::Iff, "<=>", l, cl); continue; }
      advance(1); push(Tok::LAngle, "<", l, cl); continue;
    }
    if (c == '=') {
      if (text.compare(i, 2, "=>") == 0) { advance(2); push(Tok::Implies, "=>", l, cl); continue; }
      throw ParseError("'=' is not an operator here", l, cl);
    }
    switch (c) {
      case '~': advance(1); push(Tok::Tilde, "~", l, cl); continue;
      case '&': advance(1); push(Tok::Amp, "&", l, cl); continue;
      case '|': advance(1); push(Tok::Pipe, "|", l, cl); continue;
      case '(': advance(1); push(Tok::LParen, "(", l, cl); continue;
      case ')': advance(1); push(Tok::RParen, ")", l, cl); continue;
      case '[': advance(1); push(Tok::LBrack, "[", l, cl); continue;
      case ']': advance(1); push(Tok::RBrack, "]", l, cl); continue;
      case '>': advance(1); push(Tok::RAngle, ">", l, cl); continue;
      case '!': advance(1); push(Tok::Bang, "!", l, cl); continue;
      case '?': advance(1); push(Tok::Quest, "?", l, cl); continue;
      case ':': advance(1); push(Tok::Colon, ":", l, cl); continue;
      case ',': advance(1); push(Tok::Comma, ",", l, cl); continue;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

} // namespace holembed::logics
