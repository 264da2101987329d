#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "holembed/stt/error.hpp"
#include "holembed/stt/print.hpp"
#include "holembed/stt/signature.hpp"
#include "holembed/stt/term.hpp"

namespace holembed::stt {

// Parser for the canonical term / type syntax of print.hpp. Used by the
// .lgp reader for problems stated directly in the kernel language.
struct SttParseError : Error {
  SttParseError(const std::string& msg, size_t pos) : Error(msg), position(pos) {}
  size_t position;
};

namespace detail {

class SttParser {
public:
  SttParser(const std::string& text, const Signature* sig) : text_(text), sig_(sig) {}

  TypePtr parse_type_all() {
    TypePtr t = parse_type();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after type");
    return t;
  }

  TermPtr parse_term_all() {
    TermPtr t = parse_term();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after term");
    return t;
  }

  // type := atom ('>' type)?   with atom := name | '(' type ')'
  TypePtr parse_type() {
    skip_ws();
    TypePtr left;
    if (peek() == '(') {
      ++pos_;
      left = parse_type();
      expect(')');
    } else {
      std::string n = ident();
      if (n.empty()) fail("expected type");
      left = SimpleType::base(n);
    }
    skip_ws();
    if (peek() == '>') {
      ++pos_;
      return fn(left, parse_type());
    }
    return left;
  }

  // term := binder | juxtaposition of primaries
  TermPtr parse_term() {
    skip_ws();
    char c = peek();
    if (c == '^' || c == '!' || c == '?') {
      size_t save = pos_;
      ++pos_;
      skip_ws();
      if (peek() == '[') return parse_binder(c);
      pos_ = save; // a bare '!'/'?' is not valid anyway; fall through to fail
    }
    TermPtr head = parse_primary();
    for (;;) {
      skip_ws();
      char n = peek();
      // Infix continuations only occur inside parentheses; at this level a
      // new primary means application by juxtaposition.
      if (n == '\0' || n == ')' || n == ']' || n == '|' || n == '=') break;
      head = app(head, parse_primary());
    }
    return head;
  }

private:
  TermPtr parse_binder(char head) {
    expect('[');
    skip_ws();
    std::string name = ident();
    if (name.empty()) fail("expected bound variable name");
    skip_ws();
    expect(':');
    TypePtr ty = parse_type();
    skip_ws();
    expect(']');
    skip_ws();
    expect(':');
    bind(name, ty);
    TermPtr body = parse_term();
    unbind(name);
    switch (head) {
      case '^': return lam(name, ty, body);
      case '!': return forall(name, ty, body);
      default: return exists(name, ty, body);
    }
  }

  // primary := '~' primary | '(' term (('|' | '=') term)? ')' | '={ty}'
  //          | 'PI{ty}' | '|' | name
  TermPtr parse_primary() {
    skip_ws();
    char c = peek();
    if (c == '~') {
      ++pos_;
      skip_ws();
      if (peek() == '\0' || peek() == ')') return neg_c(); // bare primitive
      return not_(parse_primary());
    }
    if (c == '|') {
      ++pos_;
      return or_c();
    }
    if (c == '=') {
      ++pos_;
      expect('{');
      TypePtr ty = parse_type();
      skip_ws();
      expect('}');
      return eq_c(ty);
    }
    if (c == '(') {
      ++pos_;
      TermPtr t = parse_term();
      skip_ws();
      if (peek() == '|') {
        ++pos_;
        TermPtr rhs = parse_term();
        skip_ws();
        expect(')');
        return or_(t, rhs);
      }
      if (peek() == '=') {
        ++pos_;
        TermPtr rhs = parse_term();
        skip_ws();
        expect(')');
        return eq_applied(t, rhs);
      }
      expect(')');
      return t;
    }
    if (c == '^' || c == '!' || c == '?') {
      // binder in argument position must be parenthesized; but accept it
      // at term level via parse_term (this path is only reached for the
      // head position, where parse_term already handled it)
      fail("binder must be parenthesized here");
    }
    std::string n = ident();
    if (n.empty()) fail("expected term");
    if (n == "PI") {
      expect('{');
      TypePtr ty = parse_type();
      skip_ws();
      expect('}');
      return pi_c(ty);
    }
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
      if (it->first == n) return var(n, it->second);
    if (std::isupper(static_cast<unsigned char>(n[0])))
      fail("unbound variable '" + n + "'");
    if (sig_) {
      if (!sig_->has_const(n)) fail("unknown constant '" + n + "'");
      return constant(n, sig_->const_type(n));
    }
    fail("cannot type free constant '" + n + "' without a signature");
    return nullptr;
  }

  // Equality needs the operand type; infer from the left operand, which in
  // canonical output is always annotated enough (variables and constants
  // carry types; otherwise fall back on the right operand).
  TermPtr eq_applied(const TermPtr& a, const TermPtr& b) {
    TypePtr ty = infer(a);
    if (!ty) ty = infer(b);
    if (!ty) fail("cannot infer equality type");
    return eq_(ty, a, b);
  }

  TypePtr infer(const TermPtr& t) {
    switch (t->kind) {
      case TermKind::Const:
      case TermKind::Var: return t->ty;
      case TermKind::Lam: {
        TypePtr body = infer(t->child0);
        return body ? fn(t->ty, body) : nullptr;
      }
      case TermKind::App: {
        TypePtr f = infer(t->child0);
        return (f && f->is_arrow()) ? f->codomain() : nullptr;
      }
      case TermKind::Neg: return fn(bool_ty(), bool_ty());
      case TermKind::Or: return fn(bool_ty(), bool_ty(), bool_ty());
      case TermKind::Eq: return fn(t->ty, t->ty, bool_ty());
      case TermKind::Pi: return fn(fn(t->ty, bool_ty()), bool_ty());
    }
    return nullptr;
  }

  void bind(const std::string& n, const TypePtr& ty) { scopes_.emplace_back(n, ty); }
  void unbind(const std::string& n) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
      if (it->first == n) {
        scopes_.erase(std::next(it).base());
        return;
      }
  }

  std::string ident() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ++pos_;
      else break;
    }
    return text_.substr(start, pos_ - start);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SttParseError(msg + " at offset " + std::to_string(pos_), pos_);
  }

  const std::string& text_;
  const Signature* sig_;
  size_t pos_ = 0;
  std::vector<std::pair<std::string, TypePtr>> scopes_;
};

} // namespace detail

inline TypePtr parse_type(const std::string& text) {
  detail::SttParser p(text, nullptr);
  return p.parse_type_all();
}

// Constants are typed from the signature; bound variables from their
// binder annotation. Unbound uppercase identifiers are errors.
inline TermPtr parse_stt_term(const std::string& text, const Signature& sig) {
  detail::SttParser p(text, &sig);
  return p.parse_term_all();
}

} // namespace holembed::stt
