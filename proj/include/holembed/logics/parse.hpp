#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "holembed/logics/ast.hpp"
#include "holembed/logics/lex.hpp"

namespace holembed::logics {

// Symbol declarations a formula may be validated against (from a problem
// file header). Without them only scoping is checked.
struct SourceDecls {
  std::vector<std::string> indices;                       // modal index symbols
  std::vector<std::pair<std::string, size_t>> preds;      // predicate name / arity
  std::vector<std::pair<std::string, std::string>> consts; // constant name / base type

  bool has_index(const std::string& n) const {
    return std::find(indices.begin(), indices.end(), n) != indices.end();
  }
  std::optional<size_t> pred_arity(const std::string& n) const {
    for (const auto& [p, a] : preds)
      if (p == n) return a;
    return std::nullopt;
  }
  bool has_const(const std::string& n) const {
    for (const auto& [c, t] : consts)
      if (c == n) return true;
    return false;
  }
};

namespace detail {

// Recursive-descent parser over the shared token stream. Precedence,
// tightest first: unary prefixes (~, [r], <r>, quantifiers), &, |, =>, <=>;
// => associates right, the others left. Quantifier and box bodies are
// unary-level, so `![X]: p & q` is `(![X]: p) & q`.
class FormulaParser {
public:
  FormulaParser(const std::string& text, const SourceDecls* decls)
      : toks_(lex_formula(text)), decls_(decls) {}

  QmlPtr qml() {
    QmlPtr f = qml_iff();
    expect_end();
    return f;
  }
  IplPtr ipl() {
    IplPtr f = ipl_iff();
    expect_end();
    return f;
  }
  FoPtr fo() {
    FoPtr f = fo_iff();
    expect_end();
    return f;
  }

private:
  // ---- qml ----
  QmlPtr qml_iff() {
    QmlPtr l = qml_implies();
    while (peek().kind == Tok::Iff) { next(); l = qml::iff(l, qml_implies()); }
    return l;
  }
  QmlPtr qml_implies() {
    QmlPtr l = qml_or();
    if (peek().kind == Tok::Implies) { next(); return qml::implies(l, qml_implies()); }
    return l;
  }
  QmlPtr qml_or() {
    QmlPtr l = qml_and();
    while (peek().kind == Tok::Pipe) { next(); l = qml::disj(l, qml_and()); }
    return l;
  }
  QmlPtr qml_and() {
    QmlPtr l = qml_unary();
    while (peek().kind == Tok::Amp) { next(); l = qml::conj(l, qml_unary()); }
    return l;
  }

  QmlPtr qml_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Tilde:
        next();
        return qml::neg(qml_unary());
      case Tok::LBrack: {
        next();
        std::string idx = expect_ident("accessibility index");
        check_index(idx, t);
        expect(Tok::RBrack);
        return qml::box(idx, qml_unary());
      }
      case Tok::LAngle: {
        next();
        std::string idx = expect_ident("accessibility index");
        check_index(idx, t);
        expect(Tok::RAngle);
        return qml::diamond(idx, qml_unary());
      }
      case Tok::Bang:
      case Tok::Quest: {
        bool universal = t.kind == Tok::Bang;
        next();
        expect(Tok::LBrack);
        // one or more binders, each optionally ': $prop'
        std::vector<std::pair<std::string, bool>> binders; // name, is_prop
        for (;;) {
          Token v = peek();
          if (v.kind != Tok::UIdent)
            throw ParseError("quantified variable must start uppercase", v.line, v.col,
                             tok_name(Tok::UIdent));
          next();
          bool is_prop = false;
          if (peek().kind == Tok::Colon) {
            next();
            expect(Tok::PropSort);
            is_prop = true;
          }
          binders.emplace_back(v.text, is_prop);
          if (peek().kind != Tok::Comma) break;
          next();
        }
        expect(Tok::RBrack);
        expect(Tok::Colon);
        for (auto& [n, p] : binders) (p ? prop_scope_ : ind_scope_).push_back(n);
        QmlPtr body = qml_unary();
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
          (it->second ? prop_scope_ : ind_scope_).pop_back();
          if (it->second)
            body = universal ? qml::forall_prop(it->first, body)
                             : qml::exists_prop(it->first, body);
          else
            body = universal ? qml::forall_ind(it->first, body)
                             : qml::exists_ind(it->first, body);
        }
        return body;
      }
      case Tok::LParen: {
        next();
        QmlPtr f = qml_iff();
        expect(Tok::RParen);
        return f;
      }
      case Tok::UIdent: {
        next();
        if (!in_scope(prop_scope_, t.text))
          throw ParseError("unbound propositional variable '" + t.text + "'", t.line, t.col);
        return qml::prop_var(t.text);
      }
      case Tok::Ident: {
        next();
        std::vector<std::string> args = atom_args(/*individual_scope=*/true);
        check_pred_or_prop(t, args.size());
        return qml::atom(t.text, std::move(args));
      }
      default:
        throw ParseError("expected a formula", t.line, t.col, "'~', '[', '<', '!', '?', '(' or identifier");
    }
  }

  // ---- ipl ----
  IplPtr ipl_iff() {
    IplPtr l = ipl_implies();
    while (peek().kind == Tok::Iff) { next(); l = ipl::iff(l, ipl_implies()); }
    return l;
  }
  IplPtr ipl_implies() {
    IplPtr l = ipl_or();
    if (peek().kind == Tok::Implies) { next(); return ipl::implies(l, ipl_implies()); }
    return l;
  }
  IplPtr ipl_or() {
    IplPtr l = ipl_and();
    while (peek().kind == Tok::Pipe) { next(); l = ipl::disj(l, ipl_and()); }
    return l;
  }
  IplPtr ipl_and() {
    IplPtr l = ipl_unary();
    while (peek().kind == Tok::Amp) { next(); l = ipl::conj(l, ipl_unary()); }
    return l;
  }
  IplPtr ipl_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Tilde: next(); return ipl::neg(ipl_unary());
      case Tok::LParen: {
        next();
        IplPtr f = ipl_iff();
        expect(Tok::RParen);
        return f;
      }
      case Tok::Ident: {
        next();
        if (peek().kind == Tok::LParen)
          throw ParseError("propositional atoms take no arguments", t.line, t.col);
        // Propositional letters need no declaration.
        return ipl::atom(t.text);
      }
      default:
        throw ParseError("expected a propositional formula", t.line, t.col,
                         "'~', '(' or identifier");
    }
  }

  // ---- fo ----
  FoPtr fo_iff() {
    FoPtr l = fo_implies();
    while (peek().kind == Tok::Iff) { next(); l = fo::iff(l, fo_implies()); }
    return l;
  }
  FoPtr fo_implies() {
    FoPtr l = fo_or();
    if (peek().kind == Tok::Implies) { next(); return fo::implies(l, fo_implies()); }
    return l;
  }
  FoPtr fo_or() {
    FoPtr l = fo_and();
    while (peek().kind == Tok::Pipe) { next(); l = fo::disj(l, fo_and()); }
    return l;
  }
  FoPtr fo_and() {
    FoPtr l = fo_unary();
    while (peek().kind == Tok::Amp) { next(); l = fo::conj(l, fo_unary()); }
    return l;
  }
  FoPtr fo_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Tilde: next(); return fo::neg(fo_unary());
      case Tok::Bang:
      case Tok::Quest: {
        bool universal = t.kind == Tok::Bang;
        next();
        expect(Tok::LBrack);
        std::vector<std::string> binders;
        for (;;) {
          Token v = peek();
          if (v.kind != Tok::UIdent)
            throw ParseError("quantified variable must start uppercase", v.line, v.col,
                             tok_name(Tok::UIdent));
          next();
          if (peek().kind == Tok::Colon)
            throw ParseError("sorted binders are not part of this grammar", peek().line,
                             peek().col);
          binders.push_back(v.text);
          if (peek().kind != Tok::Comma) break;
          next();
        }
        expect(Tok::RBrack);
        expect(Tok::Colon);
        for (auto& n : binders) ind_scope_.push_back(n);
        FoPtr body = fo_unary();
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
          ind_scope_.pop_back();
          body = universal ? fo::forall(*it, body) : fo::exists(*it, body);
        }
        return body;
      }
      case Tok::LParen: {
        next();
        FoPtr f = fo_iff();
        expect(Tok::RParen);
        return f;
      }
      case Tok::Ident: {
        next();
        std::vector<std::string> args = atom_args(/*individual_scope=*/true);
        check_fo_pred(t, args.size());
        return fo::atom(t.text, std::move(args));
      }
      default:
        throw ParseError("expected a formula", t.line, t.col,
                         "'~', '!', '?', '(' or identifier");
    }
  }

  // ---- shared pieces ----

  std::vector<std::string> atom_args(bool individual_scope) {
    std::vector<std::string> args;
    if (peek().kind != Tok::LParen) return args;
    next();
    for (;;) {
      Token a = peek();
      if (a.kind == Tok::UIdent) {
        if (individual_scope && !in_scope(ind_scope_, a.text))
          throw ParseError("unbound variable '" + a.text + "'", a.line, a.col);
        args.push_back(a.text);
        next();
      } else if (a.kind == Tok::Ident) {
        if (decls_ && !decls_->has_const(a.text))
          throw ParseError("undeclared constant '" + a.text + "'", a.line, a.col);
        args.push_back(a.text);
        next();
      } else {
        throw ParseError("expected an argument", a.line, a.col, "identifier or variable");
      }
      if (peek().kind == Tok::Comma) { next(); continue; }
      break;
    }
    expect(Tok::RParen);
    return args;
  }

  void check_index(const std::string& idx, const Token& at) {
    if (decls_ && !decls_->has_index(idx))
      throw ParseError("undeclared accessibility index '" + idx + "'", at.line, at.col);
  }

  // The spatial fragment ships a fixed binary vocabulary; sources may add more.
  static std::optional<size_t> fo_builtin_arity(const std::string& n) {
    static const char* const names[] = {"c", "dc", "p", "eq", "o", "po", "ec", "pp", "tpp", "ntpp"};
    for (const char* b : names)
      if (n == b) return size_t{2};
    return std::nullopt;
  }

  void check_fo_pred(const Token& t, size_t arity) {
    if (!decls_) return;
    std::optional<size_t> a = decls_->pred_arity(t.text);
    if (!a) a = fo_builtin_arity(t.text);
    if (!a)
      throw ParseError("undeclared predicate '" + t.text + "'", t.line, t.col);
    if (*a != arity)
      throw ParseError("predicate '" + t.text + "' expects " + std::to_string(*a) +
                           " argument(s), got " + std::to_string(arity),
                       t.line, t.col);
  }

  void check_pred_or_prop(const Token& t, size_t arity) {
    if (!decls_) return;
    auto a = decls_->pred_arity(t.text);
    if (!a)
      throw ParseError("undeclared predicate '" + t.text + "'", t.line, t.col);
    if (*a != arity)
      throw ParseError("predicate '" + t.text + "' expects " + std::to_string(*a) +
                           " argument(s), got " + std::to_string(arity),
                       t.line, t.col);
  }

  static bool in_scope(const std::vector<std::string>& scope, const std::string& n) {
    return std::find(scope.begin(), scope.end(), n) != scope.end();
  }

  const Token& peek() const { return toks_[pos_]; }
  void next() { if (pos_ + 1 < toks_.size()) ++pos_; }
  void expect(Tok k) {
    if (peek().kind != k)
      throw ParseError(std::string("unexpected ") + tok_name(peek().kind), peek().line,
                       peek().col, tok_name(k));
    next();
  }
  std::string expect_ident(const char* what) {
    if (peek().kind != Tok::Ident)
      throw ParseError(std::string("expected ") + what, peek().line, peek().col,
                       tok_name(Tok::Ident));
    std::string s = peek().text;
    next();
    return s;
  }
  void expect_end() {
    if (peek().kind != Tok::End)
      throw ParseError("trailing input", peek().line, peek().col, tok_name(Tok::End));
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  const SourceDecls* decls_;
  std::vector<std::string> ind_scope_, prop_scope_;
};

} // namespace detail

inline QmlPtr parse_qml(const std::string& text, const SourceDecls* decls = nullptr) {
  return detail::FormulaParser(text, decls).qml();
}
inline IplPtr parse_ipl(const std::string& text, const SourceDecls* decls = nullptr) {
  return detail::FormulaParser(text, decls).ipl();
}
inline FoPtr parse_fo(const std::string& text, const SourceDecls* decls = nullptr) {
  return detail::FormulaParser(text, decls).fo();
}

} // namespace holembed::logics
