#pragma once

#include <string>

#include "holembed/stt/term.hpp"

namespace holembed::stt {

// Canonical text form, parseable by stt/parse.hpp:
//
//   binders        ^ [X : ty] : body      lambda
//                  ! [X : ty] : body      Pi applied to a lambda
//                  ? [X : ty] : body      Neg (Pi (lam Neg body)) pattern
//   infix          (a | b), (a = b)       always parenthesized
//   prefix         ~ a                    argument parenthesized unless atomic
//   application    f a b                  juxtaposition, left-associative;
//                                         non-atomic arguments parenthesized
//   bare primitives  ~  |  ={ty}  PI{ty}  (only when not applied as above)
//
// Binder bodies extend as far right as possible. Printing is deterministic
// and round-trips: parse(show_term(t)) is alpha-identical (in fact
// structurally identical) to t.
namespace detail {

inline bool is_atomic_print(const TermPtr& t) {
  return t->kind == TermKind::Const || t->kind == TermKind::Var;
}

inline void show_rec(const TermPtr& t, std::string& out, bool parens_if_complex);

// Matches Neg(Pi(lam X. Neg body)) so existentials display as '?'.
inline bool match_exists(const TermPtr& t, const TermPtr** out_lam) {
  if (t->kind != TermKind::App || t->child0->kind != TermKind::Neg) return false;
  const TermPtr& inner = t->child1;
  if (inner->kind != TermKind::App || inner->child0->kind != TermKind::Pi) return false;
  const TermPtr& l = inner->child1;
  if (l->kind != TermKind::Lam) return false;
  const TermPtr& body = l->child0;
  if (body->kind != TermKind::App || body->child0->kind != TermKind::Neg) return false;
  *out_lam = &l;
  return true;
}

inline void show_binder(const char* head, const std::string& name, const TypePtr& ty,
                        const TermPtr& body, std::string& out, bool parens) {
  if (parens) out += "(";
  out += head;
  out += " [" + name + " : " + show_type(ty) + "] : ";
  show_rec(body, out, false);
  if (parens) out += ")";
}

inline void show_rec(const TermPtr& t, std::string& out, bool parens_if_complex) {
  switch (t->kind) {
    case TermKind::Const:
    case TermKind::Var:
      out += t->name;
      return;
    case TermKind::Neg:
      out += "~";
      return;
    case TermKind::Or:
      out += "|";
      return;
    case TermKind::Eq:
      out += "={" + show_type(t->ty) + "}";
      return;
    case TermKind::Pi:
      out += "PI{" + show_type(t->ty) + "}";
      return;
    case TermKind::Lam:
      show_binder("^", t->name, t->ty, t->child0, out, parens_if_complex);
      return;
    case TermKind::App: {
      const TermPtr* ex_lam = nullptr;
      if (match_exists(t, &ex_lam)) {
        show_binder("?", (*ex_lam)->name, (*ex_lam)->ty,
                    (*ex_lam)->child0->child1, out, parens_if_complex);
        return;
      }
      if (t->child0->kind == TermKind::App && t->child0->child0->kind == TermKind::Or) {
        out += "(";
        show_rec(t->child0->child1, out, true);
        out += " | ";
        show_rec(t->child1, out, true);
        out += ")";
        return;
      }
      if (t->child0->kind == TermKind::App && t->child0->child0->kind == TermKind::Eq) {
        out += "(";
        show_rec(t->child0->child1, out, true);
        out += " = ";
        show_rec(t->child1, out, true);
        out += ")";
        return;
      }
      if (t->child0->kind == TermKind::Neg) {
        if (parens_if_complex) out += "(";
        out += "~ ";
        show_rec(t->child1, out, true);
        if (parens_if_complex) out += ")";
        return;
      }
      if (t->child0->kind == TermKind::Pi && t->child1->kind == TermKind::Lam) {
        show_binder("!", t->child1->name, t->child1->ty, t->child1->child0, out,
                    parens_if_complex);
        return;
      }
      // General application: f a, argument parenthesized unless atomic.
      if (parens_if_complex) out += "(";
      show_rec(t->child0, out, t->child0->kind != TermKind::App &&
                                   !is_atomic_print(t->child0));
      out += " ";
      show_rec(t->child1, out, !is_atomic_print(t->child1));
      if (parens_if_complex) out += ")";
      return;
    }
  }
}

} // namespace detail

inline std::string show_term(const TermPtr& t) {
  std::string out;
  detail::show_rec(t, out, false);
  return out;
}

} // namespace holembed::stt
